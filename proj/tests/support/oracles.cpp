#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

double brute_chamfer(const std::vector<Point>& a, const std::vector<Point>& b) {
    auto term = [](const std::vector<Point>& from, const std::vector<Point>& to) {
        double sum = 0.0;
        for (const Point& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& q : to) best = std::min(best, (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y));
            sum += best;
        }
        return sum / static_cast<double>(from.size());
    };
    return term(a, b) + term(b, a);
}

double literal_ssim(const svgbench::raster::RasterImage& a, const svgbench::raster::RasterImage& b) {
    const int w = a.width(), h = a.height();
    auto y_of = [](const svgbench::raster::RasterImage& im, int x, int y) {
        return 0.299 * im.at(x, y, 0) + 0.587 * im.at(x, y, 1) + 0.114 * im.at(x, y, 2);
    };
    double g[11][11];
    double total = 0.0;
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
            const double dx = i - 5.0, dy = j - 5.0;
            g[i][j] = std::exp(-(dx * dx + dy * dy) / (2.0 * 1.5 * 1.5));
            total += g[i][j];
        }
    const double c1 = 0.0001, c2 = 0.0009;
    double sum = 0.0;
    int windows = 0;
    for (int oy = 0; oy + 11 <= h; ++oy)
        for (int ox = 0; ox + 11 <= w; ++ox) {
            double mx = 0, my = 0;
            for (int j = 0; j < 11; ++j)
                for (int i = 0; i < 11; ++i) {
                    mx += g[i][j] / total * y_of(a, ox + i, oy + j);
                    my += g[i][j] / total * y_of(b, ox + i, oy + j);
                }
            double vx = 0, vy = 0, cxy = 0;
            for (int j = 0; j < 11; ++j)
                for (int i = 0; i < 11; ++i) {
                    const double wt = g[i][j] / total;
                    const double dx = y_of(a, ox + i, oy + j) - mx, dy = y_of(b, ox + i, oy + j) - my;
                    vx += wt * dx * dx;
                    vy += wt * dy * dy;
                    cxy += wt * dx * dy;
                }
            sum += ((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
            ++windows;
        }
    return sum / windows;
}

double half_plane_pixel_area(double px, double py, Point n, double c) {
    std::vector<Point> poly{{px, py}, {px + 1, py}, {px + 1, py + 1}, {px, py + 1}};
    std::vector<Point> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point p = poly[i], q = poly[(i + 1) % poly.size()];
        const double fp = n.x * p.x + n.y * p.y - c, fq = n.x * q.x + n.y * q.y - c;
        if (fp <= 0) out.push_back(p);
        if ((fp < 0) != (fq < 0) && fp != fq) {
            const double t = fp / (fp - fq);
            if (t > 0 && t < 1) out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    double area = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Point p = out[i], q = out[(i + 1) % out.size()];
        area += p.x * q.y - q.x * p.y;
    }
    return std::abs(area) / 2.0;
}

std::vector<int> even_odd_fill(const std::vector<std::vector<Point>>& loops, int w, int h) {
    std::vector<int> out(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double qx = x + 0.5, qy = y + 0.5;
            int crossings = 0;
            for (const auto& loop : loops)
                for (std::size_t i = 0; i < loop.size(); ++i) {
                    const Point a = loop[i], b = loop[(i + 1) % loop.size()];
                    if ((a.y > qy) != (b.y > qy)) {
                        const double xc = a.x + (qy - a.y) * (b.x - a.x) / (b.y - a.y);
                        if (xc > qx) ++crossings;
                    }
                }
            out[static_cast<std::size_t>(y) * w + x] = crossings & 1;
        }
    return out;
}

double distance_to_polyline(Point p, const std::vector<Point>& line) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
        const Point a = line[i], b = line[i + 1];
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double len2 = dx * dx + dy * dy;
        double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy)));
    }
    return best;
}

}  // namespace oracle
