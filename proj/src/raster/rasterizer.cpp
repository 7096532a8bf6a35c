#include "svgbench/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "svgbench/document_geometry.hpp"
#include "svgbench/error.hpp"
#include "svgbench/simd.hpp"
#include "svgbench/svg_ops.hpp"

namespace svgbench::raster {

using geometry::Point;

RasterImage::RasterImage(int width, int height, float fill)
    : width_(width), height_(height), pixels_(static_cast<std::size_t>(width) * height * 3, fill) {
    if (width < 0 || height < 0) throw std::invalid_argument("negative image size");
}

namespace {

struct Edge {
    double y_top, y_bottom;  // y_top < y_bottom
    double x0, y0, dxdy;
    int winding;
};

double signed_area(const std::vector<Point>& c) {
    double a = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Point& p = c[i];
        const Point& q = c[(i + 1) % c.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

struct Bounds {
    int x0, y0, x1, y1;  // pixel range [x0, x1) x [y0, y1)
    bool empty() const { return x0 >= x1 || y0 >= y1; }
};

// Integer sample counts per pixel; coverage is count / ss^2.
class CoverageAccumulator {
public:
    CoverageAccumulator(int size, int ss) : size_(size), ss_(ss), counts_(static_cast<std::size_t>(size) * size, 0) {}

    Bounds fill(const std::vector<std::vector<Point>>& contours, svg::FillRule rule) {
        std::vector<Edge> edges;
        double ymin = INFINITY, ymax = -INFINITY, xmin = INFINITY, xmax = -INFINITY;
        for (const auto& c : contours) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                const Point a = c[i];
                const Point b = c[(i + 1) % c.size()];
                xmin = std::min(xmin, a.x);
                xmax = std::max(xmax, a.x);
                if (a.y == b.y) continue;
                Edge e;
                e.winding = b.y > a.y ? 1 : -1;
                e.y_top = std::min(a.y, b.y);
                e.y_bottom = std::max(a.y, b.y);
                e.x0 = a.x;
                e.y0 = a.y;
                e.dxdy = (b.x - a.x) / (b.y - a.y);
                edges.push_back(e);
                ymin = std::min(ymin, e.y_top);
                ymax = std::max(ymax, e.y_bottom);
            }
        }
        Bounds bounds{0, 0, 0, 0};
        if (edges.empty()) return bounds;
        std::sort(edges.begin(), edges.end(), [](const Edge& l, const Edge& r) { return l.y_top < r.y_top; });

        const int rows = size_ * ss_;
        const double inv = 1.0 / ss_;
        const int j_begin = std::clamp(static_cast<int>(std::floor(ymin * ss_ - 0.5)), 0, rows);
        const int j_end = std::clamp(static_cast<int>(std::ceil(ymax * ss_ + 0.5)), 0, rows);
        bounds = {std::clamp(static_cast<int>(std::floor(xmin)), 0, size_), j_begin / ss_,
                  std::clamp(static_cast<int>(std::ceil(xmax)) + 1, 0, size_),
                  std::min(size_, (j_end + ss_ - 1) / ss_)};

        std::vector<const Edge*> active;
        std::vector<std::pair<double, int>> crossings;
        std::size_t next = 0;
        for (int j = j_begin; j < j_end; ++j) {
            const double y = (j + 0.5) * inv;
            while (next < edges.size() && edges[next].y_top <= y) active.push_back(&edges[next++]);
            std::erase_if(active, [y](const Edge* e) { return e->y_bottom <= y; });
            crossings.clear();
            for (const Edge* e : active)
                if (e->y_top <= y) crossings.emplace_back(e->x0 + (y - e->y0) * e->dxdy, e->winding);
            if (crossings.size() < 2) continue;
            std::sort(crossings.begin(), crossings.end());
            int winding = 0;
            std::int32_t* row = &counts_[static_cast<std::size_t>(j / ss_) * size_];
            for (std::size_t k = 0; k + 1 < crossings.size(); ++k) {
                winding += crossings[k].second;
                const bool inside = rule == svg::FillRule::NonZero ? winding != 0 : (winding & 1) != 0;
                if (inside) add_span(row, crossings[k].first, crossings[k + 1].first);
            }
        }
        return bounds;
    }

    void to_coverage(const Bounds& b, std::vector<float>& cov) {
        const float scale = 1.0f / static_cast<float>(ss_ * ss_);
        for (int y = b.y0; y < b.y1; ++y)
            for (int x = b.x0; x < b.x1; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * size_ + x;
                cov[i] = static_cast<float>(counts_[i]) * scale;
                counts_[i] = 0;
            }
    }

private:
    // Samples i with x0 <= (i + 0.5) / ss < x1.
    void add_span(std::int32_t* row, double x0, double x1) {
        const int cols = size_ * ss_;
        const int i0 = std::clamp(static_cast<int>(std::ceil(x0 * ss_ - 0.5)), 0, cols);
        const int i1 = std::clamp(static_cast<int>(std::ceil(x1 * ss_ - 0.5)), 0, cols);
        if (i0 >= i1) return;
        const int p0 = i0 / ss_;
        const int p1 = (i1 - 1) / ss_;
        if (p0 == p1) {
            row[p0] += i1 - i0;
            return;
        }
        row[p0] += (p0 + 1) * ss_ - i0;
        for (int p = p0 + 1; p < p1; ++p) row[p] += ss_;
        row[p1] += i1 - p1 * ss_;
    }

    int size_;
    int ss_;
    std::vector<std::int32_t> counts_;
};

std::vector<Point> circle_polygon(Point c, double r, double tolerance) {
    int n = 8;
    if (r > tolerance) n = static_cast<int>(std::ceil(std::numbers::pi / std::acos(1.0 - tolerance / r)));
    n = std::clamp(n, 8, 256);
    // Circumscribed so the polygon never undershoots the true radius by more than the tolerance.
    const double rr = r / std::cos(std::numbers::pi / n);
    std::vector<Point> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * i / n;
        out[static_cast<std::size_t>(i)] = {c.x + rr * std::cos(a), c.y + rr * std::sin(a)};
    }
    return out;
}

}  // namespace

std::vector<std::vector<Point>> stroke_outline(const std::vector<Point>& input, bool closed, double width,
                                               double tolerance) {
    std::vector<std::vector<Point>> out;
    if (!(width > 0.0) || input.empty()) return out;
    std::vector<Point> pts = input;
    if (closed && !(pts.front() == pts.back())) pts.push_back(pts.front());
    const double hw = width / 2.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Point a = pts[i], b = pts[i + 1];
        const Point d = b - a;
        const double len = geometry::length(d);
        if (len == 0.0) continue;
        const Point n{-d.y / len * hw, d.x / len * hw};
        std::vector<Point> quad{a + n, b + n, b - n, a - n};
        if (signed_area(quad) < 0) std::reverse(quad.begin(), quad.end());
        out.push_back(std::move(quad));
    }
    // Round joins and caps: a disc at every vertex.
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (closed && i + 1 == pts.size()) break;
        out.push_back(circle_polygon(pts[i], hw, tolerance));
    }
    return out;
}

std::vector<float> polygon_coverage(const std::vector<std::vector<Point>>& contours, svg::FillRule rule, int size,
                                    int supersample) {
    CoverageAccumulator acc(size, supersample);
    std::vector<float> cov(static_cast<std::size_t>(size) * size, 0.0f);
    const Bounds b = acc.fill(contours, rule);
    if (!b.empty()) acc.to_coverage(b, cov);
    return cov;
}

RasterImage rasterize(const svg::SvgDocument& doc, int size, int supersample) {
    if (size <= 0) throw std::invalid_argument("raster size must be positive");
    if (supersample < 1) throw std::invalid_argument("supersample must be >= 1");

    svg::ViewBox vb{0, 0, static_cast<double>(size), static_cast<double>(size)};
    try {
        vb = svg::resolve_view_box(doc);
    } catch (const NoResolvableSize&) {
    }
    const double side = size;
    const double s = side / std::max(vb.width, vb.height);
    const geometry::AffineTransform to_pixels{s, 0, 0, s, (side - vb.width * s) / 2.0 - vb.min_x * s,
                                              (side - vb.height * s) / 2.0 - vb.min_y * s};
    const double tolerance = 0.2 / supersample;
    const auto shapes = geometry::flatten_document(doc, to_pixels, tolerance);

    const std::size_t n = static_cast<std::size_t>(size) * size;
    std::vector<float> planes[3] = {std::vector<float>(n, 1.0f), std::vector<float>(n, 1.0f),
                                    std::vector<float>(n, 1.0f)};
    std::vector<float> cov(n, 0.0f);
    CoverageAccumulator acc(size, supersample);
    const auto& k = simd::kernels();

    auto paint = [&](const std::vector<std::vector<Point>>& contours, svg::FillRule rule, const svg::Rgb& color) {
        const Bounds b = acc.fill(contours, rule);
        if (b.empty()) return;
        acc.to_coverage(b, cov);
        const float rgb[3] = {color.r / 255.0f, color.g / 255.0f, color.b / 255.0f};
        for (int y = b.y0; y < b.y1; ++y) {
            const std::size_t off = static_cast<std::size_t>(y) * size + b.x0;
            const std::size_t len = static_cast<std::size_t>(b.x1 - b.x0);
            for (int c = 0; c < 3; ++c) k.blend_coverage(planes[c].data() + off, cov.data() + off, rgb[c], len);
        }
    };

    for (const auto& shape : shapes) {
        if (shape.paint.fill) {
            std::vector<std::vector<Point>> contours;
            for (const auto& sub : shape.subpaths) contours.push_back(sub.points);
            paint(contours, shape.paint.fill_rule, *shape.paint.fill);
        }
        const double width = shape.paint.stroke_width * shape.stroke_scale * s;
        if (shape.paint.stroke && width > 0.0) {
            std::vector<std::vector<Point>> contours;
            for (const auto& sub : shape.subpaths) {
                auto outline = stroke_outline(sub.points, sub.closed, width, tolerance);
                contours.insert(contours.end(), std::make_move_iterator(outline.begin()),
                                std::make_move_iterator(outline.end()));
            }
            paint(contours, svg::FillRule::NonZero, *shape.paint.stroke);
        }
    }

    RasterImage img(size, size);
    auto data = img.data();
    for (std::size_t i = 0; i < n; ++i) {
        data[i * 3 + 0] = std::clamp(planes[0][i], 0.0f, 1.0f);
        data[i * 3 + 1] = std::clamp(planes[1][i], 0.0f, 1.0f);
        data[i * 3 + 2] = std::clamp(planes[2][i], 0.0f, 1.0f);
    }
    return img;
}

}  // namespace svgbench::raster
