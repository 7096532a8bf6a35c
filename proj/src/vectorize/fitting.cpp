#include <algorithm>
#include <cmath>
#include <numbers>

#include "svgbench/vectorize.hpp"

namespace svgbench::vectorize {

using geometry::CubicBezier;

namespace {

constexpr int kMaxNewtonPasses = 4;

Point unit(Point v) {
    const double len = geometry::length(v);
    return len > 0.0 ? Point{v.x / len, v.y / len} : Point{0.0, 0.0};
}

double turn_angle_deg(Point prev, Point cur, Point next) {
    const Point a = cur - prev, b = next - cur;
    const double la = geometry::length(a), lb = geometry::length(b);
    if (la == 0.0 || lb == 0.0) return 0.0;
    const double c = std::clamp(geometry::dot(a, b) / (la * lb), -1.0, 1.0);
    return std::acos(c) * 180.0 / std::numbers::pi;
}

Point derivative(const CubicBezier& c, double t) {
    const double mt = 1.0 - t;
    return (c.p1 - c.p0) * (3.0 * mt * mt) + (c.p2 - c.p1) * (6.0 * mt * t) + (c.p3 - c.p2) * (3.0 * t * t);
}

Point second_derivative(const CubicBezier& c, double t) {
    return (c.p2 - c.p1 * 2.0 + c.p0) * (6.0 * (1.0 - t)) + (c.p3 - c.p2 * 2.0 + c.p1) * (6.0 * t);
}

std::vector<double> chord_parameters(const std::vector<Point>& d) {
    std::vector<double> u(d.size(), 0.0);
    for (std::size_t i = 1; i < d.size(); ++i) u[i] = u[i - 1] + geometry::distance(d[i], d[i - 1]);
    const double total = u.back();
    for (double& v : u) v = total > 0.0 ? v / total : 0.0;
    return u;
}

CubicBezier least_squares(const std::vector<Point>& d, const std::vector<double>& u, Point t1, Point t2) {
    const Point p0 = d.front(), p3 = d.back();
    double c00 = 0, c01 = 0, c11 = 0, x0 = 0, x1 = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double t = u[i], mt = 1.0 - t;
        const double b0 = mt * mt * mt, b1 = 3 * mt * mt * t, b2 = 3 * mt * t * t, b3 = t * t * t;
        const Point a1 = t1 * b1, a2 = t2 * b2;
        c00 += geometry::dot(a1, a1);
        c01 += geometry::dot(a1, a2);
        c11 += geometry::dot(a2, a2);
        const Point tmp = d[i] - (p0 * (b0 + b1) + p3 * (b2 + b3));
        x0 += geometry::dot(a1, tmp);
        x1 += geometry::dot(a2, tmp);
    }
    const double det = c00 * c11 - c01 * c01;
    double alpha1 = 0.0, alpha2 = 0.0;
    if (std::abs(det) > 1e-12) {
        alpha1 = (x0 * c11 - x1 * c01) / det;
        alpha2 = (c00 * x1 - c01 * x0) / det;
    }
    const double seg = geometry::distance(p0, p3);
    const double eps = 1e-6 * seg;
    if (!(alpha1 > eps) || !(alpha2 > eps)) alpha1 = alpha2 = seg / 3.0;
    return {p0, p0 + t1 * alpha1, p3 + t2 * alpha2, p3};
}

double max_error(const CubicBezier& c, const std::vector<Point>& d, const std::vector<double>& u, std::size_t& split) {
    double worst = 0.0;
    split = d.size() / 2;
    for (std::size_t i = 1; i + 1 < d.size(); ++i) {
        const double e = geometry::squared_distance(c.eval(u[i]), d[i]);
        if (e >= worst) {
            worst = e;
            split = i;
        }
    }
    return worst;
}

// Squared distance from the curve, sampled between its ends, to the data
// polyline. Catches bulges that the vertex error cannot see.
double bulge(const CubicBezier& c, const std::vector<Point>& d) {
    double worst = 0.0;
    for (int k = 1; k < 16; ++k) {
        const Point q = c.eval(k / 16.0);
        double best = INFINITY;
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            const double dist = geometry::distance_to_segment(q, d[i], d[i + 1]);
            best = std::min(best, dist * dist);
        }
        worst = std::max(worst, best);
    }
    return worst;
}

void reparameterize(const CubicBezier& c, const std::vector<Point>& d, std::vector<double>& u) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Point diff = c.eval(u[i]) - d[i];
        const Point d1 = derivative(c, u[i]);
        const Point d2 = second_derivative(c, u[i]);
        const double num = geometry::dot(diff, d1);
        const double den = geometry::dot(d1, d1) + geometry::dot(diff, d2);
        if (den != 0.0) u[i] = std::clamp(u[i] - num / den, 0.0, 1.0);
    }
}

void fit_cubic(const std::vector<Point>& d, Point t1, Point t2, double error, svg::Path& out) {
    if (d.size() <= 2) {
        out.push_back(svg::PathCommand::line_to(d.back().x, d.back().y));
        return;
    }
    std::vector<double> u = chord_parameters(d);
    CubicBezier c = least_squares(d, u, t1, t2);
    std::size_t split = 0;
    double err = max_error(c, d, u, split);
    if (err <= error && bulge(c, d) <= error) {
        out.push_back(svg::PathCommand::cubic_to(c.p1, c.p2, c.p3));
        return;
    }
    if (err <= 4.0 * error) {
        for (int pass = 0; pass < kMaxNewtonPasses; ++pass) {
            reparameterize(c, d, u);
            c = least_squares(d, u, t1, t2);
            err = max_error(c, d, u, split);
            if (err <= error && bulge(c, d) <= error) {
                out.push_back(svg::PathCommand::cubic_to(c.p1, c.p2, c.p3));
                return;
            }
        }
    }
    Point tc = unit(d[split - 1] - d[split + 1]);
    if (tc == Point{0.0, 0.0}) tc = unit(Point{-(d[split] - d[split - 1]).y, (d[split] - d[split - 1]).x});
    const std::vector<Point> left(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(split) + 1);
    const std::vector<Point> right(d.begin() + static_cast<std::ptrdiff_t>(split), d.end());
    fit_cubic(left, t1, tc, error, out);
    fit_cubic(right, tc * -1.0, t2, error, out);
}

}  // namespace

svg::Path fit_beziers(const Contour& polygon, const VectorizeConfig& config) {
    const auto& p = polygon.points;
    const std::size_t n = p.size();
    svg::Path out;
    if (n == 0) return out;
    out.push_back(svg::PathCommand::move_to(p[0].x, p[0].y));
    if (n < 3) {
        for (std::size_t i = 1; i < n; ++i) out.push_back(svg::PathCommand::line_to(p[i].x, p[i].y));
        out.push_back(svg::PathCommand::close());
        return out;
    }

    std::vector<std::size_t> breaks;
    for (std::size_t i = 0; i < n; ++i)
        if (turn_angle_deg(p[(i + n - 1) % n], p[i], p[(i + 1) % n]) > config.corner_angle_deg) breaks.push_back(i);
    std::vector<bool> is_corner(n, false);
    for (std::size_t b : breaks) is_corner[b] = true;
    if (breaks.empty()) {
        // Smooth loop: split at the start and the vertex farthest from it.
        std::size_t far = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = geometry::squared_distance(p[i], p[0]);
            if (d > best) {
                best = d;
                far = i;
            }
        }
        breaks = {0, far};
        if (far == 0) breaks = {0};
    }

    // Rotate so the path starts at a breakpoint.
    const std::size_t origin = breaks.front();
    auto at = [&](std::size_t i) { return p[(origin + i) % n]; };
    std::vector<std::size_t> rel;
    for (std::size_t b : breaks) rel.push_back((b + n - origin) % n);
    std::sort(rel.begin(), rel.end());
    out.front() = svg::PathCommand::move_to(at(0).x, at(0).y);

    auto tangent_out = [&](std::size_t i) {
        const std::size_t k = (origin + i) % n;
        if (is_corner[k]) return unit(p[(k + 1) % n] - p[k]);
        return unit(p[(k + 1) % n] - p[(k + n - 1) % n]);
    };
    const double line_tol = std::min(0.5, std::sqrt(config.fit_error));
    for (std::size_t s = 0; s < rel.size(); ++s) {
        const std::size_t a = rel[s];
        const std::size_t b = s + 1 < rel.size() ? rel[s + 1] : n;
        std::vector<Point> span;
        for (std::size_t i = a; i <= b; ++i) span.push_back(at(i));
        double dev = 0.0;
        for (std::size_t i = 1; i + 1 < span.size(); ++i)
            dev = std::max(dev, geometry::distance_to_segment(span[i], span.front(), span.back()));
        if (dev <= line_tol) {
            out.push_back(svg::PathCommand::line_to(span.back().x, span.back().y));
            continue;
        }
        const Point t1 = tangent_out(a);
        const Point t2 = tangent_out(b % n) * -1.0;
        const std::size_t bk = (origin + b) % n;
        const Point t2_fixed = is_corner[bk] ? unit(p[(bk + n - 1) % n] - p[bk]) : t2;
        fit_cubic(span, t1, t2_fixed, config.fit_error, out);
    }
    out.push_back(svg::PathCommand::close());
    return out;
}

}  // namespace svgbench::vectorize
