#include "svgbench/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace svgbench::geometry {

double distance_to_segment(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

AffineTransform AffineTransform::rotate_deg(double deg) {
    const double r = deg * std::numbers::pi / 180.0;
    const double cs = std::cos(r);
    const double sn = std::sin(r);
    return {cs, sn, -sn, cs, 0, 0};
}

AffineTransform AffineTransform::rotate_deg(double deg, Point center) {
    return translate(center.x, center.y) * rotate_deg(deg) * translate(-center.x, -center.y);
}

AffineTransform AffineTransform::skew_x_deg(double deg) {
    return {1, 0, std::tan(deg * std::numbers::pi / 180.0), 1, 0, 0};
}

AffineTransform AffineTransform::skew_y_deg(double deg) {
    return {1, std::tan(deg * std::numbers::pi / 180.0), 0, 1, 0, 0};
}

bool AffineTransform::is_similarity(double tol) const {
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d), 1e-300});
    const double eps = tol * scale;
    const bool rotation = std::abs(a - d) <= eps && std::abs(b + c) <= eps;
    const bool reflection = std::abs(a + d) <= eps && std::abs(b - c) <= eps;
    return rotation || reflection;
}

AffineTransform operator*(const AffineTransform& l, const AffineTransform& r) {
    return {
        l.a * r.a + l.c * r.b,
        l.b * r.a + l.d * r.b,
        l.a * r.c + l.c * r.d,
        l.b * r.c + l.d * r.d,
        l.a * r.e + l.c * r.f + l.e,
        l.b * r.e + l.d * r.f + l.f,
    };
}

Point CubicBezier::eval(double t) const {
    const double u = 1.0 - t;
    const double b0 = u * u * u;
    const double b1 = 3.0 * u * u * t;
    const double b2 = 3.0 * u * t * t;
    const double b3 = t * t * t;
    return {b0 * p0.x + b1 * p1.x + b2 * p2.x + b3 * p3.x,
            b0 * p0.y + b1 * p1.y + b2 * p2.y + b3 * p3.y};
}

Point QuadBezier::eval(double t) const {
    const double u = 1.0 - t;
    return {u * u * p0.x + 2 * u * t * p1.x + t * t * p2.x,
            u * u * p0.y + 2 * u * t * p1.y + t * t * p2.y};
}

CubicBezier quad_to_cubic(const QuadBezier& q) {
    constexpr double k = 2.0 / 3.0;
    return {q.p0, q.p0 + k * (q.p1 - q.p0), q.p2 + k * (q.p1 - q.p2), q.p2};
}

namespace {

double vector_angle(Point u, Point v) {
    return std::atan2(cross(u, v), dot(u, v));
}

}  // namespace

Point ArcCenter::eval(double theta) const {
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double x = rx * std::cos(theta);
    const double y = ry * std::sin(theta);
    return {center.x + cp * x - sp * y, center.y + sp * x + cp * y};
}

ArcCenter arc_center_parameters(Point start, const ArcParams& arc) {
    ArcCenter out;
    out.phi = arc.x_rotation_deg * std::numbers::pi / 180.0;
    double rx = std::abs(arc.rx);
    double ry = std::abs(arc.ry);
    if (rx == 0.0 || ry == 0.0 || start == arc.end) {
        out.degenerate = true;
        return out;
    }
    const double cp = std::cos(out.phi), sp = std::sin(out.phi);
    const double hx = (start.x - arc.end.x) / 2.0;
    const double hy = (start.y - arc.end.y) / 2.0;
    const double x1p = cp * hx + sp * hy;
    const double y1p = -sp * hx + cp * hy;

    const double lambda = (x1p * x1p) / (rx * rx) + (y1p * y1p) / (ry * ry);
    if (lambda > 1.0) {
        const double s = std::sqrt(lambda);
        rx *= s;
        ry *= s;
    }
    const double rx2 = rx * rx, ry2 = ry * ry;
    const double num = rx2 * ry2 - rx2 * y1p * y1p - ry2 * x1p * x1p;
    const double den = rx2 * y1p * y1p + ry2 * x1p * x1p;
    double coef = den > 0.0 ? std::sqrt(std::max(0.0, num / den)) : 0.0;
    if (arc.large_arc == arc.sweep) coef = -coef;
    const double cxp = coef * rx * y1p / ry;
    const double cyp = -coef * ry * x1p / rx;

    out.center = {cp * cxp - sp * cyp + (start.x + arc.end.x) / 2.0,
                  sp * cxp + cp * cyp + (start.y + arc.end.y) / 2.0};
    out.rx = rx;
    out.ry = ry;
    const Point u{(x1p - cxp) / rx, (y1p - cyp) / ry};
    const Point v{(-x1p - cxp) / rx, (-y1p - cyp) / ry};
    out.theta1 = vector_angle({1.0, 0.0}, u);
    double delta = vector_angle(u, v);
    if (!arc.sweep && delta > 0) delta -= 2.0 * std::numbers::pi;
    if (arc.sweep && delta < 0) delta += 2.0 * std::numbers::pi;
    out.delta = delta;
    return out;
}

std::vector<CubicBezier> arc_to_cubics(Point start, const ArcParams& arc) {
    if (start == arc.end) return {};
    if (arc.rx == 0.0 || arc.ry == 0.0) {
        const Point d = arc.end - start;
        return {{start, start + (1.0 / 3.0) * d, start + (2.0 / 3.0) * d, arc.end}};
    }
    const ArcCenter ac = arc_center_parameters(start, arc);
    const int segments = std::max(1, static_cast<int>(std::ceil(std::abs(ac.delta) / (std::numbers::pi / 2.0) - 1e-9)));
    const double step = ac.delta / segments;
    const double k = 4.0 / 3.0 * std::tan(step / 4.0);
    const double cp = std::cos(ac.phi), sp = std::sin(ac.phi);
    auto derivative = [&](double theta) {
        const double x = -ac.rx * std::sin(theta);
        const double y = ac.ry * std::cos(theta);
        return Point{cp * x - sp * y, sp * x + cp * y};
    };

    std::vector<CubicBezier> out;
    out.reserve(static_cast<std::size_t>(segments));
    Point from = start;
    for (int i = 0; i < segments; ++i) {
        const double t0 = ac.theta1 + step * i;
        const double t1 = t0 + step;
        const Point to = (i + 1 == segments) ? arc.end : ac.eval(t1);
        out.push_back({from, from + k * derivative(t0), to - k * derivative(t1), to});
        from = to;
    }
    return out;
}

namespace {

constexpr int kMaxFlattenDepth = 32;

void subdivide(const CubicBezier& whole, const CubicBezier& part, double t0, double t1,
               double tolerance, int depth, std::vector<FlatPoint>& out) {
    const bool flat = distance_to_segment(part.p1, part.p0, part.p3) <= tolerance &&
                      distance_to_segment(part.p2, part.p0, part.p3) <= tolerance;
    if (flat || depth >= kMaxFlattenDepth) {
        out.push_back({t1 == 1.0 ? whole.p3 : whole.eval(t1), t1});
        return;
    }
    // de Casteljau split at the midpoint.
    const Point p01 = lerp(part.p0, part.p1, 0.5);
    const Point p12 = lerp(part.p1, part.p2, 0.5);
    const Point p23 = lerp(part.p2, part.p3, 0.5);
    const Point p012 = lerp(p01, p12, 0.5);
    const Point p123 = lerp(p12, p23, 0.5);
    const Point mid = lerp(p012, p123, 0.5);
    const double tm = 0.5 * (t0 + t1);
    subdivide(whole, {part.p0, p01, p012, mid}, t0, tm, tolerance, depth + 1, out);
    subdivide(whole, {mid, p123, p23, part.p3}, tm, t1, tolerance, depth + 1, out);
}

}  // namespace

std::vector<FlatPoint> flatten_cubic_with_params(const CubicBezier& c, double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("flatten tolerance must be positive");
    std::vector<FlatPoint> out;
    out.push_back({c.p0, 0.0});
    subdivide(c, c, 0.0, 1.0, tolerance, 0, out);
    return out;
}

std::vector<Point> flatten_cubic(const CubicBezier& c, double tolerance) {
    const auto with_params = flatten_cubic_with_params(c, tolerance);
    std::vector<Point> out;
    out.reserve(with_params.size());
    for (const auto& fp : with_params) out.push_back(fp.point);
    return out;
}

}  // namespace svgbench::geometry
