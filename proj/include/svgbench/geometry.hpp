#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace svgbench::geometry {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend Point operator*(Point p, double s) { return {s * p.x, s * p.y}; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double length(Point p) { return std::hypot(p.x, p.y); }
inline double squared_distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}
inline double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }
inline Point lerp(Point a, Point b, double t) { return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t}; }

// Distance from p to the closed segment [a, b].
double distance_to_segment(Point p, Point a, Point b);

// 2x3 affine matrix: (x, y) -> (a x + c y + e, b x + d y + f), the SVG matrix() layout.
struct AffineTransform {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0, e = 0.0, f = 0.0;

    static AffineTransform identity() { return {}; }
    static AffineTransform translate(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }
    static AffineTransform scale(double sx, double sy) { return {sx, 0, 0, sy, 0, 0}; }
    static AffineTransform rotate_deg(double deg);
    static AffineTransform rotate_deg(double deg, Point center);
    static AffineTransform skew_x_deg(double deg);
    static AffineTransform skew_y_deg(double deg);

    Point apply(Point p) const { return {a * p.x + c * p.y + e, b * p.x + d * p.y + f}; }
    // Linear part only (no translation), for direction vectors.
    Point apply_linear(Point p) const { return {a * p.x + c * p.y, b * p.x + d * p.y}; }

    double determinant() const { return a * d - b * c; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1 && e == 0 && f == 0; }
    // Rotation, reflection and uniform scale, plus translation.
    bool is_similarity(double tol = 1e-12) const;
    // Scale and translation only: axis-aligned rectangles stay axis-aligned.
    bool is_axis_aligned() const { return b == 0 && c == 0; }
    // Uniform length scale factor (exact for similarities).
    double length_scale() const { return std::sqrt(std::abs(determinant())); }

    friend bool operator==(const AffineTransform&, const AffineTransform&) = default;
};

// Composition: (lhs * rhs).apply(p) == lhs.apply(rhs.apply(p)).
AffineTransform operator*(const AffineTransform& lhs, const AffineTransform& rhs);

struct CubicBezier {
    Point p0, p1, p2, p3;

    Point eval(double t) const;
    friend bool operator==(const CubicBezier&, const CubicBezier&) = default;
};

struct QuadBezier {
    Point p0, p1, p2;

    Point eval(double t) const;
};

// Exact degree elevation.
CubicBezier quad_to_cubic(const QuadBezier& q);

// SVG elliptical arc parameters as they appear in an absolute ArcTo command.
struct ArcParams {
    double rx = 0.0;
    double ry = 0.0;
    double x_rotation_deg = 0.0;
    bool large_arc = false;
    bool sweep = false;
    Point end;
};

// Endpoint-to-center conversion; each returned cubic spans at most 90 degrees.
// A zero radius yields the straight line start->end; a zero-length arc yields
// nothing. Radii too small to reach the endpoint are scaled up uniformly.
std::vector<CubicBezier> arc_to_cubics(Point start, const ArcParams& arc);

// Center parameterization of an arc, exposed for oracles and rasterization.
struct ArcCenter {
    Point center;
    double rx = 0.0, ry = 0.0;
    double phi = 0.0;       // radians
    double theta1 = 0.0;    // start angle, radians
    double delta = 0.0;     // signed sweep, radians
    bool degenerate = false;

    Point eval(double theta) const;
};
ArcCenter arc_center_parameters(Point start, const ArcParams& arc);

struct FlatPoint {
    Point point;
    double t = 0.0;
};

// Recursive de Casteljau subdivision until both inner control points lie
// within `tolerance` of the chord. Output starts with p0 and ends with p3;
// every point is the original curve evaluated at its recorded parameter.
std::vector<FlatPoint> flatten_cubic_with_params(const CubicBezier& c, double tolerance);
std::vector<Point> flatten_cubic(const CubicBezier& c, double tolerance);

}  // namespace svgbench::geometry
