#include "svgbench/document_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numbers>
#include <ostream>

#include "svgbench/error.hpp"
#include "svgbench/path_data.hpp"
#include "svgbench/svg_ops.hpp"

namespace svgbench::geometry {

using svg::Node;
using svg::Path;
using svg::PathCommand;
using svg::PathOp;

namespace {

bool is_rotation_scale(const AffineTransform& t) { return t.is_similarity() && t.determinant() > 0; }

}  // namespace

Path apply_transform(const AffineTransform& t, const Path& path) {
    const Path abs = svg::to_absolute(path);
    Path out;
    out.reserve(abs.size());
    const bool analytic_arcs = is_rotation_scale(t);
    const double scale = t.length_scale();
    const double rotation_deg = (t.b == 0.0 && t.a > 0.0) ? 0.0 : std::atan2(t.b, t.a) * 180.0 / std::numbers::pi;
    Point cur, start;
    for (const auto& cmd : abs) {
        const auto& a = cmd.args;
        auto map = [&](int i) { return t.apply({a[i], a[i + 1]}); };
        switch (cmd.op) {
            case PathOp::MoveTo: {
                cur = start = {a[0], a[1]};
                const Point p = map(0);
                out.push_back(PathCommand::move_to(p.x, p.y));
                break;
            }
            case PathOp::LineTo: {
                cur = {a[0], a[1]};
                const Point p = map(0);
                out.push_back(PathCommand::line_to(p.x, p.y));
                break;
            }
            case PathOp::CubicTo:
                cur = {a[4], a[5]};
                out.push_back(PathCommand::cubic_to(map(0), map(2), map(4)));
                break;
            case PathOp::QuadTo:
                cur = {a[2], a[3]};
                out.push_back(PathCommand::quad_to(map(0), map(2)));
                break;
            case PathOp::ArcTo: {
                const Point end{a[5], a[6]};
                if (analytic_arcs) {
                    double rot = a[2] + rotation_deg;
                    if (rotation_deg != 0.0) rot = std::remainder(rot, 360.0);
                    out.push_back(PathCommand::arc_to(a[0] * scale, a[1] * scale, rot, a[3] != 0, a[4] != 0,
                                                      t.apply(end)));
                } else {
                    for (const auto& c : arc_to_cubics(cur, {a[0], a[1], a[2], a[3] != 0, a[4] != 0, end}))
                        out.push_back(PathCommand::cubic_to(t.apply(c.p1), t.apply(c.p2), t.apply(c.p3)));
                }
                cur = end;
                break;
            }
            case PathOp::ClosePath:
                out.push_back(cmd);
                cur = start;
                break;
            default:
                break;
        }
    }
    return out;
}

Node apply_transform(const AffineTransform& t, const Node& node) {
    Node out;
    out.paint = node.paint;
    out.paint.stroke_width = node.paint.stroke_width * t.length_scale();
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            auto as_path = [&] { out.kind = svg::PathNode{apply_transform(t, svg::primitive_to_path(k))}; };
            if constexpr (std::is_same_v<T, svg::GroupNode>) {
                svg::GroupNode g;
                const AffineTransform inner = t * k.transform;
                for (const auto& c : k.children) g.children.push_back(apply_transform(inner, c));
                out.paint.stroke_width = node.paint.stroke_width * inner.length_scale();
                out.kind = std::move(g);
            } else if constexpr (std::is_same_v<T, svg::PathNode>) {
                out.kind = svg::PathNode{apply_transform(t, k.commands)};
            } else if constexpr (std::is_same_v<T, svg::RectNode>) {
                if (!t.is_axis_aligned()) return as_path();
                const Point p0 = t.apply({k.x, k.y});
                const Point p1 = t.apply({k.x + k.width, k.y + k.height});
                out.kind = svg::RectNode{std::min(p0.x, p1.x), std::min(p0.y, p1.y), std::abs(p1.x - p0.x),
                                         std::abs(p1.y - p0.y), k.rx * std::abs(t.a), k.ry * std::abs(t.d)};
            } else if constexpr (std::is_same_v<T, svg::CircleNode>) {
                if (!t.is_similarity()) return as_path();
                const Point c = t.apply({k.cx, k.cy});
                out.kind = svg::CircleNode{c.x, c.y, k.r * t.length_scale()};
            } else if constexpr (std::is_same_v<T, svg::EllipseNode>) {
                if (!t.is_axis_aligned()) return as_path();
                const Point c = t.apply({k.cx, k.cy});
                out.kind = svg::EllipseNode{c.x, c.y, k.rx * std::abs(t.a), k.ry * std::abs(t.d)};
            } else if constexpr (std::is_same_v<T, svg::LineNode>) {
                const Point p0 = t.apply({k.x1, k.y1});
                const Point p1 = t.apply({k.x2, k.y2});
                out.kind = svg::LineNode{p0.x, p0.y, p1.x, p1.y};
            } else {
                T mapped;
                for (const auto& p : k.points) mapped.points.push_back(t.apply(p));
                out.kind = std::move(mapped);
            }
        },
        node.kind);
    return out;
}

svg::SvgDocument apply_transform(const AffineTransform& t, const svg::SvgDocument& doc) {
    svg::SvgDocument out;
    out.view_box = doc.view_box;
    out.width_attr = doc.width_attr;
    out.height_attr = doc.height_attr;
    out.root.reserve(doc.root.size());
    for (const auto& n : doc.root) out.root.push_back(apply_transform(t, n));
    return out;
}

std::vector<Polyline> flatten_path(const Path& path, const AffineTransform& t, double tolerance) {
    const Path abs = svg::to_absolute(path);
    std::vector<Polyline> out;
    Polyline current;
    Point cur, start;
    auto flush = [&] {
        if (current.points.size() >= 2) out.push_back(std::move(current));
        current = Polyline{};
    };
    auto ensure_started = [&] {
        if (current.points.empty()) current.points.push_back(t.apply(cur));
    };
    auto append_cubic = [&](const CubicBezier& local) {
        const CubicBezier c{t.apply(local.p0), t.apply(local.p1), t.apply(local.p2), t.apply(local.p3)};
        const auto pts = flatten_cubic(c, tolerance);
        current.points.insert(current.points.end(), pts.begin() + 1, pts.end());
    };
    for (const auto& cmd : abs) {
        const auto& a = cmd.args;
        switch (cmd.op) {
            case PathOp::MoveTo:
                flush();
                cur = start = {a[0], a[1]};
                current.points.push_back(t.apply(cur));
                break;
            case PathOp::LineTo:
                ensure_started();
                cur = {a[0], a[1]};
                current.points.push_back(t.apply(cur));
                break;
            case PathOp::CubicTo: {
                ensure_started();
                const Point end{a[4], a[5]};
                append_cubic({cur, {a[0], a[1]}, {a[2], a[3]}, end});
                cur = end;
                break;
            }
            case PathOp::QuadTo: {
                ensure_started();
                const Point end{a[2], a[3]};
                append_cubic(quad_to_cubic({cur, {a[0], a[1]}, end}));
                cur = end;
                break;
            }
            case PathOp::ArcTo: {
                ensure_started();
                const Point end{a[5], a[6]};
                for (const auto& c : arc_to_cubics(cur, {a[0], a[1], a[2], a[3] != 0, a[4] != 0, end}))
                    append_cubic(c);
                cur = end;
                break;
            }
            case PathOp::ClosePath:
                if (!current.points.empty()) {
                    current.closed = true;
                    flush();
                }
                cur = start;
                break;
            default:
                break;
        }
    }
    flush();
    return out;
}

namespace {

void flatten_nodes(const std::vector<Node>& nodes, const AffineTransform& t, double tolerance,
                   std::vector<FlatShape>& out) {
    for (const auto& n : nodes) {
        if (const auto* g = std::get_if<svg::GroupNode>(&n.kind)) {
            flatten_nodes(g->children, t * g->transform, tolerance, out);
            continue;
        }
        FlatShape shape;
        shape.paint = n.paint;
        shape.stroke_scale = t.length_scale();
        shape.subpaths = flatten_path(svg::primitive_to_path(n.kind), t, tolerance);
        if (!shape.subpaths.empty()) out.push_back(std::move(shape));
    }
}

}  // namespace

std::vector<FlatShape> flatten_document(const svg::SvgDocument& doc, const AffineTransform& t, double tolerance) {
    std::vector<FlatShape> out;
    flatten_nodes(doc.root, t, tolerance, out);
    return out;
}

std::vector<Point> sample_polyline(const Polyline& line, double step) {
    std::vector<Point> pts = line.points;
    if (line.closed && !pts.empty() && !(pts.back() == pts.front())) pts.push_back(pts.front());
    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
    if (!(total > 0.0)) return {};

    std::vector<Point> out;
    std::size_t seg = 1;
    double seg_start = 0.0;  // arc length at pts[seg - 1]
    for (std::size_t k = 0;; ++k) {
        const double s = static_cast<double>(k) * step;
        if (!(s < total)) break;
        while (seg + 1 < pts.size() && seg_start + distance(pts[seg - 1], pts[seg]) < s) {
            seg_start += distance(pts[seg - 1], pts[seg]);
            ++seg;
        }
        const double len = distance(pts[seg - 1], pts[seg]);
        const double u = len > 0.0 ? std::clamp((s - seg_start) / len, 0.0, 1.0) : 0.0;
        out.push_back(lerp(pts[seg - 1], pts[seg], u));
    }
    out.push_back(pts.back());
    return out;
}

PointSet sample_points(const svg::SvgDocument& doc, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("sampling step must be positive");
    PointSet out;
    try {
        out.frame = svg::resolve_view_box(doc).width;
    } catch (const NoResolvableSize&) {
        out.frame = 0.0;
    }
    for (const auto& shape : flatten_document(doc, AffineTransform::identity(), step / 4.0))
        for (const auto& sub : shape.subpaths) {
            auto pts = sample_polyline(sub, step);
            out.points.insert(out.points.end(), pts.begin(), pts.end());
        }
    if (out.points.empty()) throw EmptyGeometry();
    return out;
}

void write_points_csv(std::ostream& out, const PointSet& points) {
    for (const auto& p : points.points) out << svg::format_number(p.x) << ',' << svg::format_number(p.y) << '\n';
}

}  // namespace svgbench::geometry
