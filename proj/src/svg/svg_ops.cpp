#include "svgbench/svg_ops.hpp"

#include <algorithm>

#include "svgbench/document_geometry.hpp"
#include "svgbench/error.hpp"
#include "svgbench/path_data.hpp"

namespace svgbench::svg {

namespace {

using PC = PathCommand;

Path ellipse_path(double cx, double cy, double rx, double ry) {
    if (rx == 0 || ry == 0) return {PC::move_to(cx, cy), PC::close()};
    return {
        PC::move_to(cx + rx, cy),
        PC::arc_to(rx, ry, 0, false, true, {cx, cy + ry}),
        PC::arc_to(rx, ry, 0, false, true, {cx - rx, cy}),
        PC::arc_to(rx, ry, 0, false, true, {cx, cy - ry}),
        PC::arc_to(rx, ry, 0, false, true, {cx + rx, cy}),
        PC::close(),
    };
}

Path rect_path(const RectNode& r) {
    const double x0 = r.x, y0 = r.y, x1 = r.x + r.width, y1 = r.y + r.height;
    if (r.rx <= 0 || r.ry <= 0) {
        return {PC::move_to(x0, y0), PC::line_to(x1, y0), PC::line_to(x1, y1), PC::line_to(x0, y1), PC::close()};
    }
    const double rx = r.rx, ry = r.ry;
    return {
        PC::move_to(x0 + rx, y0),
        PC::line_to(x1 - rx, y0),
        PC::arc_to(rx, ry, 0, false, true, {x1, y0 + ry}),
        PC::line_to(x1, y1 - ry),
        PC::arc_to(rx, ry, 0, false, true, {x1 - rx, y1}),
        PC::line_to(x0 + rx, y1),
        PC::arc_to(rx, ry, 0, false, true, {x0, y1 - ry}),
        PC::line_to(x0, y0 + ry),
        PC::arc_to(rx, ry, 0, false, true, {x0 + rx, y0}),
        PC::close(),
    };
}

Path points_path(const std::vector<Point>& pts, bool closed) {
    Path p;
    for (std::size_t i = 0; i < pts.size(); ++i)
        p.push_back(i == 0 ? PC::move_to(pts[i].x, pts[i].y) : PC::line_to(pts[i].x, pts[i].y));
    if (closed && !p.empty()) p.push_back(PC::close());
    return p;
}

std::vector<Node> lower_nodes(const std::vector<Node>& nodes) {
    std::vector<Node> out;
    out.reserve(nodes.size());
    for (const auto& n : nodes) {
        if (const auto* g = std::get_if<GroupNode>(&n.kind)) {
            out.push_back({GroupNode{g->transform, lower_nodes(g->children)}, n.paint});
            continue;
        }
        Path p = primitive_to_path(n.kind);
        if (p.empty()) continue;
        out.push_back({PathNode{std::move(p)}, n.paint});
    }
    return out;
}

std::vector<Node> simplify_nodes(const std::vector<Node>& nodes, const Paint& paint) {
    std::vector<Node> out;
    for (const auto& n : nodes) {
        if (const auto* g = std::get_if<GroupNode>(&n.kind)) {
            out.push_back({GroupNode{g->transform, simplify_nodes(g->children, paint)}, paint});
        } else if (const auto* p = std::get_if<PathNode>(&n.kind)) {
            out.push_back({PathNode{to_cubics(to_absolute(p->commands))}, paint});
        }
    }
    return out;
}

}  // namespace

Path primitive_to_path(const Node::Kind& kind) {
    return std::visit(
        [](const auto& k) -> Path {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, GroupNode>) return {};
            else if constexpr (std::is_same_v<T, PathNode>) return k.commands;
            else if constexpr (std::is_same_v<T, RectNode>) return rect_path(k);
            else if constexpr (std::is_same_v<T, CircleNode>) return ellipse_path(k.cx, k.cy, k.r, k.r);
            else if constexpr (std::is_same_v<T, EllipseNode>) return ellipse_path(k.cx, k.cy, k.rx, k.ry);
            else if constexpr (std::is_same_v<T, LineNode>) return {PC::move_to(k.x1, k.y1), PC::line_to(k.x2, k.y2)};
            else if constexpr (std::is_same_v<T, PolylineNode>) return points_path(k.points, false);
            else return points_path(k.points, true);
        },
        kind);
}

SvgDocument lower_primitives(const SvgDocument& doc) {
    SvgDocument out = doc;
    out.root = lower_nodes(doc.root);
    return out;
}

ViewBox resolve_view_box(const SvgDocument& doc) {
    if (doc.view_box) return *doc.view_box;
    if (doc.width_attr && doc.height_attr && *doc.width_attr > 0 && *doc.height_attr > 0)
        return {0, 0, *doc.width_attr, *doc.height_attr};
    throw NoResolvableSize();
}

SvgDocument normalize(const SvgDocument& doc, int target) {
    if (target <= 0) throw std::invalid_argument("normalize target must be positive");
    const ViewBox vb = resolve_view_box(doc);
    const double side = static_cast<double>(target);
    const double s = side / std::max(vb.width, vb.height);
    const double tx = (side - vb.width * s) / 2.0 - vb.min_x * s;
    const double ty = (side - vb.height * s) / 2.0 - vb.min_y * s;
    SvgDocument out = geometry::apply_transform({s, 0, 0, s, tx, ty}, doc);
    out.view_box = ViewBox{0, 0, side, side};
    out.width_attr.reset();
    out.height_attr.reset();
    return out;
}

SvgDocument simplify(const SvgDocument& doc) {
    Paint line_paint;
    line_paint.fill.reset();
    line_paint.stroke = Rgb{0, 0, 0};
    line_paint.stroke_width = 1.0;
    SvgDocument out = lower_primitives(doc);
    out.root = simplify_nodes(out.root, line_paint);
    return out;
}

}  // namespace svgbench::svg
