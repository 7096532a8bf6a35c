#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "svgbench/geometry.hpp"

namespace svgbench::svg {

using geometry::AffineTransform;
using geometry::Point;

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

enum class FillRule { NonZero, EvenOdd };

// Resolved (inherited + own) paint of a node. Opacity is flattened into the
// colors at parse time by compositing onto white.
struct Paint {
    std::optional<Rgb> fill = Rgb{0, 0, 0};
    std::optional<Rgb> stroke;
    double stroke_width = 1.0;
    FillRule fill_rule = FillRule::NonZero;

    friend bool operator==(const Paint&, const Paint&) = default;
};

enum class PathOp : std::uint8_t {
    MoveTo,
    LineTo,
    HLineTo,
    VLineTo,
    CubicTo,
    SmoothCubicTo,
    QuadTo,
    SmoothQuadTo,
    ArcTo,
    ClosePath,
};

constexpr int arity(PathOp op) {
    switch (op) {
        case PathOp::MoveTo:
        case PathOp::LineTo:
        case PathOp::SmoothQuadTo: return 2;
        case PathOp::HLineTo:
        case PathOp::VLineTo: return 1;
        case PathOp::CubicTo: return 6;
        case PathOp::SmoothCubicTo:
        case PathOp::QuadTo: return 4;
        case PathOp::ArcTo: return 7;
        case PathOp::ClosePath: return 0;
    }
    return 0;
}

char command_letter(PathOp op, bool relative);

// Unused trailing args stay zero so defaulted equality is structural.
struct PathCommand {
    PathOp op = PathOp::MoveTo;
    bool relative = false;
    std::array<double, 7> args{};

    friend bool operator==(const PathCommand&, const PathCommand&) = default;

    static PathCommand move_to(double x, double y) { return {PathOp::MoveTo, false, {x, y}}; }
    static PathCommand line_to(double x, double y) { return {PathOp::LineTo, false, {x, y}}; }
    static PathCommand cubic_to(Point c1, Point c2, Point p) {
        return {PathOp::CubicTo, false, {c1.x, c1.y, c2.x, c2.y, p.x, p.y}};
    }
    static PathCommand quad_to(Point c, Point p) { return {PathOp::QuadTo, false, {c.x, c.y, p.x, p.y}}; }
    static PathCommand arc_to(double rx, double ry, double rot, bool large, bool sweep, Point p) {
        return {PathOp::ArcTo, false, {rx, ry, rot, large ? 1.0 : 0.0, sweep ? 1.0 : 0.0, p.x, p.y}};
    }
    static PathCommand close() { return {PathOp::ClosePath, false, {}}; }
};

using Path = std::vector<PathCommand>;

struct PathNode {
    Path commands;
    friend bool operator==(const PathNode&, const PathNode&) = default;
};

struct RectNode {
    double x = 0, y = 0, width = 0, height = 0, rx = 0, ry = 0;
    friend bool operator==(const RectNode&, const RectNode&) = default;
};

struct CircleNode {
    double cx = 0, cy = 0, r = 0;
    friend bool operator==(const CircleNode&, const CircleNode&) = default;
};

struct EllipseNode {
    double cx = 0, cy = 0, rx = 0, ry = 0;
    friend bool operator==(const EllipseNode&, const EllipseNode&) = default;
};

struct LineNode {
    double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
    friend bool operator==(const LineNode&, const LineNode&) = default;
};

struct PolylineNode {
    std::vector<Point> points;
    friend bool operator==(const PolylineNode&, const PolylineNode&) = default;
};

struct PolygonNode {
    std::vector<Point> points;
    friend bool operator==(const PolygonNode&, const PolygonNode&) = default;
};

struct Node;

struct GroupNode {
    AffineTransform transform;
    std::vector<Node> children;
};
bool operator==(const GroupNode& lhs, const GroupNode& rhs);

struct Node {
    using Kind = std::variant<GroupNode, PathNode, RectNode, CircleNode, EllipseNode, LineNode,
                              PolylineNode, PolygonNode>;
    Kind kind;
    Paint paint;

    friend bool operator==(const Node&, const Node&) = default;

    bool is_group() const { return std::holds_alternative<GroupNode>(kind); }
};

struct ViewBox {
    double min_x = 0, min_y = 0, width = 0, height = 0;
    friend bool operator==(const ViewBox&, const ViewBox&) = default;
};

struct SvgDocument {
    std::optional<ViewBox> view_box;
    std::optional<double> width_attr;
    std::optional<double> height_attr;
    std::vector<Node> root;

    friend bool operator==(const SvgDocument&, const SvgDocument&) = default;
};

enum class Severity { Info, Warning, Error };

struct Issue {
    Severity severity = Severity::Warning;
    std::string message;
    std::size_t byte_offset = 0;

    friend bool operator==(const Issue&, const Issue&) = default;
};

const char* severity_name(Severity s);

// Depth-first, document-order visit of every node (groups included).
template <typename Fn>
void for_each_node(const std::vector<Node>& nodes, Fn&& fn) {
    for (const auto& n : nodes) {
        fn(n);
        if (const auto* g = std::get_if<GroupNode>(&n.kind)) for_each_node(g->children, fn);
    }
}

template <typename Fn>
void for_each_node_mut(std::vector<Node>& nodes, Fn&& fn) {
    for (auto& n : nodes) {
        fn(n);
        if (auto* g = std::get_if<GroupNode>(&n.kind)) for_each_node_mut(g->children, fn);
    }
}

}  // namespace svgbench::svg
