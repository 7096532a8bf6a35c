#pragma once

#include "svgbench/svg_document.hpp"

namespace svgbench::svg {

// Path equivalent of a primitive (rect, circle, ellipse, line, polyline,
// polygon); a PathNode is returned as-is. Circles and ellipses use four
// quarter arcs, rounded rect corners one arc each.
Path primitive_to_path(const Node::Kind& kind);

// Only Group and Path nodes remain; paints are untouched.
SvgDocument lower_primitives(const SvgDocument& doc);

// Absolute commands, group transforms baked into geometry, and a uniform
// letterboxing scale mapping the viewBox onto [0, target]^2.
// Throws NoResolvableSize when neither viewBox nor width/height is present.
SvgDocument normalize(const SvgDocument& doc, int target);

// Line-stroke abstraction: paths only, cubics and lines only, no fill,
// black stroke of width 1.
SvgDocument simplify(const SvgDocument& doc);

// Size of the user-space frame the document maps onto (viewBox, else
// width/height); throws NoResolvableSize.
ViewBox resolve_view_box(const SvgDocument& doc);

}  // namespace svgbench::svg
