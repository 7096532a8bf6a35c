#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "svgbench/geometry.hpp"
#include "svgbench/svg_document.hpp"

namespace svgbench::geometry {

// Points, paths, nodes and documents. Paths come back absolute. ArcTo
// commands keep their analytic form under rotation + uniform scale and are
// converted to cubics otherwise. Group transforms are baked into the
// children (the group keeps an identity transform) and stroke widths scale
// by sqrt|det|.
inline Point apply_transform(const AffineTransform& t, Point p) { return t.apply(p); }
svg::Path apply_transform(const AffineTransform& t, const svg::Path& path);
svg::Node apply_transform(const AffineTransform& t, const svg::Node& node);
svg::SvgDocument apply_transform(const AffineTransform& t, const svg::SvgDocument& doc);

struct Polyline {
    std::vector<Point> points;
    bool closed = false;  // ends with ClosePath; the closing edge is implicit
};

// Flattened geometry of one drawable node, in document (root) coordinates.
struct FlatShape {
    std::vector<Polyline> subpaths;
    svg::Paint paint;
    double stroke_scale = 1.0;  // accumulated length scale of ancestor transforms
};

std::vector<Polyline> flatten_path(const svg::Path& path, const AffineTransform& t, double tolerance);

// Document order (painter's order), primitives converted to outlines.
std::vector<FlatShape> flatten_document(const svg::SvgDocument& doc, const AffineTransform& t, double tolerance);

struct PointSet {
    std::vector<Point> points;
    double frame = 0.0;  // side of the normalized (0..frame)^2 frame

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

// Arc-length samples of every subpath outline (fills ignored): one point at
// each multiple of `step` plus the final endpoint of each subpath. Throws
// EmptyGeometry when nothing drawable exists.
PointSet sample_points(const svg::SvgDocument& doc, double step);

// Same rule applied to a single polyline; exposed for oracles.
std::vector<Point> sample_polyline(const Polyline& line, double step);

// Debug export: one "x,y" line per point.
void write_points_csv(std::ostream& out, const PointSet& points);

}  // namespace svgbench::geometry
