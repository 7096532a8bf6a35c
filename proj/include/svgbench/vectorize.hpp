#pragma once

#include <cstdint>
#include <vector>

#include "svgbench/raster.hpp"
#include "svgbench/svg_document.hpp"

namespace svgbench::vectorize {

using geometry::Point;

struct VectorizeConfig {
    int color_precision = 5;  // bits kept per channel, 1..8
    int min_region_px = 16;
    double simplify_epsilon = 1.0;
    double corner_angle_deg = 60.0;
    double fit_error = 4.0;  // squared pixels
};

// Throws std::invalid_argument when a field is out of range.
void validate_config(const VectorizeConfig& config);

struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // row-major, 0 or 1

    BinaryMask() = default;
    BinaryMask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}
    bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v = true) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
    std::size_t count() const;
    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;
};

struct ColorLayer {
    svg::Rgb color;
    BinaryMask mask;
    int rank = 0;  // 0 is painted first
    std::size_t area = 0;
};

// Closed loop on the pixel-corner lattice (or a simplification of one).
// Outer boundaries have positive shoelace area in image coordinates
// (y down), holes negative; unit pixel (0,0) is (0,0),(1,0),(1,1),(0,1).
struct Contour {
    std::vector<Point> points;
    bool is_hole = false;
};

double signed_area(const std::vector<Point>& loop);

// Bit truncation, 4-connected labelling, small-region merging, then one
// layer per surviving color ordered by decreasing area. A layer's color is
// the mean of its surviving regions' own pixels; absorbed regions do not
// tint it.
std::vector<ColorLayer> quantize_colors(const raster::RasterImage& img, const VectorizeConfig& config);

// One outer contour per 4-connected region plus one per hole, collinear
// runs merged, each starting at its minimum (y, x) corner.
// Throws EmptyMask.
std::vector<Contour> trace_contours(const BinaryMask& mask);

// Closed Ramer-Douglas-Peucker, split at two mutually far points; keeps at
// least three points.
Contour simplify_polygon(const Contour& contour, double epsilon);

// M, then L/C segments between detected corners, then Z. The final segment
// ends at the start point.
svg::Path fit_beziers(const Contour& polygon, const VectorizeConfig& config);

// One EvenOdd path per layer. A bottom layer whose color quantizes to
// white is omitted since the canvas is already white. viewBox = (0, 0, w, h).
svg::SvgDocument vectorize(const raster::RasterImage& img, const VectorizeConfig& config = {});

}  // namespace svgbench::vectorize
