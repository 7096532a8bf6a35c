#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "svgbench/svg_document.hpp"

namespace svgbench::raster {

// Row-major interleaved RGB, sRGB-encoded intensities normalized to [0, 1].
class RasterImage {
public:
    RasterImage() = default;
    RasterImage(int width, int height, float fill = 1.0f);

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return pixels_.empty(); }

    float at(int x, int y, int channel) const {
        return pixels_[(static_cast<std::size_t>(y) * width_ + x) * 3 + channel];
    }
    void set(int x, int y, int channel, float v) {
        pixels_[(static_cast<std::size_t>(y) * width_ + x) * 3 + channel] = v;
    }
    void set_rgb(int x, int y, float r, float g, float b) {
        float* p = &pixels_[(static_cast<std::size_t>(y) * width_ + x) * 3];
        p[0] = r;
        p[1] = g;
        p[2] = b;
    }

    std::span<const float> data() const { return pixels_; }
    std::span<float> data() { return pixels_; }

    friend bool operator==(const RasterImage&, const RasterImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> pixels_;
};

inline constexpr int kDefaultSupersample = 4;

// Scanline rasterizer on a white background. The document's viewBox is
// letterboxed into a size x size frame; each pixel averages
// supersample x supersample point samples. Fills honor the node's fill rule;
// strokes are outlined with round joins and caps and filled non-zero.
// Elements are painted in document order.
RasterImage rasterize(const svg::SvgDocument& doc, int size, int supersample = kDefaultSupersample);

// Coverage of one polygon set at sample resolution: fraction in [0, 1] per
// pixel of a size x size grid. Exposed for tests and the stroke path.
std::vector<float> polygon_coverage(const std::vector<std::vector<geometry::Point>>& contours, svg::FillRule rule,
                                    int size, int supersample);

// Round-joined, round-capped outline of a polyline as a set of contours that
// fills correctly under the non-zero rule.
std::vector<std::vector<geometry::Point>> stroke_outline(const std::vector<geometry::Point>& points, bool closed,
                                                         double width, double tolerance);

}  // namespace svgbench::raster
