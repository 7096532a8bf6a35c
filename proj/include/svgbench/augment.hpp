#pragma once

#include <cstdint>
#include <utility>

#include "svgbench/svg_document.hpp"

namespace svgbench::augment {

struct AugmentConfig {
    std::pair<double, double> rotation_range_deg{-10.0, 10.0};
    double color_sigma = 8.0;  // 0-255 channel units
    std::pair<double, double> curve_noise_scale_range{0.01, 0.05};
    double perlin_frequency = 4.0;  // cycles per frame
    std::int64_t seed = 0;
};

// Throws std::invalid_argument on a reversed range or negative sigma/frequency.
void validate_config(const AugmentConfig& config);

// The per-document random parameters of augment(), drawn from one stream
// keyed by the seed.
struct AugmentDraws {
    double angle_deg = 0.0;
    double curve_scale = 0.0;
};
AugmentDraws draw_parameters(const AugmentConfig& config);

// Rotation about the frame center. Angles are reduced modulo 360, so a full
// turn is exact; an angle of zero returns the document unchanged.
svg::SvgDocument rotate_svg(const svg::SvgDocument& doc, double angle_deg);

// Per-channel fill noise keyed by (seed, drawable node index, channel).
svg::SvgDocument color_noise(const svg::SvgDocument& doc, double sigma, std::int64_t seed);

// Perlin displacement of every endpoint and control point by
// scale * F * (n0, n1) with |(n0, n1)| <= 1, F the frame side. Primitives
// are lowered and curves converted to cubics first; a zero scale returns
// the document unchanged.
svg::SvgDocument curve_noise(const svg::SvgDocument& doc, double scale, double perlin_frequency, std::int64_t seed);
svg::SvgDocument curve_noise(const svg::SvgDocument& doc, const AugmentConfig& config);

// Rotation, then color noise, then curve noise.
svg::SvgDocument augment(const svg::SvgDocument& doc, const AugmentConfig& config);

}  // namespace svgbench::augment
