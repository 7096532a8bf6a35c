#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "svgbench/svg_document.hpp"

namespace svgbench::svg {

// Parses an SVG `d` attribute. Throws MalformedPathData naming the index of
// the offending command.
Path parse_path_data(std::string_view d);

// Lenient variant used by repair: parses as far as possible and reports the
// byte position just past the last complete command tuple.
struct PathPrefix {
    Path commands;
    std::size_t complete_end = 0;
    bool ok = true;
};
PathPrefix parse_path_data_prefix(std::string_view d);

std::string format_path_data(const Path& path);

// Shortest decimal string that round-trips at double precision.
std::string format_number(double v);

// Absolute coordinates; H/V become LineTo, S/T become CubicTo/QuadTo with the
// reflected control point. ArcTo and ClosePath are kept (absolute).
Path to_absolute(const Path& path);

// Absolute path with every QuadTo and ArcTo replaced by cubics.
// Requires an absolute path (no H/V/S/T, no relative commands).
Path to_cubics(const Path& absolute);

bool is_absolute(const Path& path);

}  // namespace svgbench::svg
