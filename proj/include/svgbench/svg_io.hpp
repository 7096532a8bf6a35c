#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svgbench/svg_document.hpp"

namespace svgbench::svg {

// Parses SVG text into a document. Unsupported elements are skipped and
// recorded in `issues` (when given); malformed markup throws MalformedXml and
// a bad `d` attribute throws MalformedPathData.
SvgDocument parse_svg(std::string_view text, std::vector<Issue>* issues = nullptr);

// Canonical, byte-deterministic serialization. Paint attributes are emitted
// only where they differ from the inherited value.
std::string serialize(const SvgDocument& doc);

// CSS color syntax: 16 basic keywords, #rgb, #rrggbb, rgb(r,g,b) with integer
// or percentage components. Returns nullopt for anything else.
std::optional<Rgb> parse_color(std::string_view text);
std::string format_color(const Rgb& c);

// SVG transform list; nullopt on a grammar error.
std::optional<AffineTransform> parse_transform(std::string_view text);

}  // namespace svgbench::svg
