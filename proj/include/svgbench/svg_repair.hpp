#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "svgbench/svg_document.hpp"

namespace svgbench::svg {

struct ValidationReport {
    bool compilable = false;
    bool repaired = false;
    std::vector<Issue> issues;
};

// compilable iff parse_svg succeeds; parse warnings and the fatal error (if
// any) are reported with byte offsets.
ValidationReport validate(std::string_view text);

struct RepairResult {
    std::string text;
    ValidationReport report;
};

// Completes possibly-truncated SVG text: a trailing incomplete token or
// attribute is dropped (an unfinished `d` keeps its complete command
// tuples), the open tag is self-closed, and every unclosed element is closed
// in reverse order. Text that already parses is returned unchanged. The
// output always parses. Throws Unrepairable when there is no `<svg` tag.
RepairResult repair(std::string_view text);

}  // namespace svgbench::svg
