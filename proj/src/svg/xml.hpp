#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Minimal XML reader for the SVG subset: elements, attributes, comments,
// processing instructions, CDATA and DOCTYPE (internal entity declarations
// are honored). Text content is skipped.
namespace svgbench::svg::xml {

struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Element> children;
    std::size_t offset = 0;

    const std::string* attribute(std::string_view key) const;
};

// Throws MalformedXml.
Element parse_document(std::string_view text);

}  // namespace svgbench::svg::xml
