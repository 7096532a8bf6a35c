#include "svgbench/vectorize.hpp"

namespace svgbench::vectorize {

namespace {

bool quantizes_to_white(const svg::Rgb& c, int bits) {
    const int shift = 8 - bits;
    const int top = 255 >> shift;
    return (c.r >> shift) == top && (c.g >> shift) == top && (c.b >> shift) == top;
}

}  // namespace

svg::SvgDocument vectorize(const raster::RasterImage& img, const VectorizeConfig& config) {
    validate_config(config);
    svg::SvgDocument doc;
    doc.view_box = svg::ViewBox{0, 0, static_cast<double>(img.width()), static_cast<double>(img.height())};
    if (img.empty()) return doc;
    for (const ColorLayer& layer : quantize_colors(img, config)) {
        if (layer.rank == 0 && quantizes_to_white(layer.color, config.color_precision)) continue;
        svg::PathNode path;
        for (const Contour& c : trace_contours(layer.mask)) {
            const svg::Path part = fit_beziers(simplify_polygon(c, config.simplify_epsilon), config);
            path.commands.insert(path.commands.end(), part.begin(), part.end());
        }
        svg::Node node{path, {}};
        node.paint.fill = layer.color;
        node.paint.stroke.reset();
        node.paint.fill_rule = svg::FillRule::EvenOdd;
        doc.root.push_back(std::move(node));
    }
    return doc;
}

}  // namespace svgbench::vectorize
