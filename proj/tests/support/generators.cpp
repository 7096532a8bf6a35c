#include "generators.hpp"

#include <cmath>

#include "svgbench/document_geometry.hpp"
#include "svgbench/error.hpp"
#include "svgbench/svg_ops.hpp"

namespace testgen {

using namespace svgbench;
using svg::PathCommand;
using svg::PathOp;

double uniform(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0));
}

int uniform_int(Rng& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

bool coin(Rng& rng, double p) { return uniform(rng, 0.0, 1.0) < p; }

double coordinate(Rng& rng, double lo, double hi) {
    const double v = uniform(rng, lo, hi);
    switch (uniform_int(rng, 0, 2)) {
        case 0: return std::round(v);
        case 1: return std::round(v * 100.0) / 100.0;
        default: return v;
    }
}

svg::Paint random_paint(Rng& rng) {
    svg::Paint p;
    auto color = [&] {
        return svg::Rgb{static_cast<std::uint8_t>(uniform_int(rng, 0, 255)), static_cast<std::uint8_t>(uniform_int(rng, 0, 255)),
                        static_cast<std::uint8_t>(uniform_int(rng, 0, 255))};
    };
    if (coin(rng, 0.85))
        p.fill = color();
    else
        p.fill.reset();
    if (coin(rng, 0.4)) p.stroke = color();
    p.stroke_width = coin(rng) ? 1.0 : coordinate(rng, 0.0, 6.0);
    p.fill_rule = coin(rng, 0.3) ? svg::FillRule::EvenOdd : svg::FillRule::NonZero;
    return p;
}

svg::Path random_path(Rng& rng, double extent, bool allow_relative) {
    svg::Path path;
    const int subpaths = uniform_int(rng, 1, 3);
    for (int s = 0; s < subpaths; ++s) {
        path.push_back(PathCommand::move_to(coordinate(rng, 0, extent), coordinate(rng, 0, extent)));
        if (s > 0 && allow_relative && coin(rng, 0.3)) path.back().relative = true;
        const int n = uniform_int(rng, 1, 6);
        for (int i = 0; i < n; ++i) {
            PathCommand c;
            c.op = static_cast<PathOp>(uniform_int(rng, 1, 8));
            c.relative = allow_relative && coin(rng, 0.4);
            const double lo = c.relative ? -extent / 4 : 0.0;
            const double hi = c.relative ? extent / 4 : extent;
            for (int k = 0; k < svg::arity(c.op); ++k) c.args[static_cast<std::size_t>(k)] = coordinate(rng, lo, hi);
            if (c.op == PathOp::ArcTo) {
                c.args[0] = coordinate(rng, 0.5, extent / 2);
                c.args[1] = coordinate(rng, 0.5, extent / 2);
                c.args[2] = coordinate(rng, -90, 90);
                c.args[3] = coin(rng) ? 1.0 : 0.0;
                c.args[4] = coin(rng) ? 1.0 : 0.0;
            }
            path.push_back(c);
        }
        if (coin(rng, 0.6)) path.push_back(PathCommand::close());
    }
    return path;
}

namespace {

svg::Node random_leaf(Rng& rng, double extent, const DocOptions& opts) {
    svg::Node node{svg::PathNode{}, random_paint(rng)};
    const int kind = opts.primitives ? uniform_int(rng, 0, 6) : 0;
    switch (kind) {
        case 0: node.kind = svg::PathNode{random_path(rng, extent)}; break;
        case 1: {
            svg::RectNode r{coordinate(rng, 0, extent / 2), coordinate(rng, 0, extent / 2), coordinate(rng, 1, extent / 2),
                            coordinate(rng, 1, extent / 2), 0, 0};
            if (coin(rng, 0.3)) r.rx = r.ry = std::min(coordinate(rng, 0, std::min(r.width, r.height) / 2), std::min(r.width, r.height) / 2);
            node.kind = r;
            break;
        }
        case 2: node.kind = svg::CircleNode{coordinate(rng, 0, extent), coordinate(rng, 0, extent), coordinate(rng, 1, extent / 3)}; break;
        case 3:
            node.kind = svg::EllipseNode{coordinate(rng, 0, extent), coordinate(rng, 0, extent), coordinate(rng, 1, extent / 3),
                                         coordinate(rng, 1, extent / 3)};
            break;
        case 4:
            node.kind = svg::LineNode{coordinate(rng, 0, extent), coordinate(rng, 0, extent), coordinate(rng, 0, extent),
                                      coordinate(rng, 0, extent)};
            break;
        default: {
            std::vector<svg::Point> pts(static_cast<std::size_t>(uniform_int(rng, 2, 6)));
            for (auto& p : pts) p = {coordinate(rng, 0, extent), coordinate(rng, 0, extent)};
            if (kind == 5)
                node.kind = svg::PolylineNode{pts};
            else
                node.kind = svg::PolygonNode{pts};
        }
    }
    return node;
}

svg::AffineTransform random_transform(Rng& rng, double extent) {
    using svg::AffineTransform;
    switch (uniform_int(rng, 0, 4)) {
        case 0: return AffineTransform::translate(coordinate(rng, -extent / 4, extent / 4), coordinate(rng, -extent / 4, extent / 4));
        case 1: return AffineTransform::rotate_deg(coordinate(rng, -180, 180), {extent / 2, extent / 2});
        case 2: return AffineTransform::scale(coordinate(rng, 0.5, 1.5), coordinate(rng, 0.5, 1.5));
        case 3: return AffineTransform::skew_x_deg(coordinate(rng, -20, 20));
        default: return AffineTransform::identity();
    }
}

std::vector<svg::Node> random_children(Rng& rng, double extent, const DocOptions& opts, int depth) {
    std::vector<svg::Node> out;
    const int n = uniform_int(rng, 1, std::max(1, opts.max_nodes));
    for (int i = 0; i < n; ++i) {
        if (opts.groups && depth < opts.max_depth && coin(rng, 0.2)) {
            svg::GroupNode g{random_transform(rng, extent), random_children(rng, extent, opts, depth + 1)};
            out.push_back(svg::Node{std::move(g), random_paint(rng)});
        } else {
            out.push_back(random_leaf(rng, extent, opts));
        }
    }
    return out;
}

}  // namespace

svg::SvgDocument random_document(Rng& rng, const DocOptions& opts) {
    svg::SvgDocument doc;
    const double w = coordinate(rng, 10, 500), h = coordinate(rng, 10, 500);
    doc.view_box = svg::ViewBox{coordinate(rng, -20, 20), coordinate(rng, -20, 20), std::max(w, 1.0), std::max(h, 1.0)};
    if (opts.size_attrs && coin(rng, 0.3)) {
        doc.width_attr = std::round(w);
        doc.height_attr = std::round(h);
    }
    doc.root = random_children(rng, std::min(w, h), opts, 0);
    return doc;
}

svg::SvgDocument random_drawable_document(Rng& rng, int max_nodes) {
    DocOptions opts;
    opts.max_nodes = max_nodes;
    opts.size_attrs = false;
    for (;;) {
        svg::SvgDocument doc = svg::normalize(random_document(rng, opts), 224);
        try {
            if (!geometry::sample_points(doc, 2.0).empty()) return doc;
        } catch (const EmptyGeometry&) {
        }
    }
}

raster::RasterImage random_image(Rng& rng, int w, int h) {
    raster::RasterImage img(w, h);
    for (float& v : img.data()) v = static_cast<float>(uniform_int(rng, 0, 255)) / 255.0f;
    return img;
}

}  // namespace testgen
