#include "svgbench/augment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "svgbench/document_geometry.hpp"
#include "svgbench/error.hpp"
#include "svgbench/path_data.hpp"
#include "svgbench/perlin.hpp"
#include "svgbench/rng.hpp"
#include "svgbench/svg_ops.hpp"

namespace svgbench::augment {

using geometry::Point;

namespace {

constexpr std::uint64_t kDrawStream = 0x6175676d656e74ULL;
constexpr std::uint64_t kColorStream = 0x636f6c6f72ULL;

svg::ViewBox frame_of(const svg::SvgDocument& doc) {
    try {
        return svg::resolve_view_box(doc);
    } catch (const NoResolvableSize&) {
        return {0, 0, 224, 224};
    }
}

}  // namespace

void validate_config(const AugmentConfig& c) {
    if (!(c.rotation_range_deg.first <= c.rotation_range_deg.second))
        throw std::invalid_argument("rotation range must satisfy lo <= hi");
    if (!(c.curve_noise_scale_range.first <= c.curve_noise_scale_range.second))
        throw std::invalid_argument("curve noise scale range must satisfy lo <= hi");
    if (!(c.color_sigma >= 0.0)) throw std::invalid_argument("color sigma must be >= 0");
    if (!(c.perlin_frequency >= 0.0)) throw std::invalid_argument("perlin frequency must be >= 0");
}

AugmentDraws draw_parameters(const AugmentConfig& c) {
    CounterRng rng(hash_key(static_cast<std::uint64_t>(c.seed), kDrawStream));
    AugmentDraws d;
    d.angle_deg = rng.uniform(c.rotation_range_deg.first, c.rotation_range_deg.second);
    d.curve_scale = rng.uniform(c.curve_noise_scale_range.first, c.curve_noise_scale_range.second);
    return d;
}

svg::SvgDocument rotate_svg(const svg::SvgDocument& doc, double angle_deg) {
    const double a = std::fmod(angle_deg, 360.0);
    if (a == 0.0) return doc;
    const svg::ViewBox vb = frame_of(doc);
    const Point center{vb.min_x + vb.width / 2.0, vb.min_y + vb.height / 2.0};
    return geometry::apply_transform(geometry::AffineTransform::rotate_deg(a, center), doc);
}

svg::SvgDocument color_noise(const svg::SvgDocument& doc, double sigma, std::int64_t seed) {
    if (sigma == 0.0) return doc;
    svg::SvgDocument out = doc;
    std::uint64_t index = 0;
    svg::for_each_node_mut(out.root, [&](svg::Node& node) {
        if (node.is_group()) return;
        const std::uint64_t i = index++;
        if (!node.paint.fill) return;
        std::uint8_t* channels[3] = {&node.paint.fill->r, &node.paint.fill->g, &node.paint.fill->b};
        for (std::uint64_t c = 0; c < 3; ++c) {
            CounterRng rng(hash_key(static_cast<std::uint64_t>(seed), kColorStream, i, c));
            const double v = std::round(*channels[c] + sigma * rng.gaussian());
            *channels[c] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
        }
    });
    return out;
}

namespace {

class Displacer {
public:
    Displacer(double amplitude, double frequency, std::int64_t seed)
        : amplitude_(amplitude), frequency_(frequency), n0_(seed), n1_(seed + 1) {}

    Point operator()(Point p) const {
        double dx = n0_(p.x * frequency_, p.y * frequency_);
        double dy = n1_(p.x * frequency_, p.y * frequency_);
        const double norm = std::hypot(dx, dy);
        if (norm > 1.0) {
            dx /= norm;
            dy /= norm;
        }
        return {p.x + amplitude_ * dx, p.y + amplitude_ * dy};
    }

private:
    double amplitude_;
    double frequency_;
    geometry::PerlinNoise n0_, n1_;
};

void displace_nodes(std::vector<svg::Node>& nodes, const Displacer& move) {
    for (auto& node : nodes) {
        if (auto* g = std::get_if<svg::GroupNode>(&node.kind)) {
            displace_nodes(g->children, move);
            continue;
        }
        auto* p = std::get_if<svg::PathNode>(&node.kind);
        if (!p) continue;
        svg::Path path = svg::to_cubics(svg::to_absolute(p->commands));
        for (auto& cmd : path) {
            const int n = svg::arity(cmd.op) / 2;
            for (int k = 0; k < n; ++k) {
                const Point q = move({cmd.args[2 * k], cmd.args[2 * k + 1]});
                cmd.args[2 * k] = q.x;
                cmd.args[2 * k + 1] = q.y;
            }
        }
        p->commands = std::move(path);
    }
}

}  // namespace

svg::SvgDocument curve_noise(const svg::SvgDocument& doc, double scale, double perlin_frequency, std::int64_t seed) {
    if (scale == 0.0) return doc;
    const svg::ViewBox vb = frame_of(doc);
    const double frame = std::max(vb.width, vb.height);
    svg::SvgDocument out = svg::lower_primitives(geometry::apply_transform(geometry::AffineTransform::identity(), doc));
    displace_nodes(out.root, Displacer(scale * frame, frame > 0 ? perlin_frequency / frame : 0.0, seed));
    return out;
}

svg::SvgDocument curve_noise(const svg::SvgDocument& doc, const AugmentConfig& config) {
    validate_config(config);
    return curve_noise(doc, draw_parameters(config).curve_scale, config.perlin_frequency, config.seed);
}

svg::SvgDocument augment(const svg::SvgDocument& doc, const AugmentConfig& config) {
    validate_config(config);
    const AugmentDraws d = draw_parameters(config);
    svg::SvgDocument out = rotate_svg(doc, d.angle_deg);
    out = color_noise(out, config.color_sigma, config.seed);
    return curve_noise(out, d.curve_scale, config.perlin_frequency, config.seed);
}

}  // namespace svgbench::augment
