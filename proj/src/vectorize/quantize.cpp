#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "svgbench/vectorize.hpp"

namespace svgbench::vectorize {

std::size_t BinaryMask::count() const { return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1)); }

void validate_config(const VectorizeConfig& c) {
    if (c.color_precision < 1 || c.color_precision > 8) throw std::invalid_argument("color precision must be in [1, 8]");
    if (c.min_region_px < 1) throw std::invalid_argument("min region size must be positive");
    if (!(c.simplify_epsilon >= 0.0)) throw std::invalid_argument("simplify epsilon must be >= 0");
    if (!(c.corner_angle_deg > 0.0)) throw std::invalid_argument("corner angle must be positive");
    if (!(c.fit_error > 0.0)) throw std::invalid_argument("fit error must be positive");
}

namespace {

struct Region {
    std::uint32_t key = 0;  // truncated color
    std::size_t area = 0;      // including absorbed regions
    std::size_t own_area = 0;  // original pixels only
    double sum[3] = {0, 0, 0};  // over original pixels
    std::vector<std::uint32_t> neighbours;
};

std::uint32_t find(std::vector<std::uint32_t>& parent, std::uint32_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

std::vector<ColorLayer> quantize_colors(const raster::RasterImage& img, const VectorizeConfig& config) {
    validate_config(config);
    const int w = img.width(), h = img.height();
    const std::size_t n = static_cast<std::size_t>(w) * h;
    if (n == 0) return {};
    const int shift = 8 - config.color_precision;

    std::vector<std::array<std::uint8_t, 3>> bytes(n);
    std::vector<std::uint32_t> keys(n);
    const auto px = img.data();
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t key = 0;
        for (int c = 0; c < 3; ++c) {
            const auto v = static_cast<std::uint8_t>(std::lround(std::clamp(px[i * 3 + c], 0.0f, 1.0f) * 255.0f));
            bytes[i][c] = v;
            key = (key << 8) | static_cast<std::uint32_t>(v >> shift);
        }
        keys[i] = key;
    }

    // 4-connected components of equal truncated color.
    std::vector<std::uint32_t> label(n, UINT32_MAX);
    std::vector<Region> regions;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (label[start] != UINT32_MAX) continue;
        const auto id = static_cast<std::uint32_t>(regions.size());
        Region r;
        r.key = keys[start];
        label[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            ++r.area;
            for (int c = 0; c < 3; ++c) r.sum[c] += bytes[i][c];
            const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
            const std::size_t nb[4] = {i - 1, i + 1, i - w, i + w};
            const bool ok[4] = {x > 0, x + 1 < w, y > 0, y + 1 < h};
            for (int k = 0; k < 4; ++k) {
                if (!ok[k] || label[nb[k]] != UINT32_MAX || keys[nb[k]] != r.key) continue;
                label[nb[k]] = id;
                stack.push_back(nb[k]);
            }
        }
        r.own_area = r.area;
        regions.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
        if (x + 1 < w && label[i] != label[i + 1]) {
            regions[label[i]].neighbours.push_back(label[i + 1]);
            regions[label[i + 1]].neighbours.push_back(label[i]);
        }
        if (y + 1 < h && label[i] != label[i + w]) {
            regions[label[i]].neighbours.push_back(label[i + w]);
            regions[label[i + w]].neighbours.push_back(label[i]);
        }
    }

    // Merge small regions, smallest first, into the nearest-colored neighbour.
    std::vector<std::uint32_t> parent(regions.size());
    std::iota(parent.begin(), parent.end(), 0u);
    using Item = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    const auto min_px = static_cast<std::size_t>(config.min_region_px);
    for (std::uint32_t r = 0; r < regions.size(); ++r)
        if (regions[r].area < min_px) queue.emplace(regions[r].area, r);
    while (!queue.empty()) {
        const auto [area, r] = queue.top();
        queue.pop();
        if (parent[r] != r || regions[r].area != area) continue;
        Region& small = regions[r];
        std::vector<std::uint32_t> nbs;
        for (std::uint32_t nb : small.neighbours) {
            const std::uint32_t root = find(parent, nb);
            if (root != r) nbs.push_back(root);
        }
        std::sort(nbs.begin(), nbs.end());
        nbs.erase(std::unique(nbs.begin(), nbs.end()), nbs.end());
        small.neighbours = nbs;
        if (nbs.empty()) continue;
        auto color_distance = [&](std::uint32_t o) {
            double d = 0.0;
            for (int c = 0; c < 3; ++c) {
                const double diff = small.sum[c] / small.own_area - regions[o].sum[c] / regions[o].own_area;
                d += diff * diff;
            }
            return d;
        };
        std::uint32_t best = nbs.front();
        double best_d = color_distance(best);
        for (std::uint32_t o : nbs) {
            const double d = color_distance(o);
            if (d < best_d || (d == best_d && regions[o].area > regions[best].area)) {
                best = o;
                best_d = d;
            }
        }
        Region& target = regions[best];
        parent[r] = best;
        target.area += small.area;
        target.neighbours.insert(target.neighbours.end(), nbs.begin(), nbs.end());
        small.neighbours.clear();
        if (target.area < min_px) queue.emplace(target.area, best);
    }

    // One layer per surviving truncated color.
    struct Acc {
        std::size_t area = 0;
        std::size_t own_area = 0;
        double sum[3] = {0, 0, 0};
        std::uint32_t first_region = 0;
    };
    std::vector<std::uint32_t> layer_of_region(regions.size(), UINT32_MAX);
    std::unordered_map<std::uint32_t, std::uint32_t> layer_by_key;
    std::vector<Acc> accs;
    for (std::uint32_t r = 0; r < regions.size(); ++r) {
        if (find(parent, r) != r) continue;
        const auto [it, inserted] = layer_by_key.try_emplace(regions[r].key, static_cast<std::uint32_t>(accs.size()));
        if (inserted) accs.push_back({0, 0, {0, 0, 0}, r});
        const std::uint32_t li = it->second;
        layer_of_region[r] = li;
        accs[li].area += regions[r].area;
        accs[li].own_area += regions[r].own_area;
        for (int c = 0; c < 3; ++c) accs[li].sum[c] += regions[r].sum[c];
    }

    std::vector<std::uint32_t> order(accs.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::tie(accs[b].area, accs[a].first_region) < std::tie(accs[a].area, accs[b].first_region);
    });
    std::vector<int> rank_of(accs.size());
    std::vector<ColorLayer> layers(accs.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Acc& a = accs[order[k]];
        rank_of[order[k]] = static_cast<int>(k);
        ColorLayer& l = layers[k];
        l.rank = static_cast<int>(k);
        l.area = a.area;
        l.mask = BinaryMask(w, h);
        auto channel = [&](int c) { return static_cast<std::uint8_t>(std::clamp(std::lround(a.sum[c] / a.own_area), 0L, 255L)); };
        l.color = {channel(0), channel(1), channel(2)};
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t li = layer_of_region[find(parent, label[i])];
        layers[static_cast<std::size_t>(rank_of[li])].mask.bits[i] = 1;
    }
    return layers;
}

}  // namespace svgbench::vectorize
