#include "svgbench/perlin.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "svgbench/rng.hpp"

namespace svgbench::geometry {

namespace {

// Eight lattice gradients; with these the blend is confined to [-1, 1].
constexpr std::array<std::array<double, 2>, 8> kGradients{{
    {1, 1}, {-1, 1}, {1, -1}, {-1, -1}, {1, 0}, {-1, 0}, {0, 1}, {0, -1},
}};

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

double gradient_dot(std::uint8_t hash, double dx, double dy) {
    const auto& g = kGradients[hash & 7];
    return g[0] * dx + g[1] * dy;
}

}  // namespace

PerlinNoise::PerlinNoise(std::int64_t seed) : seed_(seed) {
    std::array<std::uint8_t, 256> p{};
    std::iota(p.begin(), p.end(), 0);
    CounterRng rng(hash_key(static_cast<std::uint64_t>(seed), 0x5045524cULL));
    for (std::size_t i = p.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_u64() % (i + 1));
        std::swap(p[i], p[j]);
    }
    for (std::size_t i = 0; i < 512; ++i) perm_[i] = p[i & 255];
}

double PerlinNoise::operator()(double x, double y) const {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const double dx = x - fx;
    const double dy = y - fy;
    // Wrap lattice coordinates into the table period.
    const auto xi = static_cast<std::uint8_t>(static_cast<std::int64_t>(fx) & 255);
    const auto yi = static_cast<std::uint8_t>(static_cast<std::int64_t>(fy) & 255);

    const std::uint8_t aa = perm_[perm_[xi] + yi];
    const std::uint8_t ab = perm_[perm_[xi] + yi + 1];
    const std::uint8_t ba = perm_[perm_[xi + 1] + yi];
    const std::uint8_t bb = perm_[perm_[xi + 1] + yi + 1];

    const double n00 = gradient_dot(aa, dx, dy);
    const double n10 = gradient_dot(ba, dx - 1.0, dy);
    const double n01 = gradient_dot(ab, dx, dy - 1.0);
    const double n11 = gradient_dot(bb, dx - 1.0, dy - 1.0);

    const double u = fade(dx);
    const double v = fade(dy);
    const double nx0 = n00 + u * (n10 - n00);
    const double nx1 = n01 + u * (n11 - n01);
    return std::clamp(nx0 + v * (nx1 - nx0), -1.0, 1.0);
}

double perlin2(double x, double y, std::int64_t seed) {
    thread_local std::unique_ptr<PerlinNoise> cached;
    if (!cached || cached->seed() != seed) cached = std::make_unique<PerlinNoise>(seed);
    return (*cached)(x, y);
}

}  // namespace svgbench::geometry
