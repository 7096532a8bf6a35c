#pragma once

#include <array>
#include <cstdint>

namespace svgbench::geometry {

// Classic 2D gradient noise on the integer lattice with a seeded 256-entry
// permutation table and quintic fade. Zero at lattice points, |value| <= 1.
class PerlinNoise {
public:
    explicit PerlinNoise(std::int64_t seed);

    double operator()(double x, double y) const;
    std::int64_t seed() const { return seed_; }

private:
    std::int64_t seed_;
    std::array<std::uint8_t, 512> perm_{};
};

// Convenience wrapper; caches the permutation table of the last seed per thread.
double perlin2(double x, double y, std::int64_t seed);

}  // namespace svgbench::geometry
