#pragma once

#include <cstddef>

// Data-parallel inner loops shared by the rasterizer and the metrics. Every
// kernel has a scalar reference and, on x86-64, an AVX2 variant; the active
// table is picked at startup from CPUID (override with SVGBENCH_ISA=scalar).
namespace svgbench::simd {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
Isa detected_isa();
Isa active_isa();
// Throws std::invalid_argument when the ISA is not supported by this CPU/build.
void set_active_isa(Isa isa);

struct KernelTable {
    // sum_i (a[i] - b[i])^2, accumulated in double.
    double (*sum_squared_diff)(const float* a, const float* b, std::size_t n);
    // plane[i] += coverage[i] * (color - plane[i]); coverage in [0, 1].
    void (*blend_coverage)(float* plane, const float* coverage, float color, std::size_t n);
    // dst[i] = sum_k taps[k] * src[i + k] for i < n_out.
    void (*filter_row)(const double* src, std::size_t n_out, const double* taps, std::size_t n_taps, double* dst);
    // dst[x] = sum_k taps[k] * src[k * stride + x] for x < width.
    void (*filter_columns)(const double* src, std::size_t stride, std::size_t width, const double* taps,
                           std::size_t n_taps, double* dst);
    // Sum over i of the SSIM index computed from local moments.
    double (*ssim_map_sum)(const double* mu_x, const double* mu_y, const double* e_xx, const double* e_yy,
                           const double* e_xy, std::size_t n, double c1, double c2);
    // min_i (xs[i] - qx)^2 + (ys[i] - qy)^2; +inf for n == 0.
    double (*min_squared_distance)(double qx, double qy, const double* xs, const double* ys, std::size_t n);
};

const KernelTable& kernels();
const KernelTable& kernels(Isa isa);

namespace scalar {
extern const KernelTable table;
}
namespace avx2 {
// Null function pointers when the build has no AVX2 support.
extern const KernelTable table;
}

}  // namespace svgbench::simd
