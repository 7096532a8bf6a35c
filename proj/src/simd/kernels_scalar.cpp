#include <limits>

#include "svgbench/simd.hpp"

namespace svgbench::simd::scalar {

namespace {

double sum_squared_diff(const float* a, const float* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        s += d * d;
    }
    return s;
}

void blend_coverage(float* plane, const float* coverage, float color, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) plane[i] += coverage[i] * (color - plane[i]);
}

void filter_row(const double* src, std::size_t n_out, const double* taps, std::size_t n_taps, double* dst) {
    for (std::size_t i = 0; i < n_out; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < n_taps; ++k) s += taps[k] * src[i + k];
        dst[i] = s;
    }
}

void filter_columns(const double* src, std::size_t stride, std::size_t width, const double* taps,
                    std::size_t n_taps, double* dst) {
    for (std::size_t x = 0; x < width; ++x) {
        double s = 0.0;
        for (std::size_t k = 0; k < n_taps; ++k) s += taps[k] * src[k * stride + x];
        dst[x] = s;
    }
}

double ssim_map_sum(const double* mu_x, const double* mu_y, const double* e_xx, const double* e_yy,
                    const double* e_xy, std::size_t n, double c1, double c2) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mx = mu_x[i], my = mu_y[i];
        const double vx = e_xx[i] - mx * mx;
        const double vy = e_yy[i] - my * my;
        const double cov = e_xy[i] - mx * my;
        const double num = (2.0 * mx * my + c1) * (2.0 * cov + c2);
        const double den = (mx * mx + my * my + c1) * (vx + vy + c2);
        total += num / den;
    }
    return total;
}

double min_squared_distance(double qx, double qy, const double* xs, const double* ys, std::size_t n) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - qx;
        const double dy = ys[i] - qy;
        const double d = dx * dx + dy * dy;
        if (d < best) best = d;
    }
    return best;
}

}  // namespace

const KernelTable table{
    sum_squared_diff, blend_coverage, filter_row, filter_columns, ssim_map_sum, min_squared_distance,
};

}  // namespace svgbench::simd::scalar
