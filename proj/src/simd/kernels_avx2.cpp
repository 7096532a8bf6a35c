// Built with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "svgbench/simd.hpp"

namespace svgbench::simd::avx2 {

namespace {

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_squared_diff(const float* a, const float* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 va = _mm256_loadu_ps(a + i);
        const __m256 vb = _mm256_loadu_ps(b + i);
        const __m256d d0 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(va)),
                                         _mm256_cvtps_pd(_mm256_castps256_ps128(vb)));
        const __m256d d1 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(va, 1)),
                                         _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1)));
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        s += d * d;
    }
    return s;
}

void blend_coverage(float* plane, const float* coverage, float color, std::size_t n) {
    const __m256 c = _mm256_set1_ps(color);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 p = _mm256_loadu_ps(plane + i);
        const __m256 a = _mm256_loadu_ps(coverage + i);
        _mm256_storeu_ps(plane + i, _mm256_add_ps(p, _mm256_mul_ps(a, _mm256_sub_ps(c, p))));
    }
    for (; i < n; ++i) plane[i] += coverage[i] * (color - plane[i]);
}

void filter_row(const double* src, std::size_t n_out, const double* taps, std::size_t n_taps, double* dst) {
    std::size_t i = 0;
    for (; i + 4 <= n_out; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < n_taps; ++k)
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(taps[k]), _mm256_loadu_pd(src + i + k)));
        _mm256_storeu_pd(dst + i, acc);
    }
    for (; i < n_out; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < n_taps; ++k) s += taps[k] * src[i + k];
        dst[i] = s;
    }
}

void filter_columns(const double* src, std::size_t stride, std::size_t width, const double* taps,
                    std::size_t n_taps, double* dst) {
    std::size_t x = 0;
    for (; x + 4 <= width; x += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < n_taps; ++k)
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(taps[k]), _mm256_loadu_pd(src + k * stride + x)));
        _mm256_storeu_pd(dst + x, acc);
    }
    for (; x < width; ++x) {
        double s = 0.0;
        for (std::size_t k = 0; k < n_taps; ++k) s += taps[k] * src[k * stride + x];
        dst[x] = s;
    }
}

double ssim_map_sum(const double* mu_x, const double* mu_y, const double* e_xx, const double* e_yy,
                    const double* e_xy, std::size_t n, double c1, double c2) {
    const __m256d vc1 = _mm256_set1_pd(c1);
    const __m256d vc2 = _mm256_set1_pd(c2);
    const __m256d two = _mm256_set1_pd(2.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d mx = _mm256_loadu_pd(mu_x + i);
        const __m256d my = _mm256_loadu_pd(mu_y + i);
        const __m256d mxx = _mm256_mul_pd(mx, mx);
        const __m256d myy = _mm256_mul_pd(my, my);
        const __m256d mxy = _mm256_mul_pd(mx, my);
        const __m256d vx = _mm256_sub_pd(_mm256_loadu_pd(e_xx + i), mxx);
        const __m256d vy = _mm256_sub_pd(_mm256_loadu_pd(e_yy + i), myy);
        const __m256d cov = _mm256_sub_pd(_mm256_loadu_pd(e_xy + i), mxy);
        const __m256d num = _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(two, mxy), vc1),
                                          _mm256_add_pd(_mm256_mul_pd(two, cov), vc2));
        const __m256d den = _mm256_mul_pd(_mm256_add_pd(_mm256_add_pd(mxx, myy), vc1),
                                          _mm256_add_pd(_mm256_add_pd(vx, vy), vc2));
        acc = _mm256_add_pd(acc, _mm256_div_pd(num, den));
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double mx = mu_x[i], my = mu_y[i];
        const double vx = e_xx[i] - mx * mx;
        const double vy = e_yy[i] - my * my;
        const double cov = e_xy[i] - mx * my;
        total += ((2.0 * mx * my + c1) * (2.0 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
    return total;
}

double min_squared_distance(double qx, double qy, const double* xs, const double* ys, std::size_t n) {
    const __m256d vx = _mm256_set1_pd(qx);
    const __m256d vy = _mm256_set1_pd(qy);
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
        best = _mm256_min_pd(best, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double out = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
    for (; i < n; ++i) {
        const double dx = xs[i] - qx;
        const double dy = ys[i] - qy;
        const double d = dx * dx + dy * dy;
        if (d < out) out = d;
    }
    return out;
}

}  // namespace

const KernelTable table{
    sum_squared_diff, blend_coverage, filter_row, filter_columns, ssim_map_sum, min_squared_distance,
};

}  // namespace svgbench::simd::avx2
