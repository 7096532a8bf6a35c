#include <cmath>
#include <string>

#include "svgbench/error.hpp"
#include "svgbench/metrics.hpp"
#include "svgbench/simd.hpp"

namespace svgbench::metrics {

namespace {

void check_same_size(const raster::RasterImage& a, const raster::RasterImage& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw DimensionMismatch("image sizes differ: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                                " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
}

}  // namespace

double mse(const raster::RasterImage& a, const raster::RasterImage& b) {
    check_same_size(a, b);
    const std::size_t n = a.data().size();
    if (n == 0) return 0.0;
    return simd::kernels().sum_squared_diff(a.data().data(), b.data().data(), n) / static_cast<double>(n);
}

std::vector<double> ssim_taps() {
    std::vector<double> taps(kSsimWindow);
    const int half = kSsimWindow / 2;
    double total = 0.0;
    for (int i = 0; i < kSsimWindow; ++i) {
        const double d = i - half;
        taps[i] = std::exp(-(d * d) / (2.0 * kSsimSigma * kSsimSigma));
        total += taps[i];
    }
    for (double& t : taps) t /= total;
    return taps;
}

std::vector<double> luma(const raster::RasterImage& img) {
    const auto px = img.data();
    std::vector<double> out(static_cast<std::size_t>(img.width()) * img.height());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.299 * px[i * 3] + 0.587 * px[i * 3 + 1] + 0.114 * px[i * 3 + 2];
    return out;
}

double ssim(const raster::RasterImage& a, const raster::RasterImage& b) {
    check_same_size(a, b);
    if (a.width() < kSsimWindow || a.height() < kSsimWindow)
        throw TooSmall("SSIM needs images of at least " + std::to_string(kSsimWindow) + " pixels per side");

    const auto& k = simd::kernels();
    const std::vector<double> taps = ssim_taps();
    const std::size_t w = static_cast<std::size_t>(a.width());
    const std::size_t h = static_cast<std::size_t>(a.height());
    const std::size_t n_taps = taps.size();
    const std::size_t ow = w - n_taps + 1;
    const std::size_t oh = h - n_taps + 1;

    const std::vector<double> x = luma(a);
    const std::vector<double> y = luma(b);
    std::vector<double> planes[5];
    for (auto& p : planes) p.resize(w * h);
    for (std::size_t i = 0; i < w * h; ++i) {
        planes[0][i] = x[i];
        planes[1][i] = y[i];
        planes[2][i] = x[i] * x[i];
        planes[3][i] = y[i] * y[i];
        planes[4][i] = x[i] * y[i];
    }

    std::vector<double> filtered[5];
    std::vector<double> rows(ow * h);
    for (int p = 0; p < 5; ++p) {
        for (std::size_t r = 0; r < h; ++r) k.filter_row(&planes[p][r * w], ow, taps.data(), n_taps, &rows[r * ow]);
        filtered[p].resize(ow * oh);
        for (std::size_t r = 0; r < oh; ++r)
            k.filter_columns(&rows[r * ow], ow, ow, taps.data(), n_taps, &filtered[p][r * ow]);
    }
    const double total = k.ssim_map_sum(filtered[0].data(), filtered[1].data(), filtered[2].data(), filtered[3].data(),
                                        filtered[4].data(), ow * oh, kSsimC1, kSsimC2);
    return total / static_cast<double>(ow * oh);
}

}  // namespace svgbench::metrics
