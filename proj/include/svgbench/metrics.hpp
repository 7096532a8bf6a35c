#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svgbench/document_geometry.hpp"
#include "svgbench/raster.hpp"
#include "svgbench/svg_document.hpp"

namespace svgbench::metrics {

// Mean of (a - b)^2 over every pixel and channel. Throws DimensionMismatch.
double mse(const raster::RasterImage& a, const raster::RasterImage& b);

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimC1 = 0.01 * 0.01;
inline constexpr double kSsimC2 = 0.03 * 0.03;

// Luma SSIM with an 11x11 Gaussian window (sigma 1.5), averaged over
// valid windows only. Throws DimensionMismatch or TooSmall.
double ssim(const raster::RasterImage& a, const raster::RasterImage& b);

// Normalized 1-d Gaussian taps of the SSIM window.
std::vector<double> ssim_taps();

// 0.299 R + 0.587 G + 0.114 B per pixel, row-major.
std::vector<double> luma(const raster::RasterImage& img);

// Exact nearest-neighbour queries over a fixed 2-d point set.
class KdTree {
public:
    explicit KdTree(const std::vector<geometry::Point>& points);

    // Squared distance to the nearest indexed point; +inf when empty.
    double nearest_squared(geometry::Point q) const;
    std::size_t size() const { return xs_.size(); }

private:
    struct Node {
        double split = 0.0;
        int axis = -1;  // -1 for leaves
        std::uint32_t left = 0, right = 0;
        std::uint32_t begin = 0, end = 0;  // leaf range into xs_/ys_
        double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    };

    std::uint32_t build(std::vector<geometry::Point>& pts, std::uint32_t begin, std::uint32_t end);
    void search(std::uint32_t node, geometry::Point q, double& best) const;

    std::vector<Node> nodes_;
    std::vector<double> xs_, ys_;  // leaf-contiguous
};

// (1/|A|) sum_a min_b |a-b|^2 + (1/|B|) sum_b min_a |a-b|^2.
// Throws EmptyGeometry when either set is empty.
double chamfer(const geometry::PointSet& a, const geometry::PointSet& b);
double chamfer(const svg::SvgDocument& a, const svg::SvgDocument& b, double step);

struct MetricConfig {
    int size = 224;
    double step = 2.0;
    int supersample = raster::kDefaultSupersample;
};

enum class SampleStatus { Ok, PredUnparseable, GtUnparseable, EmptyGeometry };

const char* status_name(SampleStatus s);

struct SampleScore {
    std::string id;
    std::optional<double> mse;
    std::optional<double> ssim;
    std::optional<double> cd;
    SampleStatus status = SampleStatus::Ok;
    bool pred_repaired = false;
};

// Parses (repairing when needed) and normalizes both documents to the
// configured frame, then scores pred against gt. A supplied gt image of the
// wrong size is ignored in favour of rasterizing the ground truth.
// Never throws: failures land in status.
SampleScore score_pair(std::string_view pred_svg, std::string_view gt_svg, const raster::RasterImage* gt_img,
                       const MetricConfig& config, std::string id = {});

struct MetricReport {
    std::string dataset;
    std::size_t n_total = 0;
    std::size_t n_ok = 0;
    std::optional<double> mean_mse;
    std::optional<double> mean_ssim;
    std::optional<double> mean_cd;
    MetricConfig config;
    std::vector<SampleScore> samples;
};

// Means over Ok samples, compensated by pairwise summation.
MetricReport aggregate(const std::vector<SampleScore>& scores, std::string dataset, const MetricConfig& config);

double pairwise_sum(const std::vector<double>& values);

std::string report_to_json(const MetricReport& report);
// Header plus one row: dataset,n_total,n_ok,mse,cd,lpips,ssim (lpips empty).
std::string report_to_csv(const MetricReport& report);
std::string csv_header();
std::string csv_row(const MetricReport& report);

}  // namespace svgbench::metrics
