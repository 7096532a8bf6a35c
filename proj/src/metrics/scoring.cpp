#include <charconv>
#include <functional>

#include "json.hpp"
#include "svgbench/error.hpp"
#include "svgbench/metrics.hpp"
#include "svgbench/svg_io.hpp"
#include "svgbench/svg_ops.hpp"
#include "svgbench/svg_repair.hpp"

namespace svgbench::metrics {

const char* status_name(SampleStatus s) {
    switch (s) {
        case SampleStatus::Ok: return "ok";
        case SampleStatus::PredUnparseable: return "pred_unparseable";
        case SampleStatus::GtUnparseable: return "gt_unparseable";
        case SampleStatus::EmptyGeometry: return "empty_geometry";
    }
    return "?";
}

namespace {

// Parse, falling back to repair; nullopt when neither yields a normalizable
// document.
std::optional<svg::SvgDocument> load_normalized(std::string_view text, int size, bool& repaired) {
    repaired = false;
    std::optional<svg::SvgDocument> doc;
    try {
        doc = svg::parse_svg(text);
    } catch (const Error&) {
        try {
            const svg::RepairResult r = svg::repair(text);
            doc = svg::parse_svg(r.text);
            repaired = true;
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    try {
        return svg::normalize(*doc, size);
    } catch (const NoResolvableSize&) {
        return std::nullopt;
    }
}

}  // namespace

SampleScore score_pair(std::string_view pred_svg, std::string_view gt_svg, const raster::RasterImage* gt_img,
                       const MetricConfig& config, std::string id) {
    SampleScore score;
    score.id = std::move(id);
    bool gt_repaired = false;
    const auto gt = load_normalized(gt_svg, config.size, gt_repaired);
    if (!gt) {
        score.status = SampleStatus::GtUnparseable;
        return score;
    }
    const auto pred = load_normalized(pred_svg, config.size, score.pred_repaired);
    if (!pred) {
        score.status = SampleStatus::PredUnparseable;
        return score;
    }

    const raster::RasterImage pred_img = raster::rasterize(*pred, config.size, config.supersample);
    raster::RasterImage own_gt;
    if (!gt_img || gt_img->width() != config.size || gt_img->height() != config.size) {
        own_gt = raster::rasterize(*gt, config.size, config.supersample);
        gt_img = &own_gt;
    }
    score.mse = mse(pred_img, *gt_img);
    score.ssim = ssim(pred_img, *gt_img);
    try {
        score.cd = chamfer(*pred, *gt, config.step);
    } catch (const EmptyGeometry&) {
        score.status = SampleStatus::EmptyGeometry;
    }
    return score;
}

double pairwise_sum(const std::vector<double>& values) {
    std::function<double(std::size_t, std::size_t)> rec = [&](std::size_t lo, std::size_t hi) -> double {
        if (hi - lo <= 8) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += values[i];
            return s;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        return rec(lo, mid) + rec(mid, hi);
    };
    return values.empty() ? 0.0 : rec(0, values.size());
}

MetricReport aggregate(const std::vector<SampleScore>& scores, std::string dataset, const MetricConfig& config) {
    MetricReport report;
    report.dataset = std::move(dataset);
    report.config = config;
    report.samples = scores;
    report.n_total = scores.size();
    std::vector<double> m, s, c;
    for (const auto& sc : scores) {
        if (sc.status != SampleStatus::Ok) continue;
        ++report.n_ok;
        m.push_back(*sc.mse);
        s.push_back(*sc.ssim);
        c.push_back(*sc.cd);
    }
    if (report.n_ok > 0) {
        const double n = static_cast<double>(report.n_ok);
        report.mean_mse = pairwise_sum(m) / n;
        report.mean_ssim = pairwise_sum(s) / n;
        report.mean_cd = pairwise_sum(c) / n;
    }
    return report;
}

namespace {

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::string format_value(const std::optional<double>& v) {
    if (!v) return "";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, *v == 0.0 ? 0.0 : *v);
    return std::string(buf, r.ptr);
}

}  // namespace

std::string report_to_json(const MetricReport& report) {
    nlohmann::json j;
    j["dataset"] = report.dataset;
    j["n_total"] = report.n_total;
    j["n_ok"] = report.n_ok;
    j["mean_mse"] = opt(report.mean_mse);
    j["mean_ssim"] = opt(report.mean_ssim);
    j["mean_cd"] = opt(report.mean_cd);
    j["mean_lpips"] = nullptr;
    j["config"] = {
        {"size", report.config.size},
        {"step", report.config.step},
        {"supersample", report.config.supersample},
        {"renderer", "svgbench-scanline"},
        {"ssim_window", kSsimWindow},
        {"ssim_sigma", kSsimSigma},
        {"ssim_mode", "valid"},
        {"unparseable_policy", "excluded_from_means"},
    };
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : report.samples) {
        samples.push_back({{"id", s.id},
                           {"status", status_name(s.status)},
                           {"mse", opt(s.mse)},
                           {"ssim", opt(s.ssim)},
                           {"cd", opt(s.cd)},
                           {"pred_repaired", s.pred_repaired}});
    }
    j["samples"] = std::move(samples);
    return j.dump(2) + "\n";
}

std::string csv_header() { return "dataset,n_total,n_ok,mse,cd,lpips,ssim\n"; }

std::string csv_row(const MetricReport& report) {
    std::string name = report.dataset;
    if (name.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : name) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        name = quoted + "\"";
    }
    return name + "," + std::to_string(report.n_total) + "," + std::to_string(report.n_ok) + "," +
           format_value(report.mean_mse) + "," + format_value(report.mean_cd) + ",," + format_value(report.mean_ssim) +
           "\n";
}

std::string report_to_csv(const MetricReport& report) { return csv_header() + csv_row(report); }

}  // namespace svgbench::metrics
