#include <algorithm>
#include <atomic>
#include <thread>

#include "svgbench/bench.hpp"
#include "svgbench/error.hpp"
#include "svgbench/image_io.hpp"

namespace svgbench::bench {

namespace fs = std::filesystem;

namespace {

metrics::SampleScore score_entry(const ManifestEntry& e, const fs::path& pred_dir, const fs::path& manifest_dir,
                                 const metrics::MetricConfig& config) {
    metrics::SampleScore unscored;
    unscored.id = e.id;
    std::string gt;
    try {
        gt = raster::read_file(resolve_path(e.svg_path, manifest_dir));
    } catch (const std::runtime_error&) {
        unscored.status = metrics::SampleStatus::GtUnparseable;
        return unscored;
    }
    std::string pred;
    try {
        pred = raster::read_file(pred_dir / (e.id + ".svg"));
    } catch (const std::runtime_error&) {
        unscored.status = metrics::SampleStatus::PredUnparseable;
        return unscored;
    }
    std::optional<raster::RasterImage> gt_img;
    if (e.png_path) {
        try {
            gt_img = raster::load_image(resolve_path(*e.png_path, manifest_dir));
        } catch (const std::runtime_error&) {
            gt_img.reset();  // fall back to rasterizing the ground truth
        }
    }
    return metrics::score_pair(pred, gt, gt_img ? &*gt_img : nullptr, config, e.id);
}

}  // namespace

metrics::MetricReport run_eval(const fs::path& pred_dir, const fs::path& manifest, const EvalConfig& config) {
    const std::vector<ManifestEntry> entries = read_manifest(manifest);
    std::vector<const ManifestEntry*> selected;
    for (const auto& e : entries)
        if (e.split == Split::Test || e.split == Split::TestSim) selected.push_back(&e);
    if (selected.empty())
        for (const auto& e : entries) selected.push_back(&e);
    std::sort(selected.begin(), selected.end(), [](const ManifestEntry* a, const ManifestEntry* b) { return a->id < b->id; });

    const fs::path manifest_dir = manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");
    std::vector<metrics::SampleScore> scores(selected.size());
    unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, selected.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < selected.size(); i = next++)
            scores[i] = score_entry(*selected[i], pred_dir, manifest_dir, config.metrics);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    return metrics::aggregate(scores, manifest.stem().string(), config.metrics);
}

}  // namespace svgbench::bench
