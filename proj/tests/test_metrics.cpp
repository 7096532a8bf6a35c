#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "json.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "svgbench/error.hpp"
#include "svgbench/metrics.hpp"
#include "svgbench/svg_io.hpp"
#include "svgbench/svg_ops.hpp"

using namespace svgbench;
using raster::RasterImage;

namespace {

geometry::PointSet points_of(std::vector<geometry::Point> pts) {
    geometry::PointSet s;
    s.points = std::move(pts);
    s.frame = 224;
    return s;
}

RasterImage constant(int w, int h, float v) { return RasterImage(w, h, v); }

const char* kGt =
    "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 24 24\">"
    "<path d=\"M2 2 L22 2 L22 22 Z\" fill=\"#1a73e8\"/>"
    "<circle cx=\"8\" cy=\"16\" r=\"5\" fill=\"#e8710a\"/>"
    "</svg>";

}  // namespace

TEST_CASE("mse examples") {
    CHECK(metrics::mse(constant(4, 4, 0.3f), constant(4, 4, 0.3f)) == 0.0);
    CHECK(metrics::mse(constant(4, 4, 0.0f), constant(4, 4, 1.0f)) == 1.0);
    RasterImage half(2, 2);
    half.set_rgb(0, 0, 0, 0, 0);
    half.set_rgb(0, 1, 0, 0, 0);
    CHECK(metrics::mse(half, constant(2, 2, 1.0f)) == 0.5);
    CHECK_THROWS_AS(metrics::mse(constant(2, 2, 1), constant(2, 3, 1)), DimensionMismatch);
}

TEST_CASE("ssim examples") {
    testgen::Rng rng(5);
    const auto img = testgen::random_image(rng, 20, 17);
    CHECK(metrics::ssim(img, img) == doctest::Approx(1.0).epsilon(1e-9));
    const double c1 = metrics::kSsimC1;
    const double closed = c1 / (1.0 + c1);
    const auto zero = constant(16, 16, 0.0f), one = constant(16, 16, 1.0f);
    CHECK(std::abs(metrics::ssim(zero, one) - closed) < 1e-12);
    CHECK(std::abs(oracle::literal_ssim(zero, one) - closed) < 1e-12);
    CHECK_THROWS_AS(metrics::ssim(constant(10, 20, 1), constant(10, 20, 1)), TooSmall);
    CHECK_THROWS_AS(metrics::ssim(constant(20, 20, 1), constant(20, 21, 1)), DimensionMismatch);

    const auto taps = metrics::ssim_taps();
    CHECK(taps.size() == 11);
    CHECK(std::accumulate(taps.begin(), taps.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(taps[5] / taps[4] == doctest::Approx(std::exp(1.0 / (2 * 1.5 * 1.5))));
}

TEST_CASE("ssim equals the literal per-window formula") {
    testgen::Rng rng(6);
    for (int i = 0; i < 10; ++i) {
        const auto a = testgen::random_image(rng, 32, 32);
        auto b = testgen::coin(rng) ? testgen::random_image(rng, 32, 32) : a;
        for (auto& v : b.data()) v = std::clamp(v + static_cast<float>(testgen::uniform(rng, -0.2, 0.2)), 0.0f, 1.0f);
        const double got = metrics::ssim(a, b);
        CHECK(std::abs(got - oracle::literal_ssim(a, b)) < 1e-9);
        CHECK(got >= -1.0);
        CHECK(got <= 1.0);
    }
    const auto a = testgen::random_image(rng, 40, 23), b = testgen::random_image(rng, 40, 23);
    CHECK(std::abs(metrics::ssim(a, b) - oracle::literal_ssim(a, b)) < 1e-9);
}

TEST_CASE("chamfer examples") {
    CHECK(metrics::chamfer(points_of({{0, 0}}), points_of({{3, 4}})) == 50.0);
    CHECK(metrics::chamfer(points_of({{0, 0}, {1, 0}}), points_of({{0, 0}})) == 0.5);
    CHECK_THROWS_AS(metrics::chamfer(points_of({}), points_of({{0, 0}})), EmptyGeometry);
    CHECK_THROWS_AS(metrics::chamfer(points_of({{0, 0}}), points_of({})), EmptyGeometry);
    const auto doc = svg::normalize(svg::parse_svg(kGt), 224);
    CHECK(metrics::chamfer(doc, doc, 2.0) == 0.0);
}

TEST_CASE("kd-tree nearest neighbour equals brute force") {
    testgen::Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        std::vector<geometry::Point> pts(static_cast<std::size_t>(testgen::uniform_int(rng, 1, 400)));
        const bool clustered = testgen::coin(rng);
        for (auto& p : pts) {
            p = {testgen::uniform(rng, 0, 224), testgen::uniform(rng, 0, 224)};
            if (clustered) p = {std::round(p.x / 16) * 16, std::round(p.y / 32) * 32};
        }
        const metrics::KdTree tree(pts);
        CHECK(tree.size() == pts.size());
        for (int q = 0; q < 50; ++q) {
            const geometry::Point qp{testgen::uniform(rng, -20, 244), testgen::uniform(rng, -20, 244)};
            double best = INFINITY;
            for (const auto& p : pts) best = std::min(best, (p.x - qp.x) * (p.x - qp.x) + (p.y - qp.y) * (p.y - qp.y));
            CHECK(tree.nearest_squared(qp) == best);
        }
    }
    CHECK(std::isinf(metrics::KdTree({}).nearest_squared({0, 0})));
}

TEST_CASE("chamfer properties on documents") {
    testgen::Rng rng(9);
    for (int i = 0; i < 40; ++i) {
        const auto a = testgen::random_drawable_document(rng);
        const auto b = testgen::random_drawable_document(rng);
        auto pa = geometry::sample_points(a, 2.0), pb = geometry::sample_points(b, 2.0);
        if (pa.points.size() > 500) pa.points.resize(500);
        if (pb.points.size() > 500) pb.points.resize(500);
        const double fast = metrics::chamfer(pa, pb);
        const double brute = oracle::brute_chamfer(pa.points, pb.points);
        CHECK(std::abs(fast - brute) <= 1e-9 * std::max(1.0, brute));
        CHECK(std::abs(metrics::chamfer(pb, pa) - fast) <= 1e-9 * std::max(1.0, fast));
        CHECK(metrics::chamfer(a, a, 2.0) == 0.0);
        CHECK(fast >= 0.0);

        // Translating one set beyond the diameter keeps increasing the distance.
        double prev = -1.0;
        for (double t : {500.0, 600.0, 800.0, 1200.0}) {
            auto moved = pb;
            for (auto& p : moved.points) p.x += t;
            const double cd = metrics::chamfer(pa, moved);
            CHECK(cd > prev);
            CHECK(cd > fast);
            prev = cd;
        }
    }
}

TEST_CASE("score_pair taxonomy") {
    const metrics::MetricConfig cfg;
    const auto same = metrics::score_pair(kGt, kGt, nullptr, cfg, "x");
    CHECK(same.status == metrics::SampleStatus::Ok);
    CHECK(same.id == "x");
    CHECK(*same.mse == 0.0);
    CHECK(*same.ssim == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(*same.cd == 0.0);
    CHECK_FALSE(same.pred_repaired);

    const auto garbage = metrics::score_pair("garbage", kGt, nullptr, cfg);
    CHECK(garbage.status == metrics::SampleStatus::PredUnparseable);
    CHECK_FALSE(garbage.mse);
    CHECK_FALSE(garbage.ssim);
    CHECK_FALSE(garbage.cd);

    CHECK(metrics::score_pair(kGt, "<svg", nullptr, cfg).status == metrics::SampleStatus::GtUnparseable);

    // Cut inside the circle element: repair drops it.
    const std::string gt(kGt);
    const auto truncated = gt.substr(0, gt.find("<circle") + 12);
    const auto rep = metrics::score_pair(truncated, kGt, nullptr, cfg);
    CHECK(rep.status == metrics::SampleStatus::Ok);
    CHECK(rep.pred_repaired);
    CHECK(std::isfinite(*rep.mse));
    CHECK(std::isfinite(*rep.ssim));
    CHECK(*rep.cd > 0.0);
    CHECK(*rep.mse > 0.0);

    const auto empty = metrics::score_pair("<svg viewBox=\"0 0 24 24\"></svg>", kGt, nullptr, cfg);
    CHECK(empty.status == metrics::SampleStatus::EmptyGeometry);
    CHECK(empty.mse);
    CHECK(empty.ssim);
    CHECK_FALSE(empty.cd);

    SUBCASE("supplied ground-truth image") {
        const auto gt_img = raster::rasterize(svg::normalize(svg::parse_svg(kGt), 224), 224);
        const auto s = metrics::score_pair(kGt, kGt, &gt_img, cfg);
        CHECK(*s.mse == 0.0);
        const RasterImage white(224, 224);
        const auto w = metrics::score_pair(kGt, kGt, &white, cfg);
        CHECK(*w.mse > 0.0);
        const RasterImage wrong(10, 10);
        CHECK(*metrics::score_pair(kGt, kGt, &wrong, cfg).mse == 0.0);
    }
}

TEST_CASE("aggregate") {
    metrics::SampleScore a, b, bad;
    a.mse = 0.2, a.ssim = 0.9, a.cd = 1.0;
    b.mse = 0.4, b.ssim = 0.7, b.cd = 3.0;
    bad.status = metrics::SampleStatus::PredUnparseable;
    const auto r = metrics::aggregate({a, b}, "d", {});
    CHECK(r.n_total == 2);
    CHECK(*r.mean_mse == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(*r.mean_cd == 2.0);

    const auto e = metrics::aggregate({}, "d", {});
    CHECK(e.n_total == 0);
    CHECK_FALSE(e.mean_mse);
    CHECK_FALSE(e.mean_ssim);
    CHECK_FALSE(e.mean_cd);

    const auto m = metrics::aggregate({a, bad}, "d", {});
    CHECK(m.n_total == 2);
    CHECK(m.n_ok == 1);
    CHECK(*m.mean_mse == 0.2);
    CHECK(*m.mean_ssim == 0.9);

    testgen::Rng rng(2);
    std::vector<metrics::SampleScore> many(1000);
    for (auto& s : many) {
        s.mse = testgen::uniform(rng, 0, 1e-3);
        s.ssim = testgen::uniform(rng, 0.5, 1);
        s.cd = testgen::uniform(rng, 0, 1e4);
    }
    const auto ref = metrics::aggregate(many, "d", {});
    for (int k = 0; k < 5; ++k) {
        std::shuffle(many.begin(), many.end(), rng);
        const auto r2 = metrics::aggregate(many, "d", {});
        CHECK(std::abs(*r2.mean_mse - *ref.mean_mse) <= 1e-12 * *ref.mean_mse);
        CHECK(std::abs(*r2.mean_cd - *ref.mean_cd) <= 1e-12 * *ref.mean_cd);
    }
    CHECK(metrics::pairwise_sum({}) == 0.0);
    CHECK(metrics::pairwise_sum({1, 2, 3, 4, 5}) == 15.0);
}

TEST_CASE("report serialization") {
    metrics::SampleScore a, bad;
    a.id = "a";
    a.mse = 0.25, a.ssim = 0.5, a.cd = 2.0;
    bad.id = "b";
    bad.status = metrics::SampleStatus::PredUnparseable;
    const auto r = metrics::aggregate({a, bad}, "icons", {});
    CHECK(metrics::report_to_csv(r) == "dataset,n_total,n_ok,mse,cd,lpips,ssim\nicons,2,1,0.25,2,,0.5\n");
    CHECK(metrics::csv_row(metrics::aggregate({}, "x,y", {})) == "\"x,y\",0,0,,,,\n");

    const auto j = nlohmann::json::parse(metrics::report_to_json(r));
    CHECK(j["dataset"] == "icons");
    CHECK(j["n_total"] == 2);
    CHECK(j["n_ok"] == 1);
    CHECK(j["mean_mse"] == 0.25);
    CHECK(j["mean_lpips"].is_null());
    CHECK(j["config"]["size"] == 224);
    CHECK(j["config"]["step"] == 2.0);
    CHECK(j["config"]["supersample"] == 4);
    CHECK(j["config"]["ssim_mode"] == "valid");
    CHECK(j["samples"].size() == 2);
    CHECK(j["samples"][1]["status"] == "pred_unparseable");
    CHECK(j["samples"][1]["mse"].is_null());
}
