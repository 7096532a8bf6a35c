#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "svgbench/error.hpp"
#include "svgbench/metrics.hpp"
#include "svgbench/svg_io.hpp"
#include "svgbench/svg_ops.hpp"
#include "svgbench/svg_repair.hpp"
#include "svgbench/vectorize.hpp"

using namespace svgbench;
using raster::RasterImage;
using vectorize::BinaryMask;
using vectorize::Contour;
using vectorize::Point;

namespace {

std::vector<int> component_sizes(const RasterImage& img) {
    const int w = img.width(), h = img.height();
    auto same = [&](int a, int b) {
        for (int c = 0; c < 3; ++c)
            if (img.at(a % w, a / w, c) != img.at(b % w, b / w, c)) return false;
        return true;
    };
    std::vector<int> seen(static_cast<std::size_t>(w) * h, 0), sizes;
    for (int s = 0; s < w * h; ++s) {
        if (seen[s]) continue;
        int n = 0;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            const int p = q.front();
            q.pop();
            ++n;
            const int x = p % w, y = p / w;
            const int nb[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
            for (const auto& v : nb) {
                if (v[0] < 0 || v[1] < 0 || v[0] >= w || v[1] >= h) continue;
                const int k = v[1] * w + v[0];
                if (!seen[k] && same(s, k)) {
                    seen[k] = 1;
                    q.push(k);
                }
            }
        }
        sizes.push_back(n);
    }
    return sizes;
}

BinaryMask random_mask(testgen::Rng& rng, int w, int h, double p) {
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) m.set(x, y, testgen::coin(rng, p));
    return m;
}

std::vector<std::uint8_t> refill(const std::vector<Contour>& contours, int w, int h) {
    std::vector<std::vector<Point>> loops;
    for (const auto& c : contours) loops.push_back(c.points);
    const auto fill = oracle::even_odd_fill(loops, w, h);
    return {fill.begin(), fill.end()};
}

// Dense samples of a fitted path.
std::vector<Point> path_samples(const svg::Path& path) {
    std::vector<Point> out;
    Point cur, start;
    for (const auto& c : path) {
        if (c.op == svg::PathOp::MoveTo) {
            cur = start = {c.args[0], c.args[1]};
            out.push_back(cur);
        } else if (c.op == svg::PathOp::LineTo || c.op == svg::PathOp::ClosePath) {
            const Point p = c.op == svg::PathOp::LineTo ? Point{c.args[0], c.args[1]} : start;
            for (int i = 1; i <= 200; ++i) out.push_back(cur + (p - cur) * (i / 200.0));
            cur = p;
        } else if (c.op == svg::PathOp::CubicTo) {
            const Point p1{c.args[0], c.args[1]}, p2{c.args[2], c.args[3]}, p3{c.args[4], c.args[5]};
            for (int i = 1; i <= 400; ++i) {
                const double t = i / 400.0, u = 1 - t;
                out.push_back(cur * (u * u * u) + p1 * (3 * u * u * t) + p2 * (3 * u * t * t) + p3 * (t * t * t));
            }
            cur = p3;
        }
    }
    return out;
}

double max_vertex_error(const Contour& poly, const svg::Path& path) {
    const auto samples = path_samples(path);
    double worst = 0.0;
    for (const auto& v : poly.points) worst = std::max(worst, oracle::distance_to_polyline(v, samples));
    return worst;
}

int count_op(const svg::Path& path, svg::PathOp op) {
    return static_cast<int>(std::count_if(path.begin(), path.end(), [&](const auto& c) { return c.op == op; }));
}

RasterImage blocky_image(testgen::Rng& rng, int w, int h, int block) {
    RasterImage img(w, h);
    const std::array<std::array<float, 3>, 4> palette{{{1, 1, 1}, {0, 0, 0}, {0.8f, 0.1f, 0.1f}, {0.1f, 0.3f, 0.9f}}};
    for (int by = 0; by < h; by += block)
        for (int bx = 0; bx < w; bx += block) {
            const auto& c = palette[static_cast<std::size_t>(testgen::uniform_int(rng, 0, 3))];
            for (int y = by; y < std::min(h, by + block); ++y)
                for (int x = bx; x < std::min(w, bx + block); ++x) img.set_rgb(x, y, c[0], c[1], c[2]);
        }
    return img;
}

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::filesystem::path> corpus() {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(SVGBENCH_TEST_DATA) / "icons"))
        if (e.path().extension() == ".svg") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

TEST_CASE("quantize examples") {
    const vectorize::VectorizeConfig cfg;
    const auto black = vectorize::quantize_colors(RasterImage(8, 8, 0.0f), cfg);
    REQUIRE(black.size() == 1);
    CHECK(black[0].color == svg::Rgb{0, 0, 0});
    CHECK(black[0].mask.count() == 64);

    RasterImage split(8, 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) x < 4 ? split.set_rgb(x, y, 1, 0, 0) : split.set_rgb(x, y, 0, 0, 1);
    const auto two = vectorize::quantize_colors(split, cfg);
    REQUIRE(two.size() == 2);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) CHECK(two[0].mask.at(x, y) != two[1].mask.at(x, y));
    CHECK(two[0].mask.at(0, 0) ? two[0].color == svg::Rgb{255, 0, 0} : two[0].color == svg::Rgb{0, 0, 255});

    testgen::Rng rng(3);
    RasterImage speckle(64, 64);
    for (int i = 0; i < 100; ++i) speckle.set_rgb(testgen::uniform_int(rng, 0, 63), testgen::uniform_int(rng, 0, 63), 0, 0, 0);
    const auto sizes = component_sizes(speckle);
    std::size_t black_components = sizes.size() - 1;
    CHECK(black_components > 50);
    // Everything except the white background is below the merge threshold.
    CHECK(std::count_if(sizes.begin(), sizes.end(), [](int s) { return s >= 16; }) == 1);
    const auto merged = vectorize::quantize_colors(speckle, cfg);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].color == svg::Rgb{255, 255, 255});
}

TEST_CASE("layer invariants") {
    testgen::Rng rng(4);
    for (int t = 0; t < 20; ++t) {
        const auto img = testgen::coin(rng) ? blocky_image(rng, 40, 30, testgen::uniform_int(rng, 2, 8))
                                            : testgen::random_image(rng, 24, 24);
        vectorize::VectorizeConfig cfg;
        cfg.min_region_px = testgen::uniform_int(rng, 1, 20);
        const auto layers = vectorize::quantize_colors(img, cfg);
        REQUIRE(!layers.empty());
        std::vector<int> owner(static_cast<std::size_t>(img.width()) * img.height(), 0);
        for (std::size_t i = 0; i < layers.size(); ++i) {
            CHECK(layers[i].rank == static_cast<int>(i));
            CHECK(layers[i].mask.width == img.width());
            CHECK(layers[i].mask.height == img.height());
            CHECK(layers[i].area == layers[i].mask.count());
            if (i > 0) CHECK(layers[i].area <= layers[i - 1].area);
            for (std::size_t k = 0; k < owner.size(); ++k) owner[k] += layers[i].mask.bits[k];
        }
        for (int o : owner) CHECK(o == 1);
    }
}

TEST_CASE("trace examples") {
    BinaryMask one(3, 3);
    one.set(0, 0);
    auto c = vectorize::trace_contours(one);
    REQUIRE(c.size() == 1);
    CHECK(c[0].points == std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK_FALSE(c[0].is_hole);

    BinaryMask ring(3, 3);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) ring.set(x, y, !(x == 1 && y == 1));
    c = vectorize::trace_contours(ring);
    REQUIRE(c.size() == 2);
    const auto& outer = c[0].is_hole ? c[1] : c[0];
    const auto& hole = c[0].is_hole ? c[0] : c[1];
    CHECK(outer.points.size() == 4);
    CHECK(hole.points.size() == 4);
    CHECK(hole.is_hole);
    CHECK(vectorize::signed_area(outer.points) == 9.0);
    CHECK(vectorize::signed_area(hole.points) == -1.0);

    CHECK_THROWS_AS(vectorize::trace_contours(BinaryMask(4, 4)), EmptyMask);

    BinaryMask diag(2, 2);
    diag.set(0, 0);
    diag.set(1, 1);
    CHECK(vectorize::trace_contours(diag).size() == 2);
}

TEST_CASE("traced contours refill the mask exactly") {
    testgen::Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const auto mask = random_mask(rng, 32, 32, testgen::uniform(rng, 0.1, 0.9));
        if (mask.count() == 0) continue;
        const auto contours = vectorize::trace_contours(mask);
        CHECK(refill(contours, 32, 32) == mask.bits);
        for (const auto& c : contours) {
            CHECK(c.points.size() >= 4);
            CHECK((vectorize::signed_area(c.points) < 0) == c.is_hole);
            for (std::size_t i = 0; i < c.points.size(); ++i) {
                const auto& a = c.points[i];
                const auto& b = c.points[(i + 1) % c.points.size()];
                CHECK(a.x == std::round(a.x));
                CHECK(a.y == std::round(a.y));
                CHECK(((a.x == b.x) != (a.y == b.y)));
            }
        }
    }
}

TEST_CASE("simplify examples") {
    Contour sq{{{0, 0}, {2, 0}, {4, 0}, {4, 2}, {4, 4}, {2, 4}, {0, 4}, {0, 2}}, false};
    auto s = vectorize::simplify_polygon(sq, 0.0);
    CHECK(s.points.size() == 4);
    CHECK(std::abs(vectorize::signed_area(s.points)) == 16.0);

    Contour bent{{{0, 0}, {4, 0}, {4, 4}, {2, 4.01}, {0, 4}}, false};
    CHECK(vectorize::simplify_polygon(bent, 0.0).points.size() == 5);

    Contour tri{{{0, 0}, {10, 0}, {5, 1}}, false};
    for (double eps : {0.0, 1.0, 100.0}) CHECK(vectorize::simplify_polygon(tri, eps).points == tri.points);

    // Staircase: a right triangle of unit steps.
    BinaryMask stairs(16, 16);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x <= y; ++x) stairs.set(x, y);
    const auto traced = vectorize::trace_contours(stairs);
    REQUIRE(traced.size() == 1);
    const auto simple = vectorize::simplify_polygon(traced[0], 0.8);
    CHECK(simple.points.size() <= 4);
    CHECK(simple.points.size() >= 3);
    auto closed = simple.points;
    closed.push_back(closed.front());
    for (const auto& p : traced[0].points) CHECK(oracle::distance_to_polyline(p, closed) <= 0.8 + 1e-12);
}

TEST_CASE("simplification keeps discarded points within epsilon") {
    testgen::Rng rng(6);
    for (int t = 0; t < 100; ++t) {
        const auto mask = random_mask(rng, 24, 24, 0.6);
        if (mask.count() == 0) continue;
        const double eps = testgen::uniform(rng, 0, 3);
        for (const auto& c : vectorize::trace_contours(mask)) {
            const auto s = vectorize::simplify_polygon(c, eps);
            CHECK(s.points.size() >= 3);
            CHECK(s.is_hole == c.is_hole);
            auto closed = s.points;
            closed.push_back(closed.front());
            for (const auto& p : c.points) CHECK(oracle::distance_to_polyline(p, closed) <= eps + 1e-9);
        }
    }
}

TEST_CASE("bezier fitting examples") {
    const vectorize::VectorizeConfig cfg;
    const auto sq = vectorize::fit_beziers(Contour{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}, false}, cfg);
    CHECK(sq.front().op == svg::PathOp::MoveTo);
    CHECK(sq.back().op == svg::PathOp::ClosePath);
    CHECK(count_op(sq, svg::PathOp::LineTo) == 4);
    CHECK(count_op(sq, svg::PathOp::CubicTo) == 0);

    Contour runs{{}, false};
    for (int i = 0; i < 10; ++i) runs.points.push_back({i * 2.0, 0});
    for (int i = 0; i < 10; ++i) runs.points.push_back({20, i * 2.0});
    for (int i = 0; i < 10; ++i) runs.points.push_back({20 - i * 2.0, 20});
    for (int i = 0; i < 10; ++i) runs.points.push_back({0, 20 - i * 2.0});
    const auto lines = vectorize::fit_beziers(runs, cfg);
    CHECK(count_op(lines, svg::PathOp::LineTo) == 4);
    CHECK(count_op(lines, svg::PathOp::CubicTo) == 0);

    Contour circle{{}, false};
    for (int i = 0; i < 64; ++i) {
        const double a = 2 * M_PI * i / 64;
        circle.points.push_back({100 + 50 * std::cos(a), 100 + 50 * std::sin(a)});
    }
    const auto fit = vectorize::fit_beziers(circle, cfg);
    CHECK(count_op(fit, svg::PathOp::CubicTo) <= 8);
    CHECK(count_op(fit, svg::PathOp::CubicTo) >= 2);
    CHECK(max_vertex_error(circle, fit) <= 2.0);
}

TEST_CASE("fitted paths stay within the error bound") {
    testgen::Rng rng(7);
    for (int t = 0; t < 60; ++t) {
        const auto mask = random_mask(rng, 48, 48, 0.7);
        vectorize::VectorizeConfig cfg;
        cfg.fit_error = testgen::uniform(rng, 0.5, 6);
        cfg.corner_angle_deg = testgen::uniform(rng, 20, 120);
        for (const auto& c : vectorize::trace_contours(mask)) {
            const auto poly = vectorize::simplify_polygon(c, 1.0);
            const auto path = vectorize::fit_beziers(poly, cfg);
            CHECK(max_vertex_error(poly, path) <= std::sqrt(cfg.fit_error) + 1e-3);
        }
    }
    Contour smooth{{}, false};
    for (int i = 0; i < 90; ++i) {
        const double a = 2 * M_PI * i / 90;
        smooth.points.push_back({100 + 70 * std::cos(a) + 8 * std::cos(3 * a), 100 + 40 * std::sin(a)});
    }
    for (double err : {0.25, 1.0, 4.0}) {
        vectorize::VectorizeConfig cfg;
        cfg.fit_error = err;
        CHECK(max_vertex_error(smooth, vectorize::fit_beziers(smooth, cfg)) <= std::sqrt(err) + 1e-3);
    }
}

TEST_CASE("pre-fitting polygons reproduce the quantized layers") {
    testgen::Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        const auto img = blocky_image(rng, 48, 48, testgen::uniform_int(rng, 4, 10));
        const auto layers = vectorize::quantize_colors(img, {});
        for (const auto& layer : layers) {
            std::vector<std::vector<Point>> loops;
            for (const auto& c : vectorize::trace_contours(layer.mask)) loops.push_back(c.points);
            const auto cov = raster::polygon_coverage(loops, svg::FillRule::EvenOdd, 48, 1);
            // Unit viewBox-to-pixel mapping: pixel-center sampling is exact.
            for (std::size_t k = 0; k < cov.size(); ++k) CHECK(cov[k] == static_cast<float>(layer.mask.bits[k]));
        }
    }
}

TEST_CASE("vectorize examples") {
    const auto white = RasterImage(32, 32);
    const auto wdoc = vectorize::vectorize(white);
    CHECK(wdoc.root.size() <= 1);
    CHECK(metrics::mse(raster::rasterize(wdoc, 32), white) == 0.0);

    RasterImage sq(32, 32);
    for (int y = 8; y < 24; ++y)
        for (int x = 8; x < 24; ++x) sq.set_rgb(x, y, 0, 0, 0);
    const auto doc = vectorize::vectorize(sq);
    REQUIRE(doc.root.size() == 1);
    CHECK(doc.root[0].paint.fill == svg::Rgb{0, 0, 0});
    CHECK(doc.root[0].paint.fill_rule == svg::FillRule::EvenOdd);
    CHECK(doc.view_box == svg::ViewBox{0, 0, 32, 32});
    CHECK(metrics::mse(raster::rasterize(doc, 32), sq) <= 0.005);

    testgen::Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        const auto img = t % 2 ? testgen::random_image(rng, 20, 20) : blocky_image(rng, 40, 40, 5);
        const auto out = vectorize::vectorize(img);
        const auto text = svg::serialize(out);
        CHECK(svg::validate(text).compilable);
        CHECK_NOTHROW(raster::rasterize(svg::normalize(svg::parse_svg(text), 224), 224));
    }

    vectorize::VectorizeConfig bad;
    bad.color_precision = 9;
    CHECK_THROWS_AS(vectorize::validate_config(bad), std::invalid_argument);
    bad = {};
    bad.min_region_px = 0;
    CHECK_THROWS_AS(vectorize::validate_config(bad), std::invalid_argument);
}

TEST_CASE("icon corpus fidelity") {
    const auto files = corpus();
    REQUIRE(files.size() == 16);
    vectorize::VectorizeConfig coarse, medium, fine;
    coarse.simplify_epsilon = 2.0, coarse.fit_error = 9.0;
    fine.simplify_epsilon = 0.5, fine.fit_error = 1.0;
    double sum_mse[3] = {0, 0, 0};
    for (const auto& f : files) {
        CAPTURE(f.filename().string());
        const auto gt = svg::normalize(svg::parse_svg(read_text(f)), 224);
        const auto img = raster::rasterize(gt, 224);
        int level = 0;
        for (const auto* cfg : {&coarse, &medium, &fine}) {
            const auto doc = vectorize::vectorize(img, *cfg);
            const double m = metrics::mse(raster::rasterize(doc, 224), img);
            sum_mse[level++] += m;
            if (cfg == &medium) {
                CHECK(m <= 0.02);
                CHECK(metrics::chamfer(svg::normalize(doc, 224), gt, 2.0) <= 5.0);
            }
        }
    }
    MESSAGE("mean mse coarse/default/fine: " << sum_mse[0] / 16 << " " << sum_mse[1] / 16 << " " << sum_mse[2] / 16);
    CHECK(sum_mse[1] <= sum_mse[0]);
    CHECK(sum_mse[2] <= sum_mse[1]);
}
