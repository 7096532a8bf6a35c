// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "svgbench/augment.hpp"
#include "svgbench/bench.hpp"
#include "svgbench/document_geometry.hpp"
#include "svgbench/metrics.hpp"
#include "svgbench/path_data.hpp"
#include "svgbench/raster.hpp"
#include "svgbench/svg_io.hpp"
#include "svgbench/svg_ops.hpp"
#include "svgbench/svg_repair.hpp"
#include "svgbench/vectorize.hpp"

using namespace svgbench;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) detail << "failed: " << what << "; ";
        pass = pass && cond;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<fs::path> corpus() {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(fs::path(SVGBENCH_TEST_DATA) / "icons"))
        if (e.path().extension() == ".svg") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

void metric_fixed_points(Outcome& o) {
    const auto t0 = Clock::now();
    testgen::Rng rng(101);
    for (int i = 0; i < 50; ++i) {
        const auto doc = testgen::random_drawable_document(rng);
        const auto img = raster::rasterize(doc, 224);
        o.require(metrics::mse(img, img) == 0.0, "mse(self) == 0");
        o.require(std::abs(metrics::ssim(img, img) - 1.0) <= 1e-9, "ssim(self) == 1");
        o.require(metrics::chamfer(doc, doc, 2.0) == 0.0, "chamfer(self) == 0");
    }
    const double t = seconds_since(t0);
    o.require(t < 30.0, "runtime < 30 s");
    o.detail << "50 documents in " << t << " s";
}

void chamfer_oracle(Outcome& o) {
    auto set_of = [](std::vector<geometry::Point> p) {
        geometry::PointSet s;
        s.points = std::move(p);
        return s;
    };
    o.require(metrics::chamfer(set_of({{0, 0}}), set_of({{3, 4}})) == 50.0, "{(0,0)} vs {(3,4)} = 50");
    o.require(metrics::chamfer(set_of({{0, 0}, {1, 0}}), set_of({{0, 0}})) == 0.5, "{(0,0),(1,0)} vs {(0,0)} = 0.5");
    testgen::Rng rng(202);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        auto a = geometry::sample_points(testgen::random_drawable_document(rng), 2.0);
        auto b = geometry::sample_points(testgen::random_drawable_document(rng), 2.0);
        if (a.points.size() > 500) a.points.resize(500);
        if (b.points.size() > 500) b.points.resize(500);
        worst = std::max(worst, relative_gap(metrics::chamfer(a, b), oracle::brute_chamfer(a.points, b.points)));
    }
    o.require(worst <= 1e-9, "kd-tree equals brute force within 1e-9");
    o.detail << "200 pairs, worst relative gap " << worst;
}

void ssim_reference(Outcome& o) {
    testgen::Rng rng(303);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto a = testgen::random_image(rng, 32, 32), b = testgen::random_image(rng, 32, 32);
        worst = std::max(worst, std::abs(metrics::ssim(a, b) - oracle::literal_ssim(a, b)));
    }
    o.require(worst <= 1e-9, "windowed equals literal within 1e-9");
    const double c1 = metrics::kSsimC1;
    const double closed = c1 / (1.0 + c1);
    const double got = metrics::ssim(raster::RasterImage(32, 32, 0.0f), raster::RasterImage(32, 32, 1.0f));
    o.require(std::abs(got - closed) <= 1e-9, "constant 0 vs 1 = C1/(1+C1)");
    o.detail << "50 pairs, worst gap " << worst << "; const pair " << got;
}

void parser_round_trip(Outcome& o) {
    testgen::Rng rng(404);
    int identical = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto doc = testgen::random_document(rng);
        if (svg::parse_svg(svg::serialize(doc)) == doc) ++identical;
    }
    o.require(identical == 1000, "parse(serialize(d)) == d for all 1000");
    int repaired = 0;
    for (int i = 0; i < 1000; ++i) {
        const std::string text = svg::serialize(testgen::random_document(rng));
        const std::size_t lo = text.find("<svg") + 4;
        const auto len = static_cast<std::size_t>(testgen::uniform_int(rng, static_cast<int>(lo), static_cast<int>(text.size())));
        try {
            svg::parse_svg(svg::repair(std::string_view(text).substr(0, len)).text);
            ++repaired;
        } catch (const std::exception&) {
        }
    }
    o.require(repaired == 1000, "all 1000 prefixes repair to parseable text");
    o.detail << identical << "/1000 round trips, " << repaired << "/1000 prefixes repaired";
}

void rasterizer_coverage(Outcome& o) {
    const auto doc = svg::parse_svg("<svg viewBox=\"0 0 16 16\"><rect width=\"8\" height=\"16\"/></svg>");
    const auto img = raster::rasterize(doc, 16, 4);
    int black = 0, white = 0;
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) {
            black += img.at(x, y, 0) == 0.0f && img.at(x, y, 1) == 0.0f && img.at(x, y, 2) == 0.0f;
            white += img.at(x, y, 0) == 1.0f && img.at(x, y, 1) == 1.0f && img.at(x, y, 2) == 1.0f;
        }
    o.require(black == 128 && white == 128, "half-frame rectangle gives 128 black and 128 white pixels");
    double worst = 0.0;
    for (int k = 0; k < 36; ++k) {
        const double th = (2.5 + 10.0 * k) * M_PI / 180.0;
        const geometry::Point n{std::cos(th), std::sin(th)}, t{-n.y, n.x};
        const double c = n.x * 16.2 + n.y * 15.9;
        const geometry::Point base = n * c;
        const std::vector<geometry::Point> poly{base + t * 100.0, base - t * 100.0, base - t * 100.0 - n * 200.0,
                                                base + t * 100.0 - n * 200.0};
        const auto cov = raster::polygon_coverage({poly}, svg::FillRule::NonZero, 32, 8);
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x)
                worst = std::max(worst, std::abs(cov[static_cast<std::size_t>(y) * 32 + x] - oracle::half_plane_pixel_area(x, y, n, c)));
    }
    o.require(worst <= 0.08, "rotated half-plane coverage within 0.08");
    o.detail << black << " black / " << white << " white; 36 angles, worst coverage error " << worst;
}

void vectorizer_round_trip(Outcome& o) {
    const auto t0 = Clock::now();
    const auto files = corpus();
    o.require(files.size() == 16, "16 corpus icons");
    double sum_mse = 0.0, sum_cd = 0.0;
    for (const auto& f : files) {
        const auto gt = svg::normalize(svg::parse_svg(read_text(f)), 224);
        const auto img = raster::rasterize(gt, 224);
        const auto doc = vectorize::vectorize(img);
        sum_mse += metrics::mse(raster::rasterize(doc, 224), img);
        sum_cd += metrics::chamfer(svg::normalize(doc, 224), gt, 2.0);
    }
    const double n = std::max<std::size_t>(files.size(), 1);
    const double t = seconds_since(t0);
    o.require(sum_mse / n <= 0.02, "mean MSE <= 0.02");
    o.require(sum_cd / n <= 5.0, "mean CD <= 5.0");
    o.require(t < 60.0, "runtime < 60 s");
    o.detail << "mean MSE " << sum_mse / n << ", mean CD " << sum_cd / n << ", " << t << " s";
}

void collect_points(const std::vector<svg::Node>& nodes, std::vector<geometry::Point>& out) {
    for (const auto& n : nodes) {
        if (const auto* g = std::get_if<svg::GroupNode>(&n.kind)) {
            collect_points(g->children, out);
        } else if (const auto* p = std::get_if<svg::PathNode>(&n.kind)) {
            for (const auto& c : p->commands)
                for (int k = 0; k < svg::arity(c.op) / 2; ++k) out.push_back({c.args[2 * k], c.args[2 * k + 1]});
        }
    }
}

svg::SvgDocument cubic_form(const svg::SvgDocument& doc) {
    auto out = svg::lower_primitives(geometry::apply_transform(geometry::AffineTransform::identity(), doc));
    std::function<void(std::vector<svg::Node>&)> walk = [&](std::vector<svg::Node>& nodes) {
        for (auto& n : nodes) {
            if (auto* g = std::get_if<svg::GroupNode>(&n.kind)) walk(g->children);
            else if (auto* p = std::get_if<svg::PathNode>(&n.kind)) p->commands = svg::to_cubics(svg::to_absolute(p->commands));
        }
    };
    walk(out.root);
    return out;
}

void augmentation_suite(Outcome& o) {
    testgen::Rng rng(707);
    augment::AugmentConfig zero;
    zero.rotation_range_deg = {0, 0};
    zero.color_sigma = 0;
    zero.curve_noise_scale_range = {0, 0};
    int identity = 0, deterministic = 0, valid = 0;
    for (int i = 0; i < 100; ++i) {
        const auto doc = testgen::random_drawable_document(rng);
        zero.seed = i;
        identity += svg::serialize(augment::augment(doc, zero)) == svg::serialize(doc);
        augment::AugmentConfig cfg;
        cfg.seed = i;
        const std::string text = svg::serialize(augment::augment(doc, cfg));
        deterministic += text == svg::serialize(augment::augment(doc, cfg));
        valid += svg::validate(text).compilable;
    }
    o.require(identity == 100, "zero configs are byte identity");
    o.require(deterministic == 100, "fixed seeds are deterministic");
    o.require(valid == 100, "augmented outputs pass validate()");

    double worst = 0.0;
    bool aligned = true;
    for (int i = 0; i < 1000; ++i) {
        const auto doc = testgen::random_drawable_document(rng);
        std::vector<geometry::Point> before, after;
        collect_points(cubic_form(doc).root, before);
        collect_points(augment::curve_noise(doc, 0.05, 4.0, i).root, after);
        aligned = aligned && before.size() == after.size();
        for (std::size_t k = 0; k < std::min(before.size(), after.size()); ++k)
            worst = std::max(worst, std::hypot(after[k].x - before[k].x, after[k].y - before[k].y));
    }
    o.require(aligned, "curve noise preserves point structure");
    o.require(worst <= 0.05 * 224 + 1e-9, "displacement <= s*F at s = 0.05");

    double lo = 1.0, hi = 0.0;
    for (int s = 0; s < 10000; ++s) {
        augment::AugmentConfig cfg;
        cfg.seed = s;
        const double v = augment::draw_parameters(cfg).curve_scale;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    o.require(lo >= 0.01 && hi <= 0.05, "scale draws within [0.01, 0.05]");
    o.detail << "identity " << identity << "/100, valid " << valid << "/100, max displacement " << worst
             << " (bound 11.2), scale draws in [" << lo << ", " << hi << "]";
}

void harness_determinism(Outcome& o) {
    std::vector<bench::ManifestEntry> entries;
    for (int i = 0; i < 100; ++i) {
        bench::ManifestEntry e;
        e.id = "sample_" + std::to_string(i);
        e.svg_path = e.id + ".svg";
        entries.push_back(e);
    }
    const auto split = bench::make_splits(entries, {0.9, 0.05, 0.05}, 42);
    std::map<std::string, bench::Split> ref;
    std::array<int, 5> counts{};
    for (const auto& e : split) {
        ref[e.id] = e.split;
        ++counts[static_cast<std::size_t>(e.split)];
    }
    o.require(counts[0] == 90 && counts[1] == 5 && counts[2] == 5, "90/5/5 split");
    std::mt19937_64 rng(8);
    bool invariant = true;
    for (int k = 0; k < 20; ++k) {
        auto shuffled = entries;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (const auto& e : bench::make_splits(shuffled, {0.9, 0.05, 0.05}, 42)) invariant = invariant && ref[e.id] == e.split;
    }
    o.require(invariant, "split invariant under permutation");

    auto a = entries[0], b = entries[1];
    a.token_len = 8192;
    b.token_len = 8193;
    const auto kept = bench::filter_by_context({a, b}, 8192);
    o.require(kept.kept.size() == 1 && kept.kept[0].id == a.id && kept.dropped == 1, "8192 kept, 8193 dropped");

    const std::string v1 = "<svg viewBox=\"0 0 24 24\"><rect x=\"2\" y=\"2\" width=\"8\" height=\"8\" fill=\"#00ff00\"/></svg>";
    const std::string v2 = "<svg  viewBox = '0 0 24 24' >\n\t<rect  x='2' y='2'\n width='8' height='8' fill='#00ff00' />\n</svg>\n";
    a.content_hash = bench::content_hash(v1);
    b.content_hash = bench::content_hash(v2);
    o.require(bench::dedup({a, b}).size() == 1, "whitespace variants collapse");
    o.detail << "splits " << counts[0] << "/" << counts[1] << "/" << counts[2] << ", permutation invariant "
             << (invariant ? "yes" : "no");
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SVGBENCH_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void end_to_end(Outcome& o) {
    const fs::path dir = fs::temp_directory_path() / ("svgbench_accept_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string icons = (fs::path(SVGBENCH_TEST_DATA) / "icons").string();
    const std::string manifest = (dir / "icons.jsonl").string();
    o.require(run_cli("manifest build " + icons + " --out " + manifest) == 0, "manifest build");
    o.require(run_cli("eval --pred " + icons + " --manifest " + manifest + " --out " + (dir / "report.json").string() +
                      " --csv " + (dir / "report.csv").string()) == 0,
              "eval exit status");
    std::istringstream csv(read_text(dir / "report.csv"));
    std::string header, row;
    std::getline(csv, header);
    std::getline(csv, row);
    o.require(header == "dataset,n_total,n_ok,mse,cd,lpips,ssim", "CSV header order");
    std::vector<std::string> cells;
    std::istringstream rs(row);
    for (std::string cell; std::getline(rs, cell, ',');) cells.push_back(cell);
    if (!row.empty() && row.back() == ',') cells.push_back("");
    o.require(cells.size() == 7, "seven CSV cells");
    if (cells.size() == 7) {
        o.require(cells[0] == "icons", "dataset name");
        o.require(cells[1] == "16" && cells[2] == "16", "n_ok = n_total = 16");
        o.require(cells[3] == "0", "mse 0");
        o.require(cells[4] == "0", "cd 0");
        o.require(cells[5].empty(), "empty LPIPS column");
        o.require(std::abs(std::stod(cells[6]) - 1.0) <= 1e-9, "ssim 1");
    }
    o.detail << "csv row: " << row;
    fs::remove_all(dir);
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"metric fixed points", metric_fixed_points},
        {"chamfer oracle", chamfer_oracle},
        {"ssim reference", ssim_reference},
        {"parser round trip and repair", parser_round_trip},
        {"rasterizer coverage", rasterizer_coverage},
        {"vectorizer round trip", vectorizer_round_trip},
        {"augmentation suite", augmentation_suite},
        {"harness determinism", harness_determinism},
        {"end-to-end eval", end_to_end},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << o.detail.str() << std::endl;
    }
    return all ? 0 : 1;
}
