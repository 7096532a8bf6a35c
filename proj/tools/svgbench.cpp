#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svgbench/augment.hpp"
#include "svgbench/bench.hpp"
#include "svgbench/error.hpp"
#include "svgbench/image_io.hpp"
#include "svgbench/metrics.hpp"
#include "svgbench/raster.hpp"
#include "svgbench/simd.hpp"
#include "svgbench/svg_io.hpp"
#include "svgbench/svg_ops.hpp"
#include "svgbench/svg_repair.hpp"
#include "svgbench/vectorize.hpp"

namespace fs = std::filesystem;
using namespace svgbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitData = 2;

struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    try {
        return raster::read_file(path);
    } catch (const std::runtime_error& e) {
        throw UserError(e.what());
    }
}

void write_output(const std::string& path, std::string_view bytes) {
    try {
        raster::write_file(path, bytes);
    } catch (const std::runtime_error& e) {
        throw UserError(e.what());
    }
}

std::pair<double, double> parse_range(const std::string& text, const char* what) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) throw std::invalid_argument(text);
        std::size_t used = 0;
        const std::string lo = text.substr(0, comma), hi = text.substr(comma + 1);
        const double a = std::stod(lo, &used);
        if (used != lo.size()) throw std::invalid_argument(text);
        const double b = std::stod(hi, &used);
        if (used != hi.size()) throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw UserError(std::string(what) + " expects 'lo,hi', got '" + text + "'");
    }
}

std::vector<bench::ManifestEntry> load_manifest(const std::string& path) {
    if (!fs::is_regular_file(path)) throw UserError("manifest not found: " + path);
    return bench::read_manifest(path);
}

void print_issues(const std::vector<svg::Issue>& issues) {
    for (const auto& i : issues)
        std::cout << svg::severity_name(i.severity) << " @" << i.byte_offset << ": " << i.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SVG benchmark toolkit: parsing, rendering, metrics, augmentation, vectorization and dataset tools"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a TOML/INI file");
    std::string isa;
    app.add_option("--isa", isa, "Kernel set: scalar or avx2 (default: best available)");

    std::function<int()> run;

    // parse
    auto* parse_cmd = app.add_subcommand("parse", "Validate an SVG file; exit 0 iff it compiles");
    std::string parse_in;
    parse_cmd->add_option("file", parse_in)->required();
    parse_cmd->callback([&] {
        run = [&] {
            const auto report = svg::validate(read_input(parse_in));
            print_issues(report.issues);
            std::cout << "compilable: " << (report.compilable ? "yes" : "no") << "\n";
            return report.compilable ? kExitOk : kExitData;
        };
    });

    // repair
    auto* repair_cmd = app.add_subcommand("repair", "Complete truncated SVG text");
    std::string repair_in, repair_out;
    repair_cmd->add_option("in", repair_in)->required();
    repair_cmd->add_option("out", repair_out)->required();
    repair_cmd->callback([&] {
        run = [&] {
            const auto result = svg::repair(read_input(repair_in));
            write_output(repair_out, result.text);
            print_issues(result.report.issues);
            std::cout << (result.report.repaired ? "repaired" : "unchanged") << "\n";
            return kExitOk;
        };
    });

    // rasterize
    auto* raster_cmd = app.add_subcommand("rasterize", "Render an SVG to a binary PPM");
    std::string raster_in, raster_out;
    int raster_size = 224, raster_ss = raster::kDefaultSupersample;
    raster_cmd->add_option("in", raster_in)->required();
    raster_cmd->add_option("out", raster_out)->required();
    raster_cmd->add_option("--size", raster_size, "Output side in pixels")->check(CLI::PositiveNumber);
    raster_cmd->add_option("--supersample", raster_ss, "Samples per pixel side")->check(CLI::PositiveNumber);
    raster_cmd->callback([&] {
        run = [&] {
            const auto doc = svg::normalize(svg::parse_svg(read_input(raster_in)), raster_size);
            write_output(raster_out, raster::write_ppm(raster::rasterize(doc, raster_size, raster_ss)));
            return kExitOk;
        };
    });

    // simplify
    auto* simplify_cmd = app.add_subcommand("simplify", "Convert to the black line-stroke form");
    std::string simplify_in, simplify_out;
    simplify_cmd->add_option("in", simplify_in)->required();
    simplify_cmd->add_option("out", simplify_out)->required();
    simplify_cmd->callback([&] {
        run = [&] {
            write_output(simplify_out, svg::serialize(svg::simplify(svg::parse_svg(read_input(simplify_in)))) + "\n");
            return kExitOk;
        };
    });

    // augment
    auto* augment_cmd = app.add_subcommand("augment", "Rotate, recolor and warp an SVG");
    std::string augment_in, augment_out, rotation = "-10,10", curve = "0.01,0.05";
    augment::AugmentConfig aug;
    int augment_size = 224;
    augment_cmd->add_option("in", augment_in)->required();
    augment_cmd->add_option("out", augment_out)->required();
    augment_cmd->add_option("--seed", aug.seed, "Random seed");
    augment_cmd->add_option("--rotation-range", rotation, "Rotation range in degrees, lo,hi");
    augment_cmd->add_option("--color-sigma", aug.color_sigma, "Fill noise sigma in 0-255 units")->check(CLI::NonNegativeNumber);
    augment_cmd->add_option("--curve-scale", curve, "Curve noise scale range, lo,hi");
    augment_cmd->add_option("--perlin-freq", aug.perlin_frequency, "Perlin cycles per frame")->check(CLI::NonNegativeNumber);
    augment_cmd->add_option("--size", augment_size, "Normalization frame side")->check(CLI::PositiveNumber);
    augment_cmd->callback([&] {
        run = [&] {
            aug.rotation_range_deg = parse_range(rotation, "--rotation-range");
            aug.curve_noise_scale_range = parse_range(curve, "--curve-scale");
            const auto doc = svg::normalize(svg::parse_svg(read_input(augment_in)), augment_size);
            write_output(augment_out, svg::serialize(augment::augment(doc, aug)) + "\n");
            return kExitOk;
        };
    });

    // vectorize
    auto* vec_cmd = app.add_subcommand("vectorize", "Trace a PNG/PPM image into an SVG");
    std::string vec_in, vec_out;
    vectorize::VectorizeConfig vec;
    vec_cmd->add_option("in", vec_in)->required();
    vec_cmd->add_option("out", vec_out)->required();
    vec_cmd->add_option("--color-precision", vec.color_precision, "Bits kept per channel")->check(CLI::Range(1, 8));
    vec_cmd->add_option("--min-region", vec.min_region_px, "Regions below this many pixels are merged")
        ->check(CLI::PositiveNumber);
    vec_cmd->add_option("--epsilon", vec.simplify_epsilon, "Polygon simplification tolerance (px)")
        ->check(CLI::NonNegativeNumber);
    vec_cmd->add_option("--corner-angle", vec.corner_angle_deg, "Corner threshold in degrees")->check(CLI::PositiveNumber);
    vec_cmd->add_option("--fit-error", vec.fit_error, "Max squared fitting error (px^2)")->check(CLI::PositiveNumber);
    vec_cmd->callback([&] {
        run = [&] {
            raster::RasterImage img;
            try {
                img = raster::load_image(vec_in);
            } catch (const Error&) {
                throw;
            } catch (const std::runtime_error& e) {
                throw UserError(e.what());
            }
            write_output(vec_out, svg::serialize(vectorize::vectorize(img, vec)) + "\n");
            return kExitOk;
        };
    });

    // manifest
    auto* manifest_cmd = app.add_subcommand("manifest", "Build and transform JSONL manifests");
    manifest_cmd->require_subcommand(1);
    std::string mb_dir, mb_out, mb_tok = "approx4";
    auto* mb = manifest_cmd->add_subcommand("build", "Index every .svg under a directory");
    mb->add_option("dir", mb_dir)->required();
    mb->add_option("--out", mb_out)->required();
    mb->add_option("--tokenizer", mb_tok, "bytes, approx4 or vocab:<path>");
    mb->callback([&] {
        run = [&] {
            const auto tok = bench::parse_tokenizer(mb_tok);
            const fs::path out(mb_out);
            const auto entries = bench::build_manifest(mb_dir, tok, out.has_parent_path() ? out.parent_path() : fs::path("."));
            bench::write_manifest(out, entries);
            std::cout << entries.size() << " entries\n";
            return kExitOk;
        };
    });

    std::string md_in, md_out, md_exclude;
    auto* md = manifest_cmd->add_subcommand("dedup", "Drop entries with repeated content hashes");
    md->add_option("in", md_in)->required();
    md->add_option("--out", md_out)->required();
    md->add_option("--exclude", md_exclude, "Also drop hashes found in this manifest");
    md->callback([&] {
        run = [&] {
            const auto entries = load_manifest(md_in);
            std::vector<bench::ManifestEntry> excl;
            if (!md_exclude.empty()) excl = load_manifest(md_exclude);
            const auto kept = bench::dedup(entries, md_exclude.empty() ? nullptr : &excl);
            bench::write_manifest(md_out, kept);
            std::cout << kept.size() << " kept, " << entries.size() - kept.size() << " dropped\n";
            return kExitOk;
        };
    });

    std::string mf_in, mf_out;
    std::int64_t mf_max = bench::kDefaultContextTokens;
    auto* mf = manifest_cmd->add_subcommand("filter", "Keep entries within the token budget");
    mf->add_option("in", mf_in)->required();
    mf->add_option("--out", mf_out)->required();
    mf->add_option("--max-tokens", mf_max, "Inclusive token limit")->check(CLI::NonNegativeNumber);
    mf->callback([&] {
        run = [&] {
            const auto r = bench::filter_by_context(load_manifest(mf_in), mf_max);
            bench::write_manifest(mf_out, r.kept);
            std::cout << r.kept.size() << " kept, " << r.dropped << " dropped\n";
            return kExitOk;
        };
    });

    std::string ms_in, ms_out, ms_ratios = "0.9,0.05,0.05";
    std::uint64_t ms_seed = 0;
    auto* ms = manifest_cmd->add_subcommand("split", "Assign train/val/test splits");
    ms->add_option("in", ms_in)->required();
    ms->add_option("--out", ms_out)->required();
    ms->add_option("--ratios", ms_ratios, "train,val,test");
    ms->add_option("--seed", ms_seed, "Split seed");
    ms->callback([&] {
        run = [&] {
            std::vector<double> r;
            std::stringstream ss(ms_ratios);
            std::string part;
            try {
                while (std::getline(ss, part, ',')) r.push_back(std::stod(part));
            } catch (const std::logic_error&) {
                r.clear();
            }
            if (r.size() != 3) throw UserError("--ratios expects train,val,test");
            const auto out = bench::make_splits(load_manifest(ms_in), {r[0], r[1], r[2]}, ms_seed);
            bench::write_manifest(ms_out, out);
            return kExitOk;
        };
    });

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Split counts and token length summary");
    std::string stats_in, stats_tok = "approx4";
    stats_cmd->add_option("manifest", stats_in)->required();
    stats_cmd->add_option("--tokenizer", stats_tok, "Tokenizer the manifest was built with");
    stats_cmd->callback([&] {
        run = [&] {
            const auto tok = bench::parse_tokenizer(stats_tok);
            const auto stats = bench::dataset_stats(load_manifest(stats_in), tok);
            std::cout << bench::format_stats(stats, fs::path(stats_in).stem().string());
            return kExitOk;
        };
    });

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Score predictions against a manifest");
    std::string eval_pred, eval_manifest, eval_out, eval_csv;
    bench::EvalConfig ev;
    eval_cmd->add_option("--pred", eval_pred, "Directory of <id>.svg predictions")->required();
    eval_cmd->add_option("--manifest", eval_manifest)->required();
    eval_cmd->add_option("--out", eval_out, "JSON report path")->required();
    eval_cmd->add_option("--csv", eval_csv, "CSV report path");
    eval_cmd->add_option("--step", ev.metrics.step, "Chamfer sampling step")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--size", ev.metrics.size, "Raster side")->check(CLI::Range(metrics::kSsimWindow, 1 << 14));
    eval_cmd->add_option("--supersample", ev.metrics.supersample, "Samples per pixel side")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--workers", ev.workers, "Worker threads (0: all cores)");
    eval_cmd->callback([&] {
        run = [&] {
            if (!fs::is_directory(eval_pred)) throw UserError("prediction directory not found: " + eval_pred);
            if (!fs::is_regular_file(eval_manifest)) throw UserError("manifest not found: " + eval_manifest);
            const auto report = bench::run_eval(eval_pred, eval_manifest, ev);
            write_output(eval_out, metrics::report_to_json(report));
            if (!eval_csv.empty()) write_output(eval_csv, metrics::report_to_csv(report));
            std::cout << metrics::report_to_csv(report);
            return kExitOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUser;
    }
    try {
        if (!isa.empty()) {
            if (isa == "scalar")
                simd::set_active_isa(simd::Isa::Scalar);
            else if (isa == "avx2")
                simd::set_active_isa(simd::Isa::Avx2);
            else
                throw UserError("unknown --isa " + isa);
        }
        return run ? run() : kExitUser;
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUser;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUser;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
