#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "svgbench/bench.hpp"
#include "svgbench/error.hpp"
#include "svgbench/image_io.hpp"
#include "svgbench/rng.hpp"
#include "svgbench/svg_io.hpp"
#include "svgbench/svg_ops.hpp"

namespace svgbench::bench {

namespace fs = std::filesystem;

const char* split_name(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Val: return "val";
        case Split::Test: return "test";
        case Split::TestSim: return "test_sim";
        case Split::Unassigned: return "unassigned";
    }
    return "unassigned";
}

std::optional<Split> parse_split(std::string_view name) {
    for (Split s : {Split::Train, Split::Val, Split::Test, Split::TestSim, Split::Unassigned})
        if (name == split_name(s)) return s;
    return std::nullopt;
}

namespace {

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t content_hash(std::string_view svg_text) {
    try {
        return fnv1a(svg::serialize(svg::normalize(svg::parse_svg(svg_text), 224)));
    } catch (const Error&) {
        return fnv1a(svg_text);
    }
}

std::string format_hash(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<ManifestEntry> parse_manifest(std::string_view jsonl) {
    std::vector<ManifestEntry> out;
    std::unordered_set<std::string> ids;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < jsonl.size()) {
        std::size_t end = jsonl.find('\n', pos);
        if (end == std::string_view::npos) end = jsonl.size();
        const std::string_view line = jsonl.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        auto fail = [&](const std::string& why) {
            return ManifestIoError("manifest line " + std::to_string(line_no) + ": " + why);
        };
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw fail(e.what());
        }
        try {
            ManifestEntry e;
            e.id = j.at("id").get<std::string>();
            e.svg_path = j.at("svg_path").get<std::string>();
            if (j.contains("png_path") && !j["png_path"].is_null()) e.png_path = j["png_path"].get<std::string>();
            if (j.contains("split")) {
                const auto s = parse_split(j["split"].get<std::string>());
                if (!s) throw fail("unknown split " + j["split"].dump());
                e.split = *s;
            }
            if (j.contains("token_len")) e.token_len = j["token_len"].get<std::int64_t>();
            if (e.token_len < 0) throw fail("negative token_len");
            if (j.contains("content_hash")) {
                const auto& h = j["content_hash"];
                if (h.is_string()) {
                    const std::string s = h.get<std::string>();
                    std::size_t used = 0;
                    e.content_hash = std::stoull(s, &used, 16);
                    if (used != s.size()) throw fail("bad content_hash");
                } else {
                    e.content_hash = h.get<std::uint64_t>();
                }
            }
            if (!ids.insert(e.id).second) throw fail("duplicate id " + e.id);
            out.push_back(std::move(e));
        } catch (const nlohmann::json::exception& e) {
            throw fail(e.what());
        } catch (const std::logic_error&) {
            throw fail("bad content_hash");
        }
    }
    return out;
}

std::string format_manifest(const std::vector<ManifestEntry>& entries) {
    std::string out;
    for (const auto& e : entries) {
        nlohmann::ordered_json j;
        j["id"] = e.id;
        j["svg_path"] = e.svg_path;
        j["png_path"] = e.png_path ? nlohmann::ordered_json(*e.png_path) : nlohmann::ordered_json(nullptr);
        j["split"] = split_name(e.split);
        j["token_len"] = e.token_len;
        j["content_hash"] = format_hash(e.content_hash);
        out += j.dump() + "\n";
    }
    return out;
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
    std::string text;
    try {
        text = raster::read_file(path);
    } catch (const std::runtime_error& e) {
        throw ManifestIoError(e.what());
    }
    return parse_manifest(text);
}

void write_manifest(const fs::path& path, const std::vector<ManifestEntry>& entries) {
    try {
        raster::write_file(path, format_manifest(entries));
    } catch (const std::runtime_error& e) {
        throw ManifestIoError(e.what());
    }
}

fs::path resolve_path(const std::string& stored, const fs::path& manifest_dir) {
    const fs::path p(stored);
    return p.is_absolute() ? p : manifest_dir / p;
}

std::vector<ManifestEntry> build_manifest(const fs::path& dir, const TokenizerSpec& tok, const fs::path& base_dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw ManifestIoError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& item : fs::recursive_directory_iterator(dir)) {
        if (item.is_regular_file() && item.path().extension() == ".svg") files.push_back(item.path());
    }
    std::sort(files.begin(), files.end());
    const Tokenizer tokenizer(tok);
    const fs::path base = fs::weakly_canonical(base_dir.empty() ? fs::current_path() : base_dir);
    auto stored = [&](const fs::path& p) { return fs::weakly_canonical(p).lexically_relative(base).generic_string(); };

    std::vector<ManifestEntry> out;
    std::unordered_set<std::string> ids;
    for (const auto& file : files) {
        ManifestEntry e;
        e.id = fs::relative(file, dir).replace_extension().generic_string();
        if (!ids.insert(e.id).second) throw ManifestIoError("duplicate id " + e.id);
        std::string text;
        try {
            text = raster::read_file(file);
        } catch (const std::runtime_error& err) {
            throw ManifestIoError(err.what());
        }
        e.svg_path = stored(file);
        for (const char* ext : {".png", ".ppm"}) {
            fs::path img = file;
            img.replace_extension(ext);
            if (fs::is_regular_file(img, ec)) {
                e.png_path = stored(img);
                break;
            }
        }
        e.token_len = tokenizer.count(text);
        e.content_hash = content_hash(text);
        out.push_back(std::move(e));
    }
    return out;
}

FilterResult filter_by_context(const std::vector<ManifestEntry>& entries, std::int64_t max_tokens) {
    FilterResult r;
    for (const auto& e : entries) {
        if (e.token_len <= max_tokens)
            r.kept.push_back(e);
        else
            ++r.dropped;
    }
    return r;
}

std::vector<ManifestEntry> dedup(const std::vector<ManifestEntry>& entries, const std::vector<ManifestEntry>* exclude) {
    std::unordered_set<std::uint64_t> seen;
    if (exclude)
        for (const auto& e : *exclude) seen.insert(e.content_hash);
    std::vector<ManifestEntry> out;
    for (const auto& e : entries)
        if (seen.insert(e.content_hash).second) out.push_back(e);
    return out;
}

std::vector<ManifestEntry> make_splits(const std::vector<ManifestEntry>& entries, const SplitRatios& r,
                                       std::uint64_t seed) {
    for (double v : {r.train, r.val, r.test})
        if (!std::isfinite(v) || v < 0.0) throw BadRatios("split ratios must be finite and non-negative");
    if (std::abs(r.train + r.val + r.test - 1.0) > 1e-9) throw BadRatios("split ratios must sum to 1");

    const std::size_t n = entries.size();
    std::vector<std::uint64_t> keys(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = hash_key(seed, fnv1a(entries[i].id));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (keys[a] != keys[b]) return keys[a] < keys[b];
        return entries[a].id < entries[b].id;
    });
    const auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * r.test));
    const auto n_val_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * (r.val + r.test)));
    std::vector<ManifestEntry> out = entries;
    for (std::size_t k = 0; k < n; ++k) {
        Split s = Split::Train;
        if (k < n_test)
            s = Split::Test;
        else if (k < n_val_test)
            s = Split::Val;
        out[order[k]].split = s;
    }
    return out;
}

}  // namespace svgbench::bench
