#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "svgbench/metrics.hpp"

namespace svgbench::bench {

enum class Split { Train, Val, Test, TestSim, Unassigned };

const char* split_name(Split s);  // train, val, test, test_sim, unassigned
std::optional<Split> parse_split(std::string_view name);

struct ManifestEntry {
    std::string id;
    std::string svg_path;  // relative paths resolve against the manifest's directory
    std::optional<std::string> png_path;
    Split split = Split::Unassigned;
    std::int64_t token_len = 0;
    std::uint64_t content_hash = 0;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

// ---- tokenizers

enum class TokenizerKind { Bytes, Approx4Bytes, ExternalVocabFile };

struct TokenizerSpec {
    TokenizerKind kind = TokenizerKind::Approx4Bytes;
    std::string path;  // vocab file for ExternalVocabFile

    std::string description() const;
    bool approximate() const { return kind != TokenizerKind::ExternalVocabFile; }
};

// "bytes", "approx4" or "vocab:<path>"; throws std::invalid_argument.
TokenizerSpec parse_tokenizer(std::string_view text);

// Greedy longest-match tokenizer over a vocabulary. A `.json` file is read as
// a {token: id} map in the byte-level BPE alphabet; any other file holds one
// token per line. Bytes not covered by any token count as one token each.
class VocabTokenizer {
public:
    explicit VocabTokenizer(const std::filesystem::path& path);  // throws VocabLoadError
    std::int64_t count(std::string_view text) const;
    std::size_t vocab_size() const { return tokens_.size(); }

private:
    std::unordered_set<std::string> tokens_;
    std::size_t max_len_ = 0;
};

class Tokenizer {
public:
    explicit Tokenizer(TokenizerSpec spec);
    std::int64_t count(std::string_view text) const;
    const TokenizerSpec& spec() const { return spec_; }

private:
    TokenizerSpec spec_;
    std::shared_ptr<const VocabTokenizer> vocab_;
};

std::int64_t token_length(std::string_view text, const TokenizerSpec& tok);

// ---- manifests

// FNV-1a 64 of the canonical form (parse, normalize to 224, serialize);
// raw bytes when the text does not parse.
std::uint64_t content_hash(std::string_view svg_text);
std::string format_hash(std::uint64_t h);  // 16 lowercase hex digits

std::vector<ManifestEntry> parse_manifest(std::string_view jsonl);  // throws ManifestIoError
std::string format_manifest(const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries);

std::filesystem::path resolve_path(const std::string& stored, const std::filesystem::path& manifest_dir);

// One entry per *.svg under dir (sorted by relative path); id is the stem,
// a sibling .png/.ppm becomes png_path. Paths are stored relative to base_dir.
std::vector<ManifestEntry> build_manifest(const std::filesystem::path& dir, const TokenizerSpec& tok,
                                          const std::filesystem::path& base_dir);

struct FilterResult {
    std::vector<ManifestEntry> kept;
    std::size_t dropped = 0;
};
inline constexpr std::int64_t kDefaultContextTokens = 8192;
FilterResult filter_by_context(const std::vector<ManifestEntry>& entries, std::int64_t max_tokens = kDefaultContextTokens);

// Stable; drops later entries sharing a hash and any entry whose hash is in
// the exclusion list.
std::vector<ManifestEntry> dedup(const std::vector<ManifestEntry>& entries,
                                 const std::vector<ManifestEntry>* exclude = nullptr);

struct SplitRatios {
    double train = 0.9, val = 0.05, test = 0.05;
};
// Entries keep their input order; only the split field changes. Throws BadRatios.
std::vector<ManifestEntry> make_splits(const std::vector<ManifestEntry>& entries, const SplitRatios& ratios,
                                       std::uint64_t seed);

// ---- statistics

struct DatasetStats {
    std::array<std::size_t, 5> counts{};  // indexed by Split
    std::size_t total = 0;
    double token_mean = 0.0;
    double token_stddev = 0.0;  // population
    std::string tokenizer;
    bool approximate = true;
};

DatasetStats dataset_stats(const std::vector<ManifestEntry>& entries, const TokenizerSpec& tok);
std::string format_thousands(long long v);
std::string format_mean_std(double mean, double stddev);  // "2,121 ± 1,868"
std::string format_stats(const DatasetStats& stats, std::string_view dataset);

// ---- evaluation

struct EvalConfig {
    metrics::MetricConfig metrics;
    unsigned workers = 0;  // 0: hardware concurrency
};

// Scores <pred_dir>/<id>.svg against every test/test_sim entry (every entry
// when none is marked). Missing predictions score PredUnparseable. Samples
// are ordered by id. Throws ManifestIoError when the manifest cannot be read.
metrics::MetricReport run_eval(const std::filesystem::path& pred_dir, const std::filesystem::path& manifest,
                               const EvalConfig& config);

}  // namespace svgbench::bench
