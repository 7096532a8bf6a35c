#include <cmath>
#include <sstream>

#include "svgbench/bench.hpp"

namespace svgbench::bench {

DatasetStats dataset_stats(const std::vector<ManifestEntry>& entries, const TokenizerSpec& tok) {
    DatasetStats s;
    s.tokenizer = tok.description();
    s.approximate = tok.approximate();
    s.total = entries.size();
    std::vector<double> lens;
    lens.reserve(entries.size());
    for (const auto& e : entries) {
        ++s.counts[static_cast<std::size_t>(e.split)];
        lens.push_back(static_cast<double>(e.token_len));
    }
    if (lens.empty()) return s;
    const double n = static_cast<double>(lens.size());
    s.token_mean = metrics::pairwise_sum(lens) / n;
    std::vector<double> sq(lens.size());
    for (std::size_t i = 0; i < lens.size(); ++i) sq[i] = (lens[i] - s.token_mean) * (lens[i] - s.token_mean);
    s.token_stddev = std::sqrt(metrics::pairwise_sum(sq) / n);
    return s;
}

std::string format_thousands(long long v) {
    const bool neg = v < 0;
    std::string digits = std::to_string(neg ? -v : v);
    std::string out;
    const int lead = static_cast<int>(digits.size() % 3);
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0 && (static_cast<int>(i) - lead) % 3 == 0) out.push_back(',');
        out.push_back(digits[i]);
    }
    return neg ? "-" + out : out;
}

std::string format_mean_std(double mean, double stddev) {
    return format_thousands(std::llround(mean)) + " ± " + format_thousands(std::llround(stddev));
}

std::string format_stats(const DatasetStats& s, std::string_view dataset) {
    std::ostringstream out;
    out << "Dataset       " << dataset << "\n";
    out << "Samples       " << format_thousands(static_cast<long long>(s.total)) << "\n";
    for (Split sp : {Split::Train, Split::Val, Split::Test, Split::TestSim, Split::Unassigned}) {
        const std::size_t c = s.counts[static_cast<std::size_t>(sp)];
        if (c == 0 && (sp == Split::TestSim || sp == Split::Unassigned)) continue;
        std::string name = split_name(sp);
        name.resize(14, ' ');
        out << name << format_thousands(static_cast<long long>(c)) << "\n";
    }
    out << "Avg. Tokens   " << format_mean_std(s.token_mean, s.token_stddev) << "\n";
    out << "Tokenizer     " << s.tokenizer << (s.approximate ? " (approximate)" : "") << "\n";
    return out.str();
}

}  // namespace svgbench::bench
