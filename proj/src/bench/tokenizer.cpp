#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>

#include "json.hpp"
#include "svgbench/bench.hpp"
#include "svgbench/error.hpp"

namespace svgbench::bench {

std::string TokenizerSpec::description() const {
    switch (kind) {
        case TokenizerKind::Bytes: return "bytes";
        case TokenizerKind::Approx4Bytes: return "approx4 (ceil(bytes/4))";
        case TokenizerKind::ExternalVocabFile: return "vocab:" + path;
    }
    return "?";
}

TokenizerSpec parse_tokenizer(std::string_view text) {
    if (text == "bytes") return {TokenizerKind::Bytes, {}};
    if (text == "approx4") return {TokenizerKind::Approx4Bytes, {}};
    if (text.starts_with("vocab:") && text.size() > 6) return {TokenizerKind::ExternalVocabFile, std::string(text.substr(6))};
    throw std::invalid_argument("unknown tokenizer '" + std::string(text) + "' (expected bytes, approx4 or vocab:<path>)");
}

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

// Inverse of the byte-level BPE alphabet: printable Latin-1 bytes map to
// themselves, the rest to U+0100 onwards in byte order.
const std::map<std::string, char>& unicode_to_byte() {
    static const std::map<std::string, char> table = [] {
        std::map<std::string, char> t;
        std::uint32_t extra = 0;
        for (std::uint32_t b = 0; b < 256; ++b) {
            const bool printable = (b >= 0x21 && b <= 0x7e) || (b >= 0xa1 && b <= 0xac) || (b >= 0xae);
            std::string key;
            append_utf8(key, printable ? b : 256 + extra++);
            t[key] = static_cast<char>(b);
        }
        return t;
    }();
    return table;
}

std::optional<std::string> decode_byte_level(const std::string& token) {
    const auto& table = unicode_to_byte();
    std::string out;
    std::size_t i = 0;
    while (i < token.size()) {
        const auto lead = static_cast<unsigned char>(token[i]);
        const std::size_t len = lead < 0x80 ? 1 : lead >= 0xe0 ? 3 : 2;
        if (i + len > token.size()) return std::nullopt;
        const auto it = table.find(token.substr(i, len));
        if (it == table.end()) return std::nullopt;
        out.push_back(it->second);
        i += len;
    }
    return out;
}

}  // namespace

VocabTokenizer::VocabTokenizer(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw VocabLoadError("cannot open vocab file " + path.string());
    if (path.extension() == ".json") {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw VocabLoadError("bad vocab json " + path.string() + ": " + e.what());
        }
        if (j.contains("model") && j["model"].contains("vocab")) j = j["model"]["vocab"];
        if (!j.is_object()) throw VocabLoadError("vocab json must be an object of token -> id");
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (auto bytes = decode_byte_level(key); bytes && !bytes->empty()) tokens_.insert(*bytes);
        }
    } else {
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) tokens_.insert(line);
        }
    }
    if (tokens_.empty()) throw VocabLoadError("vocab file has no tokens: " + path.string());
    for (const auto& t : tokens_) max_len_ = std::max(max_len_, t.size());
}

std::int64_t VocabTokenizer::count(std::string_view text) const {
    std::int64_t n = 0;
    std::size_t i = 0;
    std::string probe;
    while (i < text.size()) {
        std::size_t take = 1;
        for (std::size_t len = std::min(max_len_, text.size() - i); len > 1; --len) {
            probe.assign(text.substr(i, len));
            if (tokens_.count(probe)) {
                take = len;
                break;
            }
        }
        i += take;
        ++n;
    }
    return n;
}

Tokenizer::Tokenizer(TokenizerSpec spec) : spec_(std::move(spec)) {
    if (spec_.kind == TokenizerKind::ExternalVocabFile) vocab_ = std::make_shared<VocabTokenizer>(spec_.path);
}

std::int64_t Tokenizer::count(std::string_view text) const {
    switch (spec_.kind) {
        case TokenizerKind::Bytes: return static_cast<std::int64_t>(text.size());
        case TokenizerKind::Approx4Bytes: return static_cast<std::int64_t>((text.size() + 3) / 4);
        case TokenizerKind::ExternalVocabFile: return vocab_->count(text);
    }
    return 0;
}

std::int64_t token_length(std::string_view text, const TokenizerSpec& tok) {
    if (tok.kind != TokenizerKind::ExternalVocabFile) return Tokenizer(tok).count(text);
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const Tokenizer>> cache;
    std::shared_ptr<const Tokenizer> t;
    {
        std::lock_guard lock(mu);
        auto& slot = cache[tok.path];
        if (!slot) slot = std::make_shared<const Tokenizer>(tok);
        t = slot;
    }
    return t->count(text);
}

}  // namespace svgbench::bench
