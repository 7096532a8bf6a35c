#include "svgbench/svg_repair.hpp"

#include <cctype>
#include <vector>

#include "svgbench/error.hpp"
#include "svgbench/path_data.hpp"
#include "svgbench/svg_io.hpp"

namespace svgbench::svg {

ValidationReport validate(std::string_view text) {
    ValidationReport report;
    try {
        parse_svg(text, &report.issues);
        report.compilable = true;
    } catch (const MalformedXml& e) {
        report.issues.push_back({Severity::Error, e.what(), e.offset()});
    } catch (const MalformedPathData& e) {
        report.issues.push_back({Severity::Error, e.what(), e.offset()});
    } catch (const Error& e) {
        report.issues.push_back({Severity::Error, e.what(), 0});
    }
    return report;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '-' || c == '.' ||
           static_cast<unsigned char>(c) >= 0x80;
}

// Keeps whole coordinate pairs of a truncated `points` value.
std::string complete_points(std::string_view v) {
    // The last number may be cut short; drop it unless followed by a separator.
    std::size_t end = v.size();
    if (end > 0 && !is_space(v[end - 1]) && v[end - 1] != ',') {
        while (end > 0 && !is_space(v[end - 1]) && v[end - 1] != ',') --end;
    }
    std::string_view kept = v.substr(0, end);
    // Count numbers and drop a dangling odd one.
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    std::size_t i = 0;
    while (i < kept.size()) {
        while (i < kept.size() && (is_space(kept[i]) || kept[i] == ',')) ++i;
        const std::size_t s = i;
        while (i < kept.size() && !is_space(kept[i]) && kept[i] != ',') ++i;
        if (i > s) spans.emplace_back(s, i);
    }
    if (spans.size() % 2 == 1) spans.pop_back();
    return spans.empty() ? std::string() : std::string(kept.substr(0, spans.back().second));
}

class Completer {
public:
    explicit Completer(std::string_view t) : t_(t) {}

    std::string run(std::size_t start) {
        pos_ = start;
        while (pos_ < t_.size()) {
            if (t_[pos_] != '<') {
                const auto next = t_.find('<', pos_);
                const auto end = next == std::string_view::npos ? t_.size() : next;
                if (!stack_.empty()) out_.append(t_.substr(pos_, end - pos_));
                pos_ = end;
                continue;
            }
            if (starts_with("<!--")) {
                if (!copy_through("-->")) break;
            } else if (starts_with("<![CDATA[")) {
                if (!copy_through("]]>")) break;
            } else if (starts_with("<?")) {
                if (!copy_through("?>")) break;
            } else if (starts_with("<!")) {
                if (!copy_through(">")) break;
            } else if (starts_with("</")) {
                if (!closing_tag()) break;
                if (stack_.empty()) return out_;
            } else {
                if (!start_tag()) break;
                if (stack_.empty()) return out_;  // self-closed root
            }
        }
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) out_ += "</" + *it + ">";
        return out_;
    }

private:
    bool starts_with(std::string_view s) const { return t_.substr(pos_, s.size()) == s; }

    bool copy_through(std::string_view terminator) {
        const auto at = t_.find(terminator, pos_);
        if (at == std::string_view::npos) return false;
        const auto end = at + terminator.size();
        if (!stack_.empty()) out_.append(t_.substr(pos_, end - pos_));
        pos_ = end;
        return true;
    }

    bool closing_tag() {
        const auto gt = t_.find('>', pos_);
        if (gt == std::string_view::npos) return false;
        std::string_view name = t_.substr(pos_ + 2, gt - pos_ - 2);
        while (!name.empty() && is_space(name.back())) name.remove_suffix(1);
        pos_ = gt + 1;
        for (std::size_t depth = stack_.size(); depth-- > 0;) {
            if (stack_[depth] != name) continue;
            while (stack_.size() > depth + 1) {
                out_ += "</" + stack_.back() + ">";
                stack_.pop_back();
            }
            out_ += "</" + stack_.back() + ">";
            stack_.pop_back();
            return true;
        }
        return true;  // stray closing tag dropped
    }

    // Returns false when the input ended inside the tag (the tag is then
    // completed as self-closing).
    bool start_tag() {
        std::size_t p = pos_ + 1;
        const std::size_t name_start = p;
        while (p < t_.size() && is_name_char(t_[p])) ++p;
        if (p >= t_.size() || p == name_start) return false;
        const std::string name(t_.substr(name_start, p - name_start));
        std::string tag = "<" + name;
        while (true) {
            const std::size_t ws = p;
            while (p < t_.size() && is_space(t_[p])) ++p;
            if (p >= t_.size()) return finish_truncated(tag);
            if (t_[p] == '/') {
                if (p + 1 >= t_.size()) return finish_truncated(tag);
                if (t_[p + 1] != '>') return finish_truncated(tag);
                out_ += tag + "/>";
                pos_ = p + 2;
                return true;
            }
            if (t_[p] == '>') {
                out_ += tag + ">";
                stack_.push_back(name);
                pos_ = p + 1;
                return true;
            }
            if (p == ws) return finish_truncated(tag);
            const std::size_t key_start = p;
            while (p < t_.size() && is_name_char(t_[p])) ++p;
            if (p == key_start) return finish_truncated(tag);
            const std::string key(t_.substr(key_start, p - key_start));
            while (p < t_.size() && is_space(t_[p])) ++p;
            if (p >= t_.size() || t_[p] != '=') return finish_truncated(tag);
            ++p;
            while (p < t_.size() && is_space(t_[p])) ++p;
            if (p >= t_.size() || (t_[p] != '"' && t_[p] != '\'')) return finish_truncated(tag);
            const char q = t_[p];
            const auto close = t_.find(q, p + 1);
            if (close == std::string_view::npos) {
                const std::string_view partial = t_.substr(p + 1);
                if (key == "d") {
                    const auto prefix = parse_path_data_prefix(partial);
                    tag += " d=\"" + std::string(partial.substr(0, prefix.complete_end)) + "\"";
                } else if (key == "points") {
                    tag += " points=\"" + complete_points(partial) + "\"";
                }
                return finish_truncated(tag);
            }
            tag += ' ';
            tag.append(t_.substr(key_start, close + 1 - key_start));
            p = close + 1;
        }
    }

    bool finish_truncated(const std::string& tag) {
        out_ += tag + "/>";
        pos_ = t_.size();
        return false;
    }

    std::string_view t_;
    std::size_t pos_ = 0;
    std::string out_;
    std::vector<std::string> stack_;
};

bool parses(std::string_view text) {
    try {
        parse_svg(text);
        return true;
    } catch (const Error&) {
        return false;
    }
}

// Replaces the `d` value of the element starting at `offset` with its
// longest valid prefix.
bool truncate_path_at(std::string& text, std::size_t offset) {
    const auto gt = text.find('>', offset);
    auto d = text.find(" d=", offset);
    if (d == std::string::npos || (gt != std::string::npos && d > gt)) return false;
    d += 3;
    if (d >= text.size()) return false;
    const char q = text[d];
    const auto close = text.find(q, d + 1);
    if (close == std::string::npos) return false;
    const std::string value = text.substr(d + 1, close - d - 1);
    const auto prefix = parse_path_data_prefix(value);
    if (prefix.complete_end >= value.size()) return false;
    text.replace(d + 1, close - d - 1, value.substr(0, prefix.complete_end));
    return true;
}

}  // namespace

RepairResult repair(std::string_view text) {
    const auto svg_at = text.find("<svg");
    if (svg_at == std::string_view::npos) throw Unrepairable();

    RepairResult result;
    if (parses(text)) {
        result.text = std::string(text);
        result.report = validate(result.text);
        return result;
    }

    std::string out = Completer(text).run(svg_at);
    for (int attempt = 0; attempt < 64; ++attempt) {
        try {
            parse_svg(out);
            break;
        } catch (const MalformedPathData& e) {
            if (!truncate_path_at(out, e.offset())) {
                out.clear();
                break;
            }
        } catch (const Error&) {
            out.clear();
            break;
        }
    }
    if (out.empty() || !parses(out)) {
        // Keep only the root's complete opening tag.
        std::string root = Completer(text.substr(0, text.find('>', svg_at) == std::string_view::npos
                                                        ? text.size()
                                                        : text.find('>', svg_at) + 1))
                               .run(svg_at);
        out = parses(root) ? root : std::string("<svg xmlns=\"http://www.w3.org/2000/svg\"></svg>");
    }

    result.text = std::move(out);
    result.report = validate(result.text);
    result.report.repaired = result.text != text;
    std::size_t diverge = 0;
    while (diverge < text.size() && diverge < result.text.size() && text[diverge] == result.text[diverge]) ++diverge;
    result.report.issues.push_back({Severity::Info, "text repaired to a complete document", diverge});
    return result;
}

}  // namespace svgbench::svg
