#include "xml.hpp"

#include <cctype>
#include <charconv>
#include <map>

#include "svgbench/error.hpp"

namespace svgbench::svg::xml {

const std::string* Element::attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes)
        if (k == key) return &v;
    return nullptr;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
           static_cast<unsigned char>(c) >= 0x80;
}
bool is_name_char(char c) {
    return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

class Reader {
public:
    explicit Reader(std::string_view text) : t_(text) {}

    Element run() {
        if (t_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
        std::vector<Element> stack;
        bool have_root = false;
        Element root;
        while (true) {
            // Text content up to the next tag.
            while (pos_ < t_.size() && t_[pos_] != '<') {
                if (stack.empty() && !is_space(t_[pos_]))
                    throw MalformedXml("character data outside the root element", pos_);
                ++pos_;
            }
            if (pos_ >= t_.size()) break;
            const std::size_t tag_start = pos_;
            if (starts_with("<?")) {
                skip_past("?>", "unterminated processing instruction");
            } else if (starts_with("<!--")) {
                skip_past("-->", "unterminated comment");
            } else if (starts_with("<![CDATA[")) {
                if (stack.empty()) throw MalformedXml("CDATA outside the root element", pos_);
                skip_past("]]>", "unterminated CDATA section");
            } else if (starts_with("<!")) {
                read_doctype();
            } else if (starts_with("</")) {
                pos_ += 2;
                const std::string name = read_name();
                skip_spaces();
                expect('>', "expected '>' to end closing tag");
                if (stack.empty() || stack.back().name != name)
                    throw MalformedXml("mismatched closing tag </" + name + ">", tag_start);
                Element done = std::move(stack.back());
                stack.pop_back();
                if (stack.empty()) {
                    root = std::move(done);
                    have_root = true;
                } else {
                    stack.back().children.push_back(std::move(done));
                }
            } else {
                if (have_root) throw MalformedXml("content after the root element", pos_);
                ++pos_;
                Element el;
                el.offset = tag_start;
                el.name = read_name();
                bool self_closing = false;
                while (true) {
                    const bool had_space = skip_spaces();
                    if (pos_ >= t_.size()) throw MalformedXml("unterminated start tag <" + el.name, tag_start);
                    if (t_[pos_] == '/') {
                        ++pos_;
                        expect('>', "expected '>' after '/'");
                        self_closing = true;
                        break;
                    }
                    if (t_[pos_] == '>') {
                        ++pos_;
                        break;
                    }
                    if (!had_space) throw MalformedXml("expected whitespace between attributes", pos_);
                    std::string key = read_name();
                    skip_spaces();
                    expect('=', "expected '=' after attribute name");
                    skip_spaces();
                    std::string value = read_quoted();
                    el.attributes.emplace_back(std::move(key), std::move(value));
                }
                if (self_closing) {
                    if (stack.empty()) {
                        root = std::move(el);
                        have_root = true;
                    } else {
                        stack.back().children.push_back(std::move(el));
                    }
                } else {
                    stack.push_back(std::move(el));
                }
            }
        }
        if (!stack.empty()) throw MalformedXml("unterminated element <" + stack.back().name + ">", t_.size());
        if (!have_root) throw MalformedXml("no root element", t_.size());
        return root;
    }

private:
    bool starts_with(std::string_view s) const { return t_.substr(pos_, s.size()) == s; }

    void skip_past(std::string_view terminator, const char* msg) {
        const std::size_t start = pos_;
        const auto at = t_.find(terminator, pos_);
        if (at == std::string_view::npos) throw MalformedXml(msg, start);
        pos_ = at + terminator.size();
    }

    bool skip_spaces() {
        const std::size_t before = pos_;
        while (pos_ < t_.size() && is_space(t_[pos_])) ++pos_;
        return pos_ != before;
    }

    void expect(char c, const char* msg) {
        if (pos_ >= t_.size() || t_[pos_] != c) throw MalformedXml(msg, pos_);
        ++pos_;
    }

    std::string read_name() {
        if (pos_ >= t_.size() || !is_name_start(t_[pos_])) throw MalformedXml("expected a name", pos_);
        const std::size_t start = pos_;
        while (pos_ < t_.size() && is_name_char(t_[pos_])) ++pos_;
        return std::string(t_.substr(start, pos_ - start));
    }

    std::string read_quoted() {
        if (pos_ >= t_.size() || (t_[pos_] != '"' && t_[pos_] != '\''))
            throw MalformedXml("expected a quoted attribute value", pos_);
        const char q = t_[pos_];
        const std::size_t start = pos_++;
        std::string out;
        while (true) {
            if (pos_ >= t_.size()) throw MalformedXml("unterminated attribute value", start);
            const char c = t_[pos_];
            if (c == q) {
                ++pos_;
                return out;
            }
            if (c == '<') throw MalformedXml("'<' in attribute value", pos_);
            if (c == '&') {
                decode_entity(out);
                continue;
            }
            out += c;
            ++pos_;
        }
    }

    void decode_entity(std::string& out) {
        const std::size_t start = pos_;
        const auto semi = t_.find(';', pos_);
        if (semi == std::string_view::npos || semi - pos_ > 32) throw MalformedXml("unterminated entity reference", start);
        const std::string_view name = t_.substr(pos_ + 1, semi - pos_ - 1);
        pos_ = semi + 1;
        if (!name.empty() && name[0] == '#') {
            unsigned long cp = 0;
            std::from_chars_result r{};
            if (name.size() > 1 && (name[1] == 'x' || name[1] == 'X'))
                r = std::from_chars(name.data() + 2, name.data() + name.size(), cp, 16);
            else
                r = std::from_chars(name.data() + 1, name.data() + name.size(), cp, 10);
            if (r.ec != std::errc() || r.ptr != name.data() + name.size() || cp > 0x10FFFF)
                throw MalformedXml("bad character reference", start);
            append_utf8(out, cp);
            return;
        }
        if (name == "lt") out += '<';
        else if (name == "gt") out += '>';
        else if (name == "amp") out += '&';
        else if (name == "quot") out += '"';
        else if (name == "apos") out += '\'';
        else if (auto it = entities_.find(std::string(name)); it != entities_.end()) out += it->second;
        else throw MalformedXml("unknown entity &" + std::string(name) + ";", start);
    }

    // <!DOCTYPE ... [ <!ENTITY name "value"> ... ]>
    void read_doctype() {
        const std::size_t start = pos_;
        pos_ += 2;
        int depth = 0;
        while (pos_ < t_.size()) {
            const char c = t_[pos_];
            if (c == '[') {
                ++depth;
            } else if (c == ']') {
                --depth;
            } else if (c == '>' && depth <= 0) {
                ++pos_;
                return;
            } else if (depth > 0 && starts_with("<!ENTITY")) {
                pos_ += 8;
                skip_spaces();
                std::string name = read_name();
                skip_spaces();
                if (pos_ < t_.size() && (t_[pos_] == '"' || t_[pos_] == '\'')) {
                    const char q = t_[pos_];
                    const auto end = t_.find(q, pos_ + 1);
                    if (end == std::string_view::npos) break;
                    entities_[name] = std::string(t_.substr(pos_ + 1, end - pos_ - 1));
                    pos_ = end + 1;
                }
                continue;
            } else if (depth > 0 && starts_with("<!--")) {
                skip_past("-->", "unterminated comment");
                continue;
            } else if (c == '"' || c == '\'') {
                const auto end = t_.find(c, pos_ + 1);
                if (end == std::string_view::npos) break;
                pos_ = end;
            }
            ++pos_;
        }
        throw MalformedXml("unterminated DOCTYPE", start);
    }

    std::string_view t_;
    std::size_t pos_ = 0;
    std::map<std::string, std::string> entities_;
};

}  // namespace

Element parse_document(std::string_view text) { return Reader(text).run(); }

}  // namespace svgbench::svg::xml
