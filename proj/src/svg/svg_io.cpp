#include "svgbench/svg_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "svgbench/error.hpp"
#include "svgbench/path_data.hpp"
#include "xml.hpp"

namespace svgbench::svg {

const char* severity_name(Severity s) {
    switch (s) {
        case Severity::Info: return "info";
        case Severity::Warning: return "warning";
        case Severity::Error: return "error";
    }
    return "?";
}

bool operator==(const GroupNode& lhs, const GroupNode& rhs) {
    return lhs.transform == rhs.transform && lhs.children == rhs.children;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Leading number of `s`; `rest` receives what follows it.
bool leading_number(std::string_view s, double& out, std::string_view& rest) {
    s = trim(s);
    std::size_t p = 0;
    if (p < s.size() && (s[p] == '+' || s[p] == '-')) ++p;
    std::size_t digits = 0;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p, ++digits;
    if (p < s.size() && s[p] == '.') {
        ++p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p, ++digits;
    }
    if (digits == 0) return false;
    if (p < s.size() && (s[p] == 'e' || s[p] == 'E')) {
        std::size_t q = p + 1;
        if (q < s.size() && (s[q] == '+' || s[q] == '-')) ++q;
        const std::size_t exp_start = q;
        while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
        if (q > exp_start) p = q;
    }
    const char* first = s.data() + (s[0] == '+' ? 1 : 0);
    const auto r = std::from_chars(first, s.data() + p, out);
    if (r.ec != std::errc() || !std::isfinite(out)) return false;
    rest = s.substr(p);
    return true;
}

// Whitespace/comma separated number list.
bool number_list(std::string_view s, std::vector<double>& out) {
    while (true) {
        while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.front())) || s.front() == ','))
            s.remove_prefix(1);
        if (s.empty()) return true;
        double v;
        std::string_view rest;
        if (!leading_number(s, v, rest)) return false;
        out.push_back(v);
        s = rest;
    }
}

const std::pair<const char*, Rgb> kNamedColors[] = {
    {"black", {0, 0, 0}},       {"silver", {192, 192, 192}}, {"gray", {128, 128, 128}},
    {"white", {255, 255, 255}}, {"maroon", {128, 0, 0}},     {"red", {255, 0, 0}},
    {"purple", {128, 0, 128}},  {"fuchsia", {255, 0, 255}},  {"green", {0, 128, 0}},
    {"lime", {0, 255, 0}},      {"olive", {128, 128, 0}},    {"yellow", {255, 255, 0}},
    {"navy", {0, 0, 128}},      {"blue", {0, 0, 255}},       {"teal", {0, 128, 128}},
    {"aqua", {0, 255, 255}},
};

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

std::uint8_t to_channel(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

std::optional<Rgb> parse_color(std::string_view text) {
    const auto s = trim(text);
    if (s.empty()) return std::nullopt;
    if (s[0] == '#') {
        const auto hex = s.substr(1);
        if (hex.size() != 3 && hex.size() != 6) return std::nullopt;
        int v[6];
        for (std::size_t i = 0; i < hex.size(); ++i)
            if ((v[i] = hex_digit(hex[i])) < 0) return std::nullopt;
        if (hex.size() == 3)
            return Rgb{static_cast<std::uint8_t>(v[0] * 17), static_cast<std::uint8_t>(v[1] * 17),
                       static_cast<std::uint8_t>(v[2] * 17)};
        return Rgb{static_cast<std::uint8_t>(v[0] * 16 + v[1]), static_cast<std::uint8_t>(v[2] * 16 + v[3]),
                   static_cast<std::uint8_t>(v[4] * 16 + v[5])};
    }
    const std::string l = lower(s);
    if (l.rfind("rgb(", 0) == 0 && l.back() == ')') {
        std::string_view body(l);
        body = body.substr(4, body.size() - 5);
        double ch[3];
        for (int i = 0; i < 3; ++i) {
            std::string_view rest;
            if (!leading_number(body, ch[i], rest)) return std::nullopt;
            rest = trim(rest);
            if (!rest.empty() && rest.front() == '%') {
                ch[i] = ch[i] * 255.0 / 100.0;
                rest.remove_prefix(1);
                rest = trim(rest);
            }
            if (i < 2) {
                if (rest.empty() || rest.front() != ',') return std::nullopt;
                rest.remove_prefix(1);
            } else if (!rest.empty()) {
                return std::nullopt;
            }
            body = rest;
        }
        return Rgb{to_channel(ch[0]), to_channel(ch[1]), to_channel(ch[2])};
    }
    for (const auto& [name, rgb] : kNamedColors)
        if (l == name) return rgb;
    return std::nullopt;
}

std::string format_color(const Rgb& c) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out = "#";
    for (const std::uint8_t v : {c.r, c.g, c.b}) {
        out += kHex[v >> 4];
        out += kHex[v & 15];
    }
    return out;
}

std::optional<AffineTransform> parse_transform(std::string_view text) {
    AffineTransform result;
    std::string_view s = text;
    while (true) {
        while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.front())) || s.front() == ','))
            s.remove_prefix(1);
        if (s.empty()) return result;
        std::size_t n = 0;
        while (n < s.size() && std::isalpha(static_cast<unsigned char>(s[n]))) ++n;
        const std::string name(s.substr(0, n));
        s.remove_prefix(n);
        s = trim(s);
        if (s.empty() || s.front() != '(') return std::nullopt;
        const auto close = s.find(')');
        if (close == std::string_view::npos) return std::nullopt;
        std::vector<double> a;
        if (!number_list(s.substr(1, close - 1), a)) return std::nullopt;
        s.remove_prefix(close + 1);

        AffineTransform t;
        if (name == "matrix" && a.size() == 6) {
            t = {a[0], a[1], a[2], a[3], a[4], a[5]};
        } else if (name == "translate" && (a.size() == 1 || a.size() == 2)) {
            t = AffineTransform::translate(a[0], a.size() == 2 ? a[1] : 0.0);
        } else if (name == "scale" && (a.size() == 1 || a.size() == 2)) {
            t = AffineTransform::scale(a[0], a.size() == 2 ? a[1] : a[0]);
        } else if (name == "rotate" && a.size() == 1) {
            t = AffineTransform::rotate_deg(a[0]);
        } else if (name == "rotate" && a.size() == 3) {
            t = AffineTransform::rotate_deg(a[0], {a[1], a[2]});
        } else if (name == "skewX" && a.size() == 1) {
            t = AffineTransform::skew_x_deg(a[0]);
        } else if (name == "skewY" && a.size() == 1) {
            t = AffineTransform::skew_y_deg(a[0]);
        } else {
            return std::nullopt;
        }
        result = result * t;
    }
}

namespace {

// Un-premultiplied paint as inherited down the tree.
struct RawPaint {
    std::optional<Rgb> fill = Rgb{0, 0, 0};
    std::optional<Rgb> stroke;
    double stroke_width = 1.0;
    FillRule fill_rule = FillRule::NonZero;
    double fill_opacity = 1.0;
    double stroke_opacity = 1.0;
};

struct Context {
    RawPaint raw;
    double opacity = 1.0;  // product of ancestor group opacities
};

const std::set<std::string, std::less<>> kInfoElements = {"title", "desc", "metadata"};

class Interpreter {
public:
    Interpreter(std::vector<Issue>* issues) : issues_(issues) {}

    SvgDocument run(const xml::Element& root) {
        std::string_view name = local_name(root.name);
        if (name != "svg") throw MalformedXml("root element is <" + root.name + ">, not <svg>", root.offset);
        SvgDocument doc;
        if (const auto* vb = root.attribute("viewBox")) {
            std::vector<double> v;
            if (number_list(*vb, v) && v.size() == 4 && v[2] > 0 && v[3] > 0)
                doc.view_box = ViewBox{v[0], v[1], v[2], v[3]};
            else
                warn("invalid viewBox ignored", root.offset);
        }
        if (const auto* w = root.attribute("width")) doc.width_attr = size_attribute(*w, root.offset);
        if (const auto* h = root.attribute("height")) doc.height_attr = size_attribute(*h, root.offset);
        percent_base_ = doc.view_box ? *doc.view_box
                                     : ViewBox{0, 0, doc.width_attr.value_or(100), doc.height_attr.value_or(100)};
        if (root.attribute("transform")) warn("transform on <svg> ignored", root.offset);

        Context ctx;
        double own_opacity = 1.0;
        apply_paint_attributes(root, ctx.raw, own_opacity);
        ctx.opacity *= own_opacity;
        doc.root = children(root, ctx);
        return doc;
    }

private:
    static std::string_view local_name(std::string_view name) {
        if (name.rfind("svg:", 0) == 0) name.remove_prefix(4);
        return name;
    }

    void warn(std::string msg, std::size_t offset, Severity sev = Severity::Warning) {
        if (issues_) issues_->push_back({sev, std::move(msg), offset});
    }

    std::optional<double> size_attribute(const std::string& value, std::size_t offset) {
        double v;
        std::string_view rest;
        if (!leading_number(value, v, rest) || v <= 0) {
            warn("unusable width/height '" + value + "'", offset);
            return std::nullopt;
        }
        const auto unit = lower(trim(rest));
        if (unit == "%") return std::nullopt;
        const auto scale = unit_scale(unit);
        if (!scale) {
            warn("unknown unit in '" + value + "'", offset);
            return v;
        }
        return v * *scale;
    }

    static std::optional<double> unit_scale(std::string_view unit) {
        if (unit.empty() || unit == "px") return 1.0;
        if (unit == "pt") return 4.0 / 3.0;
        if (unit == "pc") return 16.0;
        if (unit == "mm") return 96.0 / 25.4;
        if (unit == "cm") return 96.0 / 2.54;
        if (unit == "in") return 96.0;
        if (unit == "em") return 16.0;
        if (unit == "ex") return 8.0;
        return std::nullopt;
    }

    enum class Axis { X, Y, Diagonal };

    double length(const xml::Element& el, std::string_view key, Axis axis, double fallback = 0.0) {
        const auto* value = el.attribute(key);
        if (!value) return fallback;
        double v;
        std::string_view rest;
        if (!leading_number(*value, v, rest)) {
            warn("invalid number in " + std::string(key) + "=\"" + *value + "\"", el.offset);
            return fallback;
        }
        const auto unit = lower(trim(rest));
        if (unit == "%") {
            const double base = axis == Axis::X   ? percent_base_.width
                                : axis == Axis::Y ? percent_base_.height
                                                  : std::hypot(percent_base_.width, percent_base_.height) /
                                                        std::sqrt(2.0);
            return v * base / 100.0;
        }
        const auto scale = unit_scale(unit);
        if (!scale) {
            warn("unknown unit in " + std::string(key) + "=\"" + *value + "\"", el.offset);
            return v;
        }
        return v * *scale;
    }

    void apply_paint_value(std::string_view key, std::string_view value, RawPaint& raw, double& opacity,
                           std::size_t offset) {
        value = trim(value);
        if (value == "inherit") return;
        if (key == "fill" || key == "stroke") {
            std::optional<Rgb>& slot = key == "fill" ? raw.fill : raw.stroke;
            if (value == "none" || value == "transparent") {
                slot.reset();
            } else if (auto c = parse_color(value)) {
                slot = *c;
            } else {
                // Paint servers and unknown keywords fall back to black.
                warn("unsupported color '" + std::string(value) + "' treated as black", offset);
                slot = Rgb{0, 0, 0};
            }
        } else if (key == "stroke-width") {
            double v;
            std::string_view rest;
            if (leading_number(value, v, rest) && v >= 0) {
                const auto unit = lower(trim(rest));
                const auto scale = unit == "%" ? std::optional<double>(percent_base_.width / 100.0) : unit_scale(unit);
                raw.stroke_width = v * scale.value_or(1.0);
            } else {
                warn("invalid stroke-width '" + std::string(value) + "'", offset);
            }
        } else if (key == "fill-rule") {
            if (value == "evenodd") raw.fill_rule = FillRule::EvenOdd;
            else if (value == "nonzero") raw.fill_rule = FillRule::NonZero;
            else warn("invalid fill-rule '" + std::string(value) + "'", offset);
        } else if (key == "opacity" || key == "fill-opacity" || key == "stroke-opacity") {
            double v;
            std::string_view rest;
            if (!leading_number(value, v, rest)) {
                warn("invalid " + std::string(key), offset);
                return;
            }
            if (trim(rest) == "%") v /= 100.0;
            v = std::clamp(v, 0.0, 1.0);
            if (key == "opacity") opacity = v;
            else if (key == "fill-opacity") raw.fill_opacity = v;
            else raw.stroke_opacity = v;
        }
    }

    void apply_paint_attributes(const xml::Element& el, RawPaint& raw, double& opacity) {
        static constexpr std::string_view kKeys[] = {"fill", "stroke", "stroke-width", "fill-rule",
                                                     "opacity", "fill-opacity", "stroke-opacity"};
        for (const auto key : kKeys)
            if (const auto* v = el.attribute(key)) apply_paint_value(key, *v, raw, opacity, el.offset);
        // Inline style declarations override presentation attributes.
        if (const auto* style = el.attribute("style")) {
            std::string_view s = *style;
            while (!s.empty()) {
                const auto semi = s.find(';');
                const auto decl = s.substr(0, semi);
                s = semi == std::string_view::npos ? std::string_view{} : s.substr(semi + 1);
                const auto colon = decl.find(':');
                if (colon == std::string_view::npos) continue;
                const auto key = lower(trim(decl.substr(0, colon)));
                if (key == "fill" || key == "stroke" || key == "stroke-width" || key == "fill-rule")
                    apply_paint_value(key, decl.substr(colon + 1), raw, opacity, el.offset);
            }
        }
    }

    static std::optional<Rgb> composite(const std::optional<Rgb>& c, double alpha) {
        if (!c || alpha >= 1.0) return c;
        auto ch = [&](std::uint8_t v) { return to_channel(alpha * v + (1.0 - alpha) * 255.0); };
        return Rgb{ch(c->r), ch(c->g), ch(c->b)};
    }

    static Paint resolve(const Context& ctx) {
        Paint p;
        p.fill = composite(ctx.raw.fill, ctx.opacity * ctx.raw.fill_opacity);
        p.stroke = composite(ctx.raw.stroke, ctx.opacity * ctx.raw.stroke_opacity);
        p.stroke_width = ctx.raw.stroke_width;
        p.fill_rule = ctx.raw.fill_rule;
        return p;
    }

    std::vector<Node> children(const xml::Element& parent, const Context& ctx) {
        std::vector<Node> out;
        for (const auto& child : parent.children)
            if (auto node = element(child, ctx)) out.push_back(std::move(*node));
        return out;
    }

    std::vector<Point> points_attribute(const xml::Element& el) {
        std::vector<double> v;
        const auto* attr = el.attribute("points");
        if (attr && !number_list(*attr, v)) warn("malformed points list", el.offset);
        if (v.size() % 2 != 0) {
            warn("odd number of coordinates in points", el.offset);
            v.pop_back();
        }
        std::vector<Point> pts;
        for (std::size_t i = 0; i + 1 < v.size(); i += 2) pts.push_back({v[i], v[i + 1]});
        return pts;
    }

    std::optional<Node> element(const xml::Element& el, const Context& parent_ctx) {
        const std::string_view name = local_name(el.name);
        Context ctx = parent_ctx;
        double own_opacity = 1.0;
        apply_paint_attributes(el, ctx.raw, own_opacity);
        ctx.opacity *= own_opacity;

        Node node;
        node.paint = resolve(ctx);
        if (name == "g") {
            GroupNode g;
            g.children = children(el, ctx);
            node.kind = std::move(g);
        } else if (name == "path") {
            const auto* d = el.attribute("d");
            Path path;
            if (d) {
                try {
                    path = parse_path_data(*d);
                } catch (const MalformedPathData& e) {
                    throw MalformedPathData(std::string("in <path>: ") + e.what(), e.command_index(), el.offset);
                }
            }
            if (path.empty()) {
                warn("<path> without path data skipped", el.offset);
                return std::nullopt;
            }
            node.kind = PathNode{std::move(path)};
        } else if (name == "rect") {
            RectNode r{length(el, "x", Axis::X), length(el, "y", Axis::Y), length(el, "width", Axis::X),
                       length(el, "height", Axis::Y), 0, 0};
            const bool has_rx = el.attribute("rx") != nullptr;
            const bool has_ry = el.attribute("ry") != nullptr;
            r.rx = length(el, "rx", Axis::X);
            r.ry = length(el, "ry", Axis::Y);
            if (has_rx && !has_ry) r.ry = r.rx;
            if (has_ry && !has_rx) r.rx = r.ry;
            if (r.width < 0 || r.height < 0 || r.rx < 0 || r.ry < 0) {
                warn("<rect> with negative size skipped", el.offset);
                return std::nullopt;
            }
            r.rx = std::min(r.rx, r.width / 2);
            r.ry = std::min(r.ry, r.height / 2);
            node.kind = r;
        } else if (name == "circle") {
            CircleNode c{length(el, "cx", Axis::X), length(el, "cy", Axis::Y), length(el, "r", Axis::Diagonal)};
            if (c.r < 0) {
                warn("<circle> with negative radius skipped", el.offset);
                return std::nullopt;
            }
            node.kind = c;
        } else if (name == "ellipse") {
            EllipseNode e{length(el, "cx", Axis::X), length(el, "cy", Axis::Y), length(el, "rx", Axis::X),
                          length(el, "ry", Axis::Y)};
            if (!el.attribute("ry")) e.ry = e.rx;
            if (!el.attribute("rx")) e.rx = e.ry;
            if (e.rx < 0 || e.ry < 0) {
                warn("<ellipse> with negative radius skipped", el.offset);
                return std::nullopt;
            }
            node.kind = e;
        } else if (name == "line") {
            node.kind = LineNode{length(el, "x1", Axis::X), length(el, "y1", Axis::Y), length(el, "x2", Axis::X),
                                 length(el, "y2", Axis::Y)};
        } else if (name == "polyline") {
            node.kind = PolylineNode{points_attribute(el)};
        } else if (name == "polygon") {
            node.kind = PolygonNode{points_attribute(el)};
        } else {
            const bool info = kInfoElements.count(name) || name.find(':') != std::string_view::npos;
            warn("unsupported element <" + el.name + "> skipped", el.offset, info ? Severity::Info : Severity::Warning);
            return std::nullopt;
        }

        if (const auto* tr = el.attribute("transform")) {
            auto t = parse_transform(*tr);
            if (!t) {
                warn("invalid transform '" + *tr + "' ignored", el.offset);
            } else if (auto* g = std::get_if<GroupNode>(&node.kind)) {
                g->transform = *t;
            } else if (!t->is_identity()) {
                // Non-group elements carry their transform on a wrapper group.
                Node wrapper;
                wrapper.paint = resolve(parent_ctx);
                GroupNode g;
                g.transform = *t;
                g.children.push_back(std::move(node));
                wrapper.kind = std::move(g);
                return wrapper;
            }
        }
        return node;
    }

    std::vector<Issue>* issues_;
    ViewBox percent_base_;
};

// --- serialization -------------------------------------------------------

void attr(std::string& out, std::string_view key, const std::string& value) {
    out += ' ';
    out += key;
    out += "=\"";
    out += value;
    out += '"';
}

void num_attr(std::string& out, std::string_view key, double v) { attr(out, key, format_number(v)); }

std::string points_value(const std::vector<Point>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ' ';
        s += format_number(pts[i].x);
        s += ',';
        s += format_number(pts[i].y);
    }
    return s;
}

void paint_attrs(std::string& out, const Paint& p, const Paint& parent) {
    if (p.fill != parent.fill) attr(out, "fill", p.fill ? format_color(*p.fill) : "none");
    if (p.stroke != parent.stroke) attr(out, "stroke", p.stroke ? format_color(*p.stroke) : "none");
    if (p.stroke_width != parent.stroke_width) num_attr(out, "stroke-width", p.stroke_width);
    if (p.fill_rule != parent.fill_rule)
        attr(out, "fill-rule", p.fill_rule == FillRule::EvenOdd ? "evenodd" : "nonzero");
}

void write_node(std::string& out, const Node& n, const Paint& parent) {
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, GroupNode>) {
                out += "<g";
                paint_attrs(out, n.paint, parent);
                if (!k.transform.is_identity()) {
                    const auto& t = k.transform;
                    attr(out, "transform",
                         "matrix(" + format_number(t.a) + ' ' + format_number(t.b) + ' ' + format_number(t.c) + ' ' +
                             format_number(t.d) + ' ' + format_number(t.e) + ' ' + format_number(t.f) + ')');
                }
                out += '>';
                for (const auto& c : k.children) write_node(out, c, n.paint);
                out += "</g>";
                return;
            } else if constexpr (std::is_same_v<T, PathNode>) {
                out += "<path";
                attr(out, "d", format_path_data(k.commands));
            } else if constexpr (std::is_same_v<T, RectNode>) {
                out += "<rect";
                num_attr(out, "x", k.x);
                num_attr(out, "y", k.y);
                num_attr(out, "width", k.width);
                num_attr(out, "height", k.height);
                if (k.rx != 0 || k.ry != 0) {
                    num_attr(out, "rx", k.rx);
                    num_attr(out, "ry", k.ry);
                }
            } else if constexpr (std::is_same_v<T, CircleNode>) {
                out += "<circle";
                num_attr(out, "cx", k.cx);
                num_attr(out, "cy", k.cy);
                num_attr(out, "r", k.r);
            } else if constexpr (std::is_same_v<T, EllipseNode>) {
                out += "<ellipse";
                num_attr(out, "cx", k.cx);
                num_attr(out, "cy", k.cy);
                num_attr(out, "rx", k.rx);
                num_attr(out, "ry", k.ry);
            } else if constexpr (std::is_same_v<T, LineNode>) {
                out += "<line";
                num_attr(out, "x1", k.x1);
                num_attr(out, "y1", k.y1);
                num_attr(out, "x2", k.x2);
                num_attr(out, "y2", k.y2);
            } else if constexpr (std::is_same_v<T, PolylineNode>) {
                out += "<polyline";
                attr(out, "points", points_value(k.points));
            } else if constexpr (std::is_same_v<T, PolygonNode>) {
                out += "<polygon";
                attr(out, "points", points_value(k.points));
            }
            paint_attrs(out, n.paint, parent);
            out += "/>";
        },
        n.kind);
}

}  // namespace

SvgDocument parse_svg(std::string_view text, std::vector<Issue>* issues) {
    const xml::Element root = xml::parse_document(text);
    return Interpreter(issues).run(root);
}

std::string serialize(const SvgDocument& doc) {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\"";
    if (doc.width_attr) num_attr(out, "width", *doc.width_attr);
    if (doc.height_attr) num_attr(out, "height", *doc.height_attr);
    if (doc.view_box) {
        const auto& v = *doc.view_box;
        attr(out, "viewBox",
             format_number(v.min_x) + ' ' + format_number(v.min_y) + ' ' + format_number(v.width) + ' ' +
                 format_number(v.height));
    }
    out += '>';
    const Paint initial;
    for (const auto& n : doc.root) write_node(out, n, initial);
    out += "</svg>";
    return out;
}

}  // namespace svgbench::svg
