#include "svgbench/path_data.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

#include "svgbench/error.hpp"

namespace svgbench::svg {

char command_letter(PathOp op, bool relative) {
    static constexpr char kUpper[] = {'M', 'L', 'H', 'V', 'C', 'S', 'Q', 'T', 'A', 'Z'};
    const char c = kUpper[static_cast<int>(op)];
    return relative ? static_cast<char>(std::tolower(static_cast<unsigned char>(c))) : c;
}

namespace {

bool is_wsp(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

bool command_from_letter(char c, PathOp& op, bool& relative) {
    relative = std::islower(static_cast<unsigned char>(c)) != 0;
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'M': op = PathOp::MoveTo; return true;
        case 'L': op = PathOp::LineTo; return true;
        case 'H': op = PathOp::HLineTo; return true;
        case 'V': op = PathOp::VLineTo; return true;
        case 'C': op = PathOp::CubicTo; return true;
        case 'S': op = PathOp::SmoothCubicTo; return true;
        case 'Q': op = PathOp::QuadTo; return true;
        case 'T': op = PathOp::SmoothQuadTo; return true;
        case 'A': op = PathOp::ArcTo; return true;
        case 'Z': op = PathOp::ClosePath; return true;
        default: return false;
    }
}

const char* op_name(PathOp op) {
    static constexpr const char* kNames[] = {"MoveTo", "LineTo", "HLineTo", "VLineTo", "CubicTo",
                                             "SmoothCubicTo", "QuadTo", "SmoothQuadTo", "ArcTo",
                                             "ClosePath"};
    return kNames[static_cast<int>(op)];
}

class PathScanner {
public:
    explicit PathScanner(std::string_view d) : d_(d) {}

    void skip_separators() {
        while (pos_ < d_.size() && (is_wsp(d_[pos_]) || d_[pos_] == ',')) ++pos_;
    }
    void skip_wsp() {
        while (pos_ < d_.size() && is_wsp(d_[pos_])) ++pos_;
    }
    bool at_end() const { return pos_ >= d_.size(); }
    char peek() const { return d_[pos_]; }
    void advance() { ++pos_; }
    std::size_t pos() const { return pos_; }

    bool at_number_start() const {
        if (at_end()) return false;
        const char c = d_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
    }

    // SVG number: sign? (digits ('.' digits*)? | '.' digits) exponent?
    bool read_number(double& out) {
        const std::size_t start = pos_;
        std::size_t p = pos_;
        if (p < d_.size() && (d_[p] == '+' || d_[p] == '-')) ++p;
        std::size_t digits = 0;
        while (p < d_.size() && std::isdigit(static_cast<unsigned char>(d_[p]))) ++p, ++digits;
        if (p < d_.size() && d_[p] == '.') {
            ++p;
            while (p < d_.size() && std::isdigit(static_cast<unsigned char>(d_[p]))) ++p, ++digits;
        }
        if (digits == 0) return false;
        if (p < d_.size() && (d_[p] == 'e' || d_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < d_.size() && (d_[q] == '+' || d_[q] == '-')) ++q;
            std::size_t exp_digits = 0;
            while (q < d_.size() && std::isdigit(static_cast<unsigned char>(d_[q]))) ++q, ++exp_digits;
            if (exp_digits == 0) return false;
            p = q;
        }
        const char* first = d_.data() + start;
        if (*first == '+') ++first;
        const auto result = std::from_chars(first, d_.data() + p, out);
        if (result.ec != std::errc() || !std::isfinite(out)) return false;
        pos_ = p;
        return true;
    }

    bool read_flag(double& out) {
        if (at_end()) return false;
        const char c = d_[pos_];
        if (c != '0' && c != '1') return false;
        out = c == '1' ? 1.0 : 0.0;
        ++pos_;
        return true;
    }

private:
    std::string_view d_;
    std::size_t pos_ = 0;
};

// Parses into `out`. In strict mode throws on the first violation; in lenient
// mode stops there and leaves out.ok = false.
void parse_impl(std::string_view d, bool strict, PathPrefix& out) {
    PathScanner s(d);
    auto fail = [&](const std::string& msg) {
        if (strict) throw MalformedPathData(msg, out.commands.size());
        out.ok = false;
    };

    s.skip_wsp();
    if (s.at_end()) {
        out.complete_end = 0;
        return;
    }
    bool first = true;
    while (true) {
        s.skip_wsp();
        if (s.at_end()) return;
        PathOp op;
        bool relative;
        if (!command_from_letter(s.peek(), op, relative)) {
            fail(std::string("unexpected character '") + s.peek() + "' in path data");
            return;
        }
        if (first && op != PathOp::MoveTo) {
            fail("path data must begin with a MoveTo");
            return;
        }
        first = false;
        s.advance();

        if (op == PathOp::ClosePath) {
            out.commands.push_back({PathOp::ClosePath, relative, {}});
            out.complete_end = s.pos();
            continue;
        }

        const int n = arity(op);
        bool first_tuple = true;
        while (true) {
            s.skip_separators();
            if (!first_tuple && !s.at_number_start()) break;
            PathCommand cmd{op, relative, {}};
            if (op == PathOp::MoveTo && !first_tuple) cmd.op = PathOp::LineTo;
            for (int i = 0; i < n; ++i) {
                if (i > 0) s.skip_separators();
                const bool is_flag = op == PathOp::ArcTo && (i == 3 || i == 4);
                const bool got = is_flag ? s.read_flag(cmd.args[i]) : s.read_number(cmd.args[i]);
                if (!got) {
                    fail(std::string(op_name(op)) + " requires " + std::to_string(n) +
                         (is_flag ? " arguments (flag must be 0 or 1)" : " numbers"));
                    return;
                }
                if (op == PathOp::ArcTo && i < 2 && cmd.args[i] < 0) cmd.args[i] = -cmd.args[i];
            }
            out.commands.push_back(cmd);
            out.complete_end = s.pos();
            first_tuple = false;
        }
    }
}

}  // namespace

Path parse_path_data(std::string_view d) {
    PathPrefix out;
    parse_impl(d, true, out);
    return std::move(out.commands);
}

PathPrefix parse_path_data_prefix(std::string_view d) {
    PathPrefix out;
    parse_impl(d, false, out);
    return out;
}

std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_path_data(const Path& path) {
    std::string out;
    for (const auto& cmd : path) {
        out += command_letter(cmd.op, cmd.relative);
        const int n = arity(cmd.op);
        for (int i = 0; i < n; ++i) {
            if (i > 0) out += ' ';
            out += format_number(cmd.args[i]);
        }
    }
    return out;
}

bool is_absolute(const Path& path) {
    for (const auto& c : path) {
        if (c.relative) return false;
        switch (c.op) {
            case PathOp::HLineTo:
            case PathOp::VLineTo:
            case PathOp::SmoothCubicTo:
            case PathOp::SmoothQuadTo: return false;
            default: break;
        }
    }
    return true;
}

Path to_absolute(const Path& path) {
    Path out;
    out.reserve(path.size());
    Point cur, start;
    Point last_cubic_ctrl, last_quad_ctrl;
    PathOp prev = PathOp::MoveTo;
    for (const auto& cmd : path) {
        const auto& a = cmd.args;
        const Point base = cmd.relative ? cur : Point{};
        auto pt = [&](int i) { return Point{a[i] + base.x, a[i + 1] + base.y}; };
        switch (cmd.op) {
            case PathOp::MoveTo: {
                cur = start = pt(0);
                out.push_back(PathCommand::move_to(cur.x, cur.y));
                break;
            }
            case PathOp::LineTo: {
                cur = pt(0);
                out.push_back(PathCommand::line_to(cur.x, cur.y));
                break;
            }
            case PathOp::HLineTo: {
                cur = {a[0] + base.x, cur.y};
                out.push_back(PathCommand::line_to(cur.x, cur.y));
                break;
            }
            case PathOp::VLineTo: {
                cur = {cur.x, a[0] + (cmd.relative ? cur.y : 0.0)};
                out.push_back(PathCommand::line_to(cur.x, cur.y));
                break;
            }
            case PathOp::CubicTo: {
                const Point c1 = pt(0), c2 = pt(2), p = pt(4);
                out.push_back(PathCommand::cubic_to(c1, c2, p));
                last_cubic_ctrl = c2;
                cur = p;
                break;
            }
            case PathOp::SmoothCubicTo: {
                const bool reflect = prev == PathOp::CubicTo || prev == PathOp::SmoothCubicTo;
                const Point c1 = reflect ? cur + (cur - last_cubic_ctrl) : cur;
                const Point c2 = pt(0), p = pt(2);
                out.push_back(PathCommand::cubic_to(c1, c2, p));
                last_cubic_ctrl = c2;
                cur = p;
                break;
            }
            case PathOp::QuadTo: {
                const Point c = pt(0), p = pt(2);
                out.push_back(PathCommand::quad_to(c, p));
                last_quad_ctrl = c;
                cur = p;
                break;
            }
            case PathOp::SmoothQuadTo: {
                const bool reflect = prev == PathOp::QuadTo || prev == PathOp::SmoothQuadTo;
                const Point c = reflect ? cur + (cur - last_quad_ctrl) : cur;
                const Point p = pt(0);
                out.push_back(PathCommand::quad_to(c, p));
                last_quad_ctrl = c;
                cur = p;
                break;
            }
            case PathOp::ArcTo: {
                const Point p = pt(5);
                out.push_back(PathCommand::arc_to(a[0], a[1], a[2], a[3] != 0, a[4] != 0, p));
                cur = p;
                break;
            }
            case PathOp::ClosePath: {
                out.push_back(PathCommand::close());
                cur = start;
                break;
            }
        }
        prev = cmd.op;
    }
    return out;
}

Path to_cubics(const Path& absolute) {
    Path out;
    out.reserve(absolute.size());
    Point cur, start;
    for (const auto& cmd : absolute) {
        const auto& a = cmd.args;
        switch (cmd.op) {
            case PathOp::MoveTo:
                cur = start = {a[0], a[1]};
                out.push_back(cmd);
                break;
            case PathOp::QuadTo: {
                const auto c = geometry::quad_to_cubic({cur, {a[0], a[1]}, {a[2], a[3]}});
                out.push_back(PathCommand::cubic_to(c.p1, c.p2, c.p3));
                cur = c.p3;
                break;
            }
            case PathOp::ArcTo: {
                const Point end{a[5], a[6]};
                for (const auto& c : geometry::arc_to_cubics(cur, {a[0], a[1], a[2], a[3] != 0, a[4] != 0, end}))
                    out.push_back(PathCommand::cubic_to(c.p1, c.p2, c.p3));
                cur = end;
                break;
            }
            case PathOp::ClosePath:
                out.push_back(cmd);
                cur = start;
                break;
            case PathOp::LineTo:
                cur = {a[0], a[1]};
                out.push_back(cmd);
                break;
            case PathOp::CubicTo:
                cur = {a[4], a[5]};
                out.push_back(cmd);
                break;
            default:
                // H/V/S/T are not legal in an absolute path.
                out.push_back(cmd);
                break;
        }
    }
    return out;
}

}  // namespace svgbench::svg
