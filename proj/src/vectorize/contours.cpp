#include <algorithm>
#include <numeric>

#include "svgbench/error.hpp"
#include "svgbench/vectorize.hpp"

namespace svgbench::vectorize {

double signed_area(const std::vector<Point>& loop) {
    double a = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Point& p = loop[i];
        const Point& q = loop[(i + 1) % loop.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

namespace {

// East, south, west, north; a right turn in image coordinates is +1.
constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

struct Edge {
    std::uint32_t from;
    std::uint8_t dir;
};

}  // namespace

std::vector<Contour> trace_contours(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    if (mask.count() == 0) throw EmptyMask();
    const std::uint32_t stride = static_cast<std::uint32_t>(w) + 1;
    auto vid = [stride](int x, int y) { return static_cast<std::uint32_t>(y) * stride + static_cast<std::uint32_t>(x); };

    std::vector<Edge> edges;
    std::vector<std::int32_t> out(static_cast<std::size_t>(stride) * (h + 1) * 4, -1);
    auto add = [&](int x, int y, int dir) {
        const std::uint32_t v = vid(x, y);
        out[v * 4 + dir] = static_cast<std::int32_t>(edges.size());
        edges.push_back({v, static_cast<std::uint8_t>(dir)});
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            if (y == 0 || !mask.at(x, y - 1)) add(x, y, 0);
            if (x + 1 == w || !mask.at(x + 1, y)) add(x + 1, y, 1);
            if (y + 1 == h || !mask.at(x, y + 1)) add(x + 1, y + 1, 2);
            if (x == 0 || !mask.at(x - 1, y)) add(x, y + 1, 3);
        }

    // Turning right first keeps diagonal neighbours in separate loops,
    // matching 4-connectivity.
    auto successor = [&](const Edge& e) -> std::int32_t {
        const int x = static_cast<int>(e.from % stride) + kDx[e.dir];
        const int y = static_cast<int>(e.from / stride) + kDy[e.dir];
        const std::uint32_t v = vid(x, y);
        for (int turn : {1, 0, 3}) {
            const std::int32_t next = out[v * 4 + (e.dir + turn) % 4];
            if (next >= 0) return next;
        }
        return -1;
    };

    std::vector<Contour> contours;
    std::vector<std::uint8_t> visited(edges.size(), 0);
    std::vector<std::uint32_t> loop_edges;
    for (std::size_t start = 0; start < edges.size(); ++start) {
        if (visited[start]) continue;
        loop_edges.clear();
        for (auto e = static_cast<std::int32_t>(start); !visited[static_cast<std::size_t>(e)]; e = successor(edges[e])) {
            visited[static_cast<std::size_t>(e)] = 1;
            loop_edges.push_back(static_cast<std::uint32_t>(e));
        }
        // Keep only corners where the direction changes.
        std::vector<std::uint32_t> corners;
        const std::size_t m = loop_edges.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Edge& prev = edges[loop_edges[(i + m - 1) % m]];
            const Edge& cur = edges[loop_edges[i]];
            if (prev.dir != cur.dir) corners.push_back(cur.from);
        }
        const auto first = std::min_element(corners.begin(), corners.end(), [stride](std::uint32_t a, std::uint32_t b) {
            return a / stride != b / stride ? a / stride < b / stride : a % stride < b % stride;
        });
        std::rotate(corners.begin(), first, corners.end());
        Contour c;
        c.points.reserve(corners.size());
        for (std::uint32_t v : corners) c.points.push_back({static_cast<double>(v % stride), static_cast<double>(v / stride)});
        c.is_hole = signed_area(c.points) < 0.0;
        contours.push_back(std::move(c));
    }
    return contours;
}

namespace {

void rdp(const std::vector<Point>& pts, std::size_t lo, std::size_t hi, double eps, std::vector<std::uint8_t>& keep) {
    if (hi <= lo + 1) return;
    double best = -1.0;
    std::size_t idx = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
        const double d = geometry::distance_to_segment(pts[i], pts[lo], pts[hi]);
        if (d > best) {
            best = d;
            idx = i;
        }
    }
    if (best > eps) {
        keep[idx] = 1;
        rdp(pts, lo, idx, eps, keep);
        rdp(pts, idx, hi, eps, keep);
    }
}

std::size_t farthest_from(const std::vector<Point>& pts, Point p) {
    std::size_t idx = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = geometry::squared_distance(pts[i], p);
        if (d > best) {
            best = d;
            idx = i;
        }
    }
    return idx;
}

}  // namespace

Contour simplify_polygon(const Contour& contour, double epsilon) {
    const std::size_t n = contour.points.size();
    if (n <= 3) return contour;
    const std::size_t a = farthest_from(contour.points, contour.points[0]);
    const std::size_t b = farthest_from(contour.points, contour.points[a]);
    const std::size_t lo = std::min(a, b), hi = std::max(a, b);
    if (lo == hi) return contour;

    // Unroll the loop so both chains are contiguous: lo..hi and hi..lo+n.
    std::vector<Point> ring(contour.points);
    ring.insert(ring.end(), contour.points.begin(), contour.points.end());
    std::vector<std::uint8_t> keep(2 * n, 0);
    keep[lo] = keep[hi] = 1;
    rdp(ring, lo, hi, epsilon, keep);
    rdp(ring, hi, lo + n, epsilon, keep);

    std::vector<std::uint8_t> kept(n, 0);
    for (std::size_t i = 0; i < 2 * n; ++i)
        if (keep[i]) kept[i % n] = 1;
    std::size_t count = static_cast<std::size_t>(std::accumulate(kept.begin(), kept.end(), 0));
    if (count < 3) {
        // Floor: add the point farthest from the chord.
        double best = -1.0;
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (kept[i]) continue;
            const double d = geometry::distance_to_segment(contour.points[i], contour.points[lo], contour.points[hi]);
            if (d > best) {
                best = d;
                idx = i;
            }
        }
        kept[idx] = 1;
    }
    Contour out;
    out.is_hole = contour.is_hole;
    for (std::size_t i = 0; i < n; ++i)
        if (kept[i]) out.points.push_back(contour.points[i]);
    return out;
}

}  // namespace svgbench::vectorize
