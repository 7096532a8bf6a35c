#include <algorithm>
#include <limits>

#include "svgbench/error.hpp"
#include "svgbench/metrics.hpp"
#include "svgbench/simd.hpp"

namespace svgbench::metrics {

using geometry::Point;

namespace {

constexpr std::uint32_t kLeafSize = 16;

double box_distance_squared(double lo, double hi, double v) {
    if (v < lo) return (lo - v) * (lo - v);
    if (v > hi) return (v - hi) * (v - hi);
    return 0.0;
}

}  // namespace

KdTree::KdTree(const std::vector<Point>& points) {
    if (points.empty()) return;
    std::vector<Point> pts = points;
    xs_.reserve(pts.size());
    ys_.reserve(pts.size());
    nodes_.reserve(2 * (pts.size() / kLeafSize + 1));
    build(pts, 0, static_cast<std::uint32_t>(pts.size()));
}

std::uint32_t KdTree::build(std::vector<Point>& pts, std::uint32_t begin, std::uint32_t end) {
    const std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    Node node;
    node.min_x = node.min_y = std::numeric_limits<double>::infinity();
    node.max_x = node.max_y = -std::numeric_limits<double>::infinity();
    for (std::uint32_t i = begin; i < end; ++i) {
        node.min_x = std::min(node.min_x, pts[i].x);
        node.max_x = std::max(node.max_x, pts[i].x);
        node.min_y = std::min(node.min_y, pts[i].y);
        node.max_y = std::max(node.max_y, pts[i].y);
    }
    if (end - begin <= kLeafSize) {
        node.begin = static_cast<std::uint32_t>(xs_.size());
        for (std::uint32_t i = begin; i < end; ++i) {
            xs_.push_back(pts[i].x);
            ys_.push_back(pts[i].y);
        }
        node.end = static_cast<std::uint32_t>(xs_.size());
        nodes_[id] = node;
        return id;
    }
    node.axis = (node.max_x - node.min_x) >= (node.max_y - node.min_y) ? 0 : 1;
    const std::uint32_t mid = begin + (end - begin) / 2;
    const int axis = node.axis;
    std::nth_element(pts.begin() + begin, pts.begin() + mid, pts.begin() + end, [axis](const Point& l, const Point& r) {
        return axis == 0 ? l.x < r.x : l.y < r.y;
    });
    node.split = axis == 0 ? pts[mid].x : pts[mid].y;
    nodes_[id] = node;
    const std::uint32_t left = build(pts, begin, mid);
    const std::uint32_t right = build(pts, mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

void KdTree::search(std::uint32_t id, Point q, double& best) const {
    const Node& node = nodes_[id];
    const double bound = box_distance_squared(node.min_x, node.max_x, q.x) + box_distance_squared(node.min_y, node.max_y, q.y);
    if (bound >= best) return;
    if (node.axis < 0) {
        const double d = simd::kernels().min_squared_distance(q.x, q.y, xs_.data() + node.begin, ys_.data() + node.begin,
                                                              node.end - node.begin);
        best = std::min(best, d);
        return;
    }
    const double v = node.axis == 0 ? q.x : q.y;
    if (v < node.split) {
        search(node.left, q, best);
        search(node.right, q, best);
    } else {
        search(node.right, q, best);
        search(node.left, q, best);
    }
}

double KdTree::nearest_squared(Point q) const {
    double best = std::numeric_limits<double>::infinity();
    if (!nodes_.empty()) search(0, q, best);
    return best;
}

namespace {

double mean_nearest(const std::vector<Point>& from, const KdTree& to) {
    std::vector<double> d(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) d[i] = to.nearest_squared(from[i]);
    return pairwise_sum(d) / static_cast<double>(from.size());
}

}  // namespace

double chamfer(const geometry::PointSet& a, const geometry::PointSet& b) {
    if (a.empty() || b.empty()) throw EmptyGeometry("chamfer distance needs two non-empty point sets");
    const KdTree ta(a.points);
    const KdTree tb(b.points);
    return mean_nearest(a.points, tb) + mean_nearest(b.points, ta);
}

double chamfer(const svg::SvgDocument& a, const svg::SvgDocument& b, double step) {
    return chamfer(geometry::sample_points(a, step), geometry::sample_points(b, step));
}

}  // namespace svgbench::metrics
