#include "probelab/displacement_path.hpp"

#include <cmath>
#include <functional>

#include "probelab/errors.hpp"
#include "probelab/rng.hpp"

namespace probelab {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2 = 0.7071067811865476;
constexpr double kSlopeTol = 1e-12;
constexpr std::uint64_t kTieStream = 0x7ac3b11d;

struct Builder {
  std::vector<RotatedPoint> dots;  // grid dots in the rotated frame
  std::vector<int> colors;         // +1 blue, -1 red
  std::vector<SegmentNode> nodes;
  RngStream ties;
  double max_depth = 0.0;
  double scale = 1.0;

  Builder(std::uint64_t seed) : ties(derive_seed(seed, kTieStream, 0)) {}

  // Signed blue-minus-red count over the slab of `node` (closed boundaries).
  std::int64_t slab_surplus(const SegmentNode& node) const {
    const double lo = node.u_lo();
    const double hi = node.u_hi();
    const double half = node.q / 2.0;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < dots.size(); ++i) {
      const double u = dots[i].u;
      if (u < lo || u > hi) continue;
      if (std::fabs(dots[i].v - node.line_v_at(u)) <= half) total += colors[i];
    }
    return total;
  }

  std::int32_t build(RotatedPoint a, RotatedPoint b, std::uint32_t depth) {
    const std::int32_t idx = static_cast<std::int32_t>(nodes.size());
    nodes.push_back(SegmentNode{});
    SegmentNode node;
    node.a = a;
    node.b = b;
    node.midpoint = RotatedPoint{(a.u + b.u) / 2.0, (a.v + b.v) / 2.0};
    node.width = b.u - a.u;
    node.q = node.width / scale;
    node.depth = depth;

    const double slope = (b.v - a.v) / node.width;
    const double margin = 1.0 / scale;
    const bool depth_ok = static_cast<double>(depth) <= max_depth;
    const bool slope_ok = slope > -1.0 + margin && slope < 1.0 - margin;
    if (depth_ok && slope_ok) {
      const std::int64_t surplus = slab_surplus(node);
      if (surplus > 0) {
        node.decision = SegmentNode::Decision::Up;
        node.moved_up = true;
      } else if (surplus < 0) {
        node.decision = SegmentNode::Decision::Down;
        node.moved_up = false;
      } else {
        node.decision = SegmentNode::Decision::RandomTie;
        node.moved_up = ties.next_coin();
      }
      const RotatedPoint moved{node.midpoint.u,
                               node.midpoint.v + (node.moved_up ? node.q : -node.q)};
      nodes[idx] = node;  // publish before recursing so children see final a/b
      const std::int32_t left = build(a, moved, depth + 1);
      const std::int32_t right = build(moved, b, depth + 1);
      nodes[idx].left = left;
      nodes[idx].right = right;
      return idx;
    }
    nodes[idx] = node;
    return idx;
  }

  void collect_vertices(std::int32_t idx, std::vector<Polyline::Vertex>& out) const {
    const SegmentNode& node = nodes[static_cast<std::size_t>(idx)];
    if (node.left < 0) {
      out.push_back(Polyline::Vertex{node.b.u, node.b.v});
      return;
    }
    collect_vertices(node.left, out);
    collect_vertices(node.right, out);
  }
};

}  // namespace

double SegmentNode::line_v_at(double u) const {
  const double t = (u - a.u) / (b.u - a.u);
  return a.v + t * (b.v - a.v);
}

DisplacementPathResult build_displacement_path(const DotGrid& grid, std::uint64_t seed,
                                               const DisplacementPathOptions& options) {
  if (!(grid.width > 0.0) || grid.width != grid.height)
    throw ConfigError("displacement path requires a square grid with positive side");
  grid.validate();

  const double m = grid.width;
  const double log_m = std::log2(m);

  Builder builder(seed);
  builder.dots.reserve(grid.dots.size());
  builder.colors.reserve(grid.dots.size());
  for (const Dot& d : grid.dots) {
    builder.dots.push_back(RotatedPoint{(d.x + d.y) * kInvSqrt2, (d.y - d.x) * kInvSqrt2});
    builder.colors.push_back(d.color == DotColor::Blue ? 1 : -1);
  }
  builder.max_depth = options.depth_limit ? static_cast<double>(*options.depth_limit)
                                          : log_m / 16.0;
  builder.scale = options.resolution ? *options.resolution : std::sqrt(log_m);
  if (!(builder.scale > 0.0)) throw ConfigError("displacement path scale must be positive");

  const RotatedPoint start{0.0, 0.0};
  const RotatedPoint finish{kSqrt2 * m, 0.0};
  const std::int32_t root = builder.build(start, finish, 1);

  std::vector<Polyline::Vertex> vertices;
  vertices.push_back(Polyline::Vertex{start.u, start.v});
  builder.collect_vertices(root, vertices);

  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const double du = vertices[i].u - vertices[i - 1].u;
    const double dv = vertices[i].v - vertices[i - 1].v;
    if (!(du > 0.0) || std::fabs(dv) > du * (1.0 + kSlopeTol))
      throw IllegalPathError("constructed polyline violates the slope bound");
  }

  DisplacementPathResult result;
  result.path = MonotonePath::from_polyline(Polyline{std::move(vertices)});
  result.nodes = std::move(builder.nodes);
  result.root = root;
  return result;
}

bool regions_intersect(const SegmentNode& p, const SegmentNode& q) {
  const double lo = std::max(p.u_lo(), q.u_lo());
  const double hi = std::min(p.u_hi(), q.u_hi());
  if (lo > hi) return false;
  const double gap_lo = p.line_v_at(lo) - q.line_v_at(lo);
  const double gap_hi = p.line_v_at(hi) - q.line_v_at(hi);
  double min_gap;
  if ((gap_lo <= 0.0 && gap_hi >= 0.0) || (gap_lo >= 0.0 && gap_hi <= 0.0)) {
    min_gap = 0.0;  // the supporting lines cross inside the shared interval
  } else {
    min_gap = std::min(std::fabs(gap_lo), std::fabs(gap_hi));
  }
  return min_gap <= (p.q + q.q) / 2.0;
}

bool regions_disjoint(const std::vector<SegmentNode>& nodes) {
  std::function<bool(std::int32_t, std::int32_t)> check_subtree =
      [&](std::int32_t ancestor, std::int32_t idx) -> bool {
    if (idx < 0) return true;
    const SegmentNode& anc = nodes[static_cast<std::size_t>(ancestor)];
    const SegmentNode& cur = nodes[static_cast<std::size_t>(idx)];
    if (regions_intersect(anc, cur)) return false;
    return check_subtree(ancestor, cur.left) && check_subtree(ancestor, cur.right);
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const SegmentNode& node = nodes[i];
    const std::int32_t self = static_cast<std::int32_t>(i);
    if (node.left >= 0 && !check_subtree(self, node.left)) return false;
    if (node.right >= 0 && !check_subtree(self, node.right)) return false;
  }
  return true;
}

}  // namespace probelab
