#pragma once

// Recursive construction of a slope-legal displacement path over a two-color
// dot grid, together with the full recursion tree for inspection.
//
// The construction works in the 45-degree rotated frame
//   u = (x + y)/sqrt(2),  v = (y - x)/sqrt(2),
// where the square grid's main diagonal becomes the horizontal segment from
// (0, 0) to (sqrt(2)*m, 0).  Starting from that segment, each recursion step
// splits a segment L at its midpoint p_L, displaces the midpoint vertically by
// +q_L or -q_L depending on the sign of the dot surplus inside the slab R_L,
// and recurses into the two halves.  Recursion stops when the depth exceeds
// (log2 m)/16 or the segment slope leaves (-1 + 1/scale, 1 - 1/scale) with
// scale = sqrt(log2 m).  The resulting polyline has slope within [-1, 1] on
// every edge, i.e. it maps back to a monotone staircase-like path in the
// original frame.

#include <cstdint>
#include <optional>
#include <vector>

#include "probelab/dot_grid.hpp"

namespace probelab {

struct RotatedPoint {
  double u = 0.0;
  double v = 0.0;
};

// One segment L of the recursion tree.  The slab R_L is the set of points
// within horizontal distance width/16 of the midpoint and vertical distance
// q/2 of the segment's supporting line (closed boundaries).
struct SegmentNode {
  enum class Decision : std::uint8_t { Up, Down, RandomTie };

  RotatedPoint a;                     // left endpoint (smaller u)
  RotatedPoint b;                     // right endpoint
  RotatedPoint midpoint;              // p_L, before any displacement
  double width = 0.0;                 // w_L = b.u - a.u
  double q = 0.0;                     // q_L = w_L / scale
  std::uint32_t depth = 0;            // root has depth 1
  std::optional<Decision> decision;   // empty for leaves (no split happened)
  bool moved_up = false;              // direction actually taken (valid iff split)
  std::int32_t left = -1;             // child over [a.u, midpoint.u]
  std::int32_t right = -1;            // child over [midpoint.u, b.u]

  // v-coordinate of the segment's supporting line at horizontal position u.
  double line_v_at(double u) const;
  double u_lo() const { return midpoint.u - width / 16.0; }
  double u_hi() const { return midpoint.u + width / 16.0; }
};

struct DisplacementPathOptions {
  // Test hooks: override the depth cutoff (log2 m)/16 and the scale
  // sqrt(log2 m).  Production runs leave both unset.
  std::optional<std::uint32_t> depth_limit;
  std::optional<double> resolution;
};

struct DisplacementPathResult {
  MonotonePath path;                  // polyline in rotated coordinates
  std::vector<SegmentNode> nodes;     // recursion tree, preorder
  std::int32_t root = -1;
};

// Runs the recursive construction on a square grid (width == height).
// Tie-breaking randomness comes from a stream derived from `seed`,
// independent of how the grid itself was generated.
// Throws ConfigError for non-square grids and IllegalPathError if the
// produced polyline violates the slope bound.
DisplacementPathResult build_displacement_path(const DotGrid& grid, std::uint64_t seed,
                                               const DisplacementPathOptions& options = {});

// Geometric intersection test between the slabs R_L of two nodes.
// Both slabs are parallelograms with vertical sides; they meet iff their
// u-ranges overlap and, somewhere on the shared u-interval, the vertical
// distance between the two supporting lines is at most (q1 + q2)/2.
bool regions_intersect(const SegmentNode& p, const SegmentNode& q);

// True when every (ancestor, descendant) pair in the tree has disjoint slabs.
bool regions_disjoint(const std::vector<SegmentNode>& nodes);

}  // namespace probelab
