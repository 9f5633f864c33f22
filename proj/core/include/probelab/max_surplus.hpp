// Exact maximum path surplus over all monotone paths through a dot grid.
//
// The optimization is discrete: a monotone path is equivalent (for surplus
// purposes) to a non-decreasing assignment of a "level" to each column of
// dots, where level ell covers the dots with the ell smallest distinct
// y-values. Candidate heights are therefore {0} plus "just above each
// distinct dot y", realized exactly by rank arithmetic instead of
// floating-point epsilons.
//
// Solvers:
//   max_surplus            exact value + attaining witness staircase.
//                          Quadratic column-sweep DP when the (columns x
//                          levels) matrix fits; otherwise a divide-and-conquer
//                          reconstruction over the O(k log k) sweep.
//   max_surplus_value      value only, O(k log k): prefix-max relaxation kept
//                          in a segment tree under (add, clamp-to-floor)
//                          lazy updates.
//   max_surplus_bruteforce subset-feasibility oracle, <= 16 dots.
#pragma once

#include <cstdint>

#include "probelab/dot_grid.hpp"

namespace probelab {

struct SurplusSolution {
  std::int64_t value = 0;
  MonotonePath witness;
};

// Witness consistency is enforced on every call: the returned staircase is
// re-scored with surplus_of_path and must reproduce value exactly
// (InvariantError otherwise).
SurplusSolution max_surplus(const DotGrid& grid);

std::int64_t max_surplus_value(const DotGrid& grid);

// Enumerates dot subsets; S is feasible iff no excluded dot e sits
// weakly right of (x_d <= x_e) and weakly below (y_e <= y_d) an included d.
// Throws TooLargeError beyond 16 dots.
std::int64_t max_surplus_bruteforce(const DotGrid& grid);

}  // namespace probelab
