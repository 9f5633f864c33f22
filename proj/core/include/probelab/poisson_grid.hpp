// Poisson-dotted square grids: the canonical path-surplus instance. Blue and
// red counts are independent Pois(m^2) draws; positions are i.i.d. uniform on
// [0, m]^2. Everything is pinned by the seed.
#pragma once

#include <cstdint>

#include "probelab/dot_grid.hpp"

namespace probelab {

DotGrid gen_poisson_grid(std::uint32_t m, std::uint64_t seed);

// Test hook: same position stream, but with the two counts forced instead of
// drawn. gen_poisson_grid(m, seed) is equivalent to forcing the counts that
// the seed's stream would have produced.
DotGrid gen_poisson_grid_with_counts(std::uint32_t m, std::uint64_t seed,
                                     std::uint64_t blue_count, std::uint64_t red_count);

}  // namespace probelab
