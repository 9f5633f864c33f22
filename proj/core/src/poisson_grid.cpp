#include "probelab/poisson_grid.hpp"

#include "probelab/rng.hpp"

namespace probelab {

namespace {

// Counts and positions come from two independently derived streams, so
// forcing the counts (test hook) leaves the position sequence untouched.
constexpr std::uint64_t kCountStream = 0x9d07c0de;
constexpr std::uint64_t kPositionStream = 0x9d07d075;

DotGrid fill_positions(std::uint32_t m, std::uint64_t seed, std::uint64_t blue_count,
                       std::uint64_t red_count) {
  RngStream rng(derive_seed(seed, kPositionStream, m));
  DotGrid grid;
  grid.width = grid.height = static_cast<double>(m);
  grid.dots.reserve(blue_count + red_count);
  for (std::uint64_t i = 0; i < blue_count; ++i) {
    const double x = m * rng.next_double();
    const double y = m * rng.next_double();
    grid.dots.push_back(Dot{x, y, DotColor::Blue});
  }
  for (std::uint64_t i = 0; i < red_count; ++i) {
    const double x = m * rng.next_double();
    const double y = m * rng.next_double();
    grid.dots.push_back(Dot{x, y, DotColor::Red});
  }
  return grid;
}

}  // namespace

DotGrid gen_poisson_grid(std::uint32_t m, std::uint64_t seed) {
  if (m < 1) throw ConfigError("poisson grid needs m >= 1");
  RngStream counts(derive_seed(seed, kCountStream, m));
  const double mean = static_cast<double>(m) * static_cast<double>(m);
  const std::uint64_t blue_count = counts.next_poisson(mean);
  const std::uint64_t red_count = counts.next_poisson(mean);
  return fill_positions(m, seed, blue_count, red_count);
}

DotGrid gen_poisson_grid_with_counts(std::uint32_t m, std::uint64_t seed,
                                     std::uint64_t blue_count, std::uint64_t red_count) {
  if (m < 1) throw ConfigError("poisson grid needs m >= 1");
  return fill_positions(m, seed, blue_count, red_count);
}

}  // namespace probelab
