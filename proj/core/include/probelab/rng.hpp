// Deterministic, seed-stable randomness. Everything statistical in the lab
// flows through RngStream so that a (base_seed, cell, trial) triple pins the
// entire run byte-for-byte. std::* distributions are deliberately avoided:
// their outputs are not pinned across standard library implementations.
#pragma once

#include <cmath>
#include <cstdint>

namespace probelab {

// splitmix64 finalizer: a fixed 64-bit mixing permutation.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a base seed and two coordinates
// (typically sweep-cell index and trial index). Chained mixing keeps nearby
// coordinates statistically unrelated.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(base ^ mix64(a + 0x51a299a5c1f3ff01ULL)) ^ mix64(b + 0x0d3f2590f390a129ULL));
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  // splitmix64 step.
  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound). Multiply-shift range reduction; the bias is below
  // bound/2^64, which is immaterial at the table sizes this lab uses and keeps
  // the draw count per call fixed (important for reproducible stream layouts).
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  bool next_coin() { return (next_u64() >> 63) != 0; }

  // Exact Poisson(mean) sample. Splits large means into independent chunks
  // (Pois(a+b) = Pois(a) + Pois(b)) and finishes with Knuth's product method,
  // so the distribution is exact for every mean, not a normal approximation.
  std::uint64_t next_poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > kPoissonChunk) {
      total += poisson_small(kPoissonChunk);
      mean -= kPoissonChunk;
    }
    return total + poisson_small(mean);
  }

 private:
  static constexpr double kPoissonChunk = 30.0;

  std::uint64_t poisson_small(double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = 1.0;
    do {
      ++k;
      prod *= next_double();
    } while (prod > limit);
    return k - 1;
  }

  std::uint64_t state_;
};

}  // namespace probelab
