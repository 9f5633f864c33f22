#pragma once

// Maps operation traces to two-color dot grids over a cyclic slot interval,
// evaluates interval surpluses, and verifies the per-index identity between
// online crossing counts and the grid surplus maxima.
//
// Grid geometry: for an interval [j-t, j) of t slots and a window of T ops,
// the grid spans t x T.  An operation at timestamp i whose keying slot falls
// at cyclic offset o inside the interval contributes a dot at
// (o + 0.5, i - 0.5): blue for inserts, red for deletes.  Three variants
// differ only in which slot keys a red dot:
//   Ordered    - the deleted element's hash            (ordered-table grids)
//   Unordered  - the position the delete tombstoned    (position-based grids)
//   Surrogate  - the sampled deletion target, direct or failed
//                (the uniform-hash surrogate sequence)

#include <cstdint>
#include <optional>

#include "probelab/dot_grid.hpp"
#include "probelab/trace.hpp"

namespace probelab {

// Cyclic slot interval [j - t, j); 1 <= t <= n.
struct IntervalSpec {
  std::uint64_t j = 0;  // exclusive right endpoint, in [0, n)
  std::uint64_t t = 0;  // length

  void validate(std::uint64_t n) const;
  // Offset of slot `pos` from the interval's left end, in [0, n).
  std::uint64_t offset_of(std::uint64_t pos, std::uint64_t n) const;
  bool contains(std::uint64_t pos, std::uint64_t n) const;
};

enum class GridVariant : std::uint8_t { Ordered, Unordered, Surrogate };

DotGrid build_ordered_dot_grid(const Trace& trace, IntervalSpec interval);
DotGrid build_unordered_dot_grid(const Trace& trace, IntervalSpec interval);
DotGrid build_surrogate_grid(const Trace& trace, IntervalSpec interval);

// Maximum path surplus of the variant's grid over the interval.
std::int64_t interval_surplus(const Trace& trace, IntervalSpec interval, GridVariant variant);

// Counts over the window's second-choice deletions: A has the failed target
// inside the interval, B has the actually chosen position inside it.  These
// bound the gap between surrogate and position-based surpluses:
//   surrogate - B <= unordered <= surrogate + A.
struct SandwichCounts {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
};
SandwichCounts count_sandwich_terms(const Trace& trace, IntervalSpec interval);

struct IdentityReport {
  bool holds = true;
  std::optional<std::uint64_t> first_violation;  // smallest disagreeing index
};

// Checks, for every slot index s, that the online crossing count c_s equals
//   max(0, max over t in [1, n-1] of
//          interval_surplus([s-t, s)) - free slots in [s-t, s-1] at window start).
// Ordered mode uses hash-keyed grids, unordered mode position-keyed grids.
// Implemented as one leftward sweep per s that extends the interval a column
// at a time, sharing the level DP between all t.
IdentityReport verify_crossing_identity(const Trace& trace, Mode mode);

}  // namespace probelab
