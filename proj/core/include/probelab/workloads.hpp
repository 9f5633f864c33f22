#pragma once

// Seeded workload drivers. Each run owns one table, fills it to its load cap,
// and then executes rebuild windows of alternating deletions/insertions,
// recording every window as a replayable Trace plus the crossing profile
// accumulated live from the receipts (so offline recomputation from the
// serialized trace can be cross-checked exactly).
//
// Kinds:
//   FillOnly              - just the fill; one trace over an empty table.
//   FillThenHover         - windows delete a uniformly random present key
//                           (repeats across the window allowed).
//   DistinctKeyAlternating- windows delete without replacement from the keys
//                           present at the window start, so every key in the
//                           window is touched at most once.
//   AverageCase           - two-stage deletions: sample a uniform slot; if
//                           occupied delete its occupant (Direct), otherwise
//                           delete a uniformly chosen present element
//                           (SecondChoice), recording both stages. The
//                           marginal law is exactly uniform over present.
//
// Fresh insert keys are structurally unique: a 32-bit fold of the seed in the
// high half, a run-local counter in the low half. "Never inserted before"
// is a construction property, not a probabilistic one.

#include <cstdint>
#include <vector>

#include "probelab/crossing.hpp"
#include "probelab/table.hpp"
#include "probelab/trace.hpp"

namespace probelab {

enum class WorkloadKind : std::uint8_t {
  FillOnly,
  FillThenHover,
  DistinctKeyAlternating,
  AverageCase,
};

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::FillOnly;
  std::uint32_t n = 0;
  std::uint32_t x = 2;
  std::uint32_t R = 0;            // deletions (= insertions) per window
  std::uint32_t num_windows = 0;  // ignored by FillOnly
  std::uint64_t seed = 0;
  Mode mode = Mode::Ordered;
  // Windows alternate delete,insert,... by default. Insert-first runs fill
  // one element short of the cap so the leading insert respects it.
  bool insert_first = false;
  // Drop per-op records and initial sets after each window's aggregates are
  // computed (free snapshots and cost summaries survive). Large amortized
  // sweeps set this; anything replaying or grid-mapping traces must not.
  bool keep_traces = true;

  void validate() const;  // throws ConfigError
};

struct WindowRecord {
  Trace trace;
  CrossingProfile live_profile;   // accumulated from insert receipts as they ran
  double mean_insert_cost = 0.0;  // over the window's insertions
  double mean_delete_cost = 0.0;  // displacement + 1, over the window's deletions
  // Reference costs of the tombstone-free state at the window start.
  double start_insert_cost = 0.0;
  double start_query_cost = 0.0;
};

struct WorkloadRun {
  TableConfig config;
  Table table;                       // end state (after the final rebuild)
  std::vector<WindowRecord> windows;
};

// Runs the workload to completion. Throws ExhaustedKeysError when a
// distinct-key window asks for more deletions than there are present keys,
// and propagates table errors (the load cap is enforced by the table itself).
WorkloadRun run_workload(const WorkloadSpec& spec);

}  // namespace probelab
