// Crossing numbers and probe statistics computed from traces.
//
// The crossing count c[i] tallies, per slot index i, the insertions whose
// hash lies cyclically before i but whose landing lies at or after i:
//   ordered:   the landing is a tombstone whose *stored hash* h_t reaches i,
//              i.e. i lies in the cyclic interval (h, h_t]; free-slot landings
//              use the landing position instead;
//   unordered: the landing *position* p governs unconditionally: i in (h, p].
// These counts are what the interval-surplus identity reproduces exactly.
#pragma once

#include <cstdint>
#include <vector>

#include "probelab/trace.hpp"

namespace probelab {

struct CrossingProfile {
  std::vector<std::uint64_t> c;  // length n, indexed by slot

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (std::uint64_t v : c) sum += v;
    return sum;
  }
};

// Adds one insertion's contribution to a profile. `n` is the table size;
// the landing comes straight from the insert receipt. Exposed so a driver
// can accumulate the profile live, then cross-check against the offline
// recomputation from the serialized trace.
void accumulate_crossing(CrossingProfile& profile, std::uint32_t n, Mode mode,
                         std::uint32_t hash, const Landing& landing);

// Offline recomputation over a whole window. Throws ModeMismatchError when
// the trace's mode disagrees with the requested rule.
CrossingProfile crossing_online_ordered(const Trace& trace);
CrossingProfile crossing_online_unordered(const Trace& trace);

// Sum over inserts of the cyclic displacement (position - hash) mod n: the
// total insertion time in the unordered accounting identity.
std::uint64_t total_insertion_displacement(const Trace& trace);

// max over i in [0, n] of (i/(4x) - F_i), where F_i counts free slots among
// the last min(i+1, n) slots of the snapshot. Raw signed maximum.
double free_slot_deficit(const FreeSlotSnapshot& snapshot, std::uint32_t x);

struct ProbeStats {
  double mean_insert_cost = 0.0;
  double mean_query_cost = 0.0;   // successful lookups, averaged over occupants
  double mean_delete_cost = 0.0;
  // run_length_histogram[L] = number of maximal non-free runs of length L on
  // the final table state (index 0 unused).
  std::vector<std::uint64_t> run_length_histogram;
};

// Aggregates per-operation costs from the trace records and measures the
// final table state by replaying the window (the replay asserts that every
// receipt matches the recorded one, doubling as a consistency audit).
ProbeStats probe_stats(const Trace& trace);

// Deterministic expected probe costs of a table state, averaged over all n
// hash origins: the cost the next insertion would pay from each origin
// (distance to the first free slot + 1), and the mean successful-query cost
// (1 + mean displacement over occupants). These are the "fresh table at this
// load" reference statistics.
double expected_insert_cost(const Table& table);
double expected_query_cost(const Table& table);

std::vector<std::uint64_t> run_length_histogram(const Table& table);

}  // namespace probelab
