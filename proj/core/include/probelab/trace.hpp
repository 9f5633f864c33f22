// Operation traces: everything that happened inside one rebuild window,
// recorded precisely enough to replay it. A trace carries the element set
// present at the window start (when the table is tombstone-free, so its
// layout is the canonical one), the free-slot snapshot taken at that moment,
// and the timestamped operation records with their landings and, for
// average-case deletion workloads, the two-stage deletion-target annotation.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probelab/table.hpp"

namespace probelab {

struct DeletionTarget {
  enum class Kind : std::uint8_t { None, Direct, SecondChoice };
  Kind kind = Kind::None;
  // Direct: the sampled position, found occupied (equals the delete's position).
  // SecondChoice: the sampled position, found unoccupied ("failed target").
  std::uint32_t target = 0;
  // SecondChoice only: position of the uniformly chosen replacement victim.
  std::uint32_t chosen_position = 0;

  bool operator==(const DeletionTarget&) const = default;
};

struct OpRecord {
  enum class Kind : std::uint8_t { Insert, Delete };
  std::uint32_t index_in_window = 0;  // 1-based timestamp
  Kind kind = Kind::Insert;
  std::uint64_t key = 0;
  std::uint32_t hash = 0;
  std::uint32_t position = 0;  // inserts: final placement; deletes: slot vacated
  std::optional<Landing> landing;  // inserts only
  DeletionTarget deletion_target;  // deletes; None unless annotated
};

// Free-slot bitmap with prefix sums for O(1) cyclic interval counts.
class FreeSlotSnapshot {
 public:
  FreeSlotSnapshot() = default;
  static FreeSlotSnapshot from_table(const Table& table);
  static FreeSlotSnapshot from_free_positions(std::uint32_t n,
                                              const std::vector<std::uint32_t>& positions);

  std::uint32_t n() const { return n_; }
  bool is_free(std::uint32_t pos) const { return prefix_[pos + 1] != prefix_[pos]; }
  std::uint32_t total_free() const { return n_ == 0 ? 0 : prefix_[n_]; }
  std::vector<std::uint32_t> free_positions() const;

  // Number of free slots in the cyclic closed interval [lo, hi]; the interval
  // is walked rightward from lo, so its length is (hi - lo mod n) + 1 <= n.
  std::uint32_t count_closed(std::uint32_t lo, std::uint32_t hi) const;

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> prefix_;  // prefix_[i] = free slots in [0, i)
};

// Spec-level alias for interval counting on a snapshot.
inline std::uint32_t free_interval(const FreeSlotSnapshot& snapshot, std::uint32_t j_lo,
                                   std::uint32_t j_hi) {
  return snapshot.count_closed(j_lo, j_hi);
}

struct Trace {
  std::uint32_t n = 0;
  Mode mode = Mode::Ordered;
  std::uint64_t hash_seed = 0;
  std::uint32_t x = 2;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> initial_set;  // (key, hash)
  std::vector<OpRecord> window_ops;
  FreeSlotSnapshot free_snapshot;

  // Structural checks: timestamps consecutive from 1, hashes in range,
  // snapshot size matches n. Throws InvariantError.
  void validate() const;

  // Line-oriented serialization; see README for the exact field order.
  std::string serialize() const;
  void write(std::ostream& out) const;
  static Trace parse(const std::string& text);
};

// Rebuilds the table state at the start of the window (canonical layout of
// initial_set) and replays every operation, asserting that each op reproduces
// the recorded placement/landing/position exactly (InvariantError otherwise).
// Returns the table in its end-of-window state.
Table replay_trace(const Trace& trace);

}  // namespace probelab
