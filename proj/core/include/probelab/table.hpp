// Linear-probing hash table with tombstone deletion, in two flavors:
//
//   Ordered:   run-sorted ("robin hood" style) probing. An insert claims the
//              first slot whose occupant hashes strictly later, shifting the
//              displaced suffix right by one into the next reusable slot.
//   Unordered: classical linear probing. An insert overwrites the first free
//              slot or tombstone after its hash, no shifting.
//
// Every mutation returns a receipt describing exactly what happened (where the
// key landed, what kind of slot was consumed, how many slots were examined),
// which is what the instrumentation layer records into traces. All index
// arithmetic is cyclic mod n; comparisons between stored hashes are made on
// offsets unrolled relative to the scan origin, so wraparound never needs
// special cases.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "probelab/errors.hpp"

namespace probelab {

enum class Mode : std::uint8_t { Ordered, Unordered };

struct Slot {
  enum class Kind : std::uint8_t { Free, Occupied, Tombstone };
  Kind kind = Kind::Free;
  std::uint32_t hash = 0;  // valid for Occupied and Tombstone
  std::uint64_t key = 0;   // valid for Occupied

  bool is_free() const { return kind == Kind::Free; }
  bool is_occupied() const { return kind == Kind::Occupied; }
  bool is_tombstone() const { return kind == Kind::Tombstone; }
};

struct TableConfig {
  std::uint32_t n = 0;          // slot count
  std::uint32_t x = 2;          // load parameter: live load capped at 1 - 1/x
  std::uint32_t R = 0;          // rebuild window (operations per rebuild)
  Mode mode = Mode::Ordered;
  std::uint64_t hash_seed = 0;
  // Rebuild-counter policy: count only insertions (alternating workloads,
  // where beta = n/R should refer to insertions) or both kinds of operation.
  bool count_inserts_only = false;
  // Automatic rebuild when the counter reaches R. Off lets a driver fill a
  // table without churning through no-op rebuilds.
  bool auto_rebuild = true;

  double beta() const { return static_cast<double>(n) / static_cast<double>(R); }
  std::uint32_t capacity() const {  // floor((1 - 1/x) * n)
    return static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(n) * (x - 1) / x);
  }
  void validate() const;  // throws ConfigError
};

struct Landing {
  enum class Kind : std::uint8_t { FreeSlot, Tombstone };
  Kind kind = Kind::FreeSlot;
  std::uint32_t position = 0;
  std::uint32_t hash = 0;  // stored hash of the consumed tombstone; 0 for free slots

  bool operator==(const Landing&) const = default;
};

struct InsertReceipt {
  std::uint32_t placed_at = 0;
  Landing landing;
  std::uint32_t probe_cost = 0;  // slots examined by the placement scan
  std::uint32_t shift_len = 0;   // ordered mode: elements moved right by one
};

struct QueryResult {
  bool found = false;
  std::uint32_t probe_cost = 0;  // slots examined including the terminal one
};

struct DeleteReceipt {
  std::uint32_t position = 0;  // slot vacated
  std::uint32_t hash = 0;      // hash of the deleted key
};

struct RebuildReport {
  std::uint32_t tombstones_cleared = 0;
};

class Table {
 public:
  explicit Table(const TableConfig& config);

  // Throws DuplicateKeyError / CapacityError. May trigger an automatic
  // rebuild after the operation completes (visible via rebuild_count()).
  InsertReceipt insert(std::uint64_t key);

  QueryResult query(std::uint64_t key) const;

  // Throws KeyNotFoundError. May trigger an automatic rebuild.
  DeleteReceipt erase(std::uint64_t key);

  // Clears all tombstones by replaying the live keys, sorted by (hash, key),
  // into an empty array. The result is the canonical tombstone-free layout:
  // a pure function of (hash_seed, live key set) in both modes.
  RebuildReport rebuild();

  const TableConfig& config() const { return config_; }
  std::uint32_t n() const { return config_.n; }
  Mode mode() const { return config_.mode; }
  std::uint32_t live_count() const { return live_count_; }
  std::uint32_t tombstone_count() const { return tombstone_count_; }
  std::uint32_t free_count() const { return config_.n - live_count_ - tombstone_count_; }
  std::uint32_t ops_since_rebuild() const { return ops_since_rebuild_; }
  std::uint64_t rebuild_count() const { return rebuild_count_; }
  const Slot& slot(std::uint32_t pos) const { return slots_[pos]; }
  const std::vector<Slot>& slots() const { return slots_; }

  std::uint32_t hash_of(std::uint64_t key) const;

  // Cyclic displacement of position p from hash h: (p - h) mod n.
  std::uint32_t displacement(std::uint32_t hash, std::uint32_t pos) const {
    return pos >= hash ? pos - hash : pos + config_.n - hash;
  }

  // Full-scan structural audit: load accounting, run-sortedness (ordered),
  // stored-hash consistency, and the no-free-slot-before-own-position rule.
  // Throws InvariantError on the first breach.
  void check_invariants() const;

  // Line-oriented snapshot: header `n=<n> mode=<ordered|unordered> seed=<hex>`
  // followed by one `pos=<i> kind=<occ|tomb> hash=<h> key=<hex>` line per
  // non-free slot in ascending position order (tombstones carry key=0).
  std::string to_snapshot() const;
  void write_snapshot(std::ostream& out) const;

  // Reconstructs a table from a snapshot. x and R are not part of the
  // format, so the caller supplies them (defaults: x=2, R=n).
  static Table from_snapshot(const std::string& text, std::uint32_t x = 2,
                             std::uint32_t R = 0);

 private:
  std::uint32_t wrap(std::uint64_t i) const {
    return static_cast<std::uint32_t>(i % config_.n);
  }
  // Offset of the stored hash of slot `pos`, unrolled relative to a scan that
  // reached `pos` at offset d from its origin. Negative: hashes earlier than
  // the origin; zero: same hash as the origin; positive: later.
  std::int64_t relative_hash(std::uint32_t pos, std::int64_t d) const {
    return d - static_cast<std::int64_t>(displacement(slots_[pos].hash, pos));
  }

  InsertReceipt insert_ordered(std::uint64_t key, std::uint32_t h);
  InsertReceipt insert_unordered(std::uint64_t key, std::uint32_t h);
  void count_op(bool is_insert);

  TableConfig config_;
  std::vector<Slot> slots_;
  std::uint32_t live_count_ = 0;
  std::uint32_t tombstone_count_ = 0;
  std::uint32_t ops_since_rebuild_ = 0;
  std::uint64_t rebuild_count_ = 0;
  std::uint64_t hash_salt_ = 0;
};

}  // namespace probelab
