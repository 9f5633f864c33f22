#include "probelab/workloads.hpp"

#include <unordered_map>
#include <utility>

#include "probelab/errors.hpp"
#include "probelab/rng.hpp"

namespace probelab {

namespace {

constexpr std::uint64_t kOpStream = 0x3c9ef1a7;
constexpr std::uint64_t kKeyStream = 0x11d4b2c9;
constexpr std::uint64_t kHashStream = 0x6f8e0b35;

// Index of present keys supporting O(1) uniform sampling and removal.
class PresentMirror {
 public:
  void add(std::uint64_t key) {
    index_[key] = keys_.size();
    keys_.push_back(key);
  }
  void remove(std::uint64_t key) {
    const auto it = index_.find(key);
    const std::size_t at = it->second;
    index_.erase(it);
    if (at + 1 != keys_.size()) {
      keys_[at] = keys_.back();
      index_[keys_[at]] = at;
    }
    keys_.pop_back();
  }
  std::uint64_t sample(RngStream& rng) const {
    return keys_[static_cast<std::size_t>(rng.next_below(keys_.size()))];
  }
  std::size_t size() const { return keys_.size(); }
  const std::vector<std::uint64_t>& keys() const { return keys_; }

 private:
  std::vector<std::uint64_t> keys_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

class Driver {
 public:
  explicit Driver(const WorkloadSpec& spec)
      : spec_(spec),
        config_{spec.n,
                spec.x,
                spec.R == 0 ? spec.n : spec.R,
                spec.mode,
                derive_seed(spec.seed, kHashStream, 0),
                /*count_inserts_only=*/false,
                /*auto_rebuild=*/false},
        table_(config_),
        rng_(derive_seed(spec.seed, kOpStream, static_cast<std::uint64_t>(spec.kind))),
        key_high_(derive_seed(spec.seed, kKeyStream, 0) << 32) {}

  WorkloadRun run() {
    if (spec_.kind == WorkloadKind::FillOnly) return run_fill_only();
    return run_hover();
  }

 private:
  std::uint64_t fresh_key() { return key_high_ | key_counter_++; }

  std::uint32_t fill_target() const {
    const std::uint32_t cap = config_.capacity();
    // An insert-first window peaks one element above its starting load.
    return spec_.insert_first && cap > 0 ? cap - 1 : cap;
  }

  // Starts a window record on the current (tombstone-free) table state.
  WindowRecord open_window() const {
    WindowRecord window;
    window.trace.n = config_.n;
    window.trace.mode = config_.mode;
    window.trace.hash_seed = config_.hash_seed;
    window.trace.x = config_.x;
    window.trace.initial_set.reserve(present_.size());
    for (const std::uint64_t key : present_.keys())
      window.trace.initial_set.emplace_back(key, table_.hash_of(key));
    window.trace.free_snapshot = FreeSlotSnapshot::from_table(table_);
    window.live_profile.c.assign(config_.n, 0);
    window.start_insert_cost = expected_insert_cost(table_);
    window.start_query_cost = expected_query_cost(table_);
    return window;
  }

  void record_insert(WindowRecord& window, std::uint32_t timestamp) {
    const std::uint64_t key = fresh_key();
    const std::uint32_t hash = table_.hash_of(key);
    const InsertReceipt receipt = table_.insert(key);
    present_.add(key);
    OpRecord op;
    op.index_in_window = timestamp;
    op.kind = OpRecord::Kind::Insert;
    op.key = key;
    op.hash = hash;
    op.position = receipt.placed_at;
    op.landing = receipt.landing;
    window.trace.window_ops.push_back(op);
    accumulate_crossing(window.live_profile, config_.n, config_.mode, hash, receipt.landing);
    window.mean_insert_cost += receipt.probe_cost;
  }

  void record_delete(WindowRecord& window, std::uint32_t timestamp, std::uint64_t key,
                     const DeletionTarget& target) {
    const DeleteReceipt receipt = table_.erase(key);
    present_.remove(key);
    OpRecord op;
    op.index_in_window = timestamp;
    op.kind = OpRecord::Kind::Delete;
    op.key = key;
    op.hash = receipt.hash;
    op.position = receipt.position;
    op.deletion_target = target;
    window.trace.window_ops.push_back(op);
    window.mean_delete_cost += table_.displacement(receipt.hash, receipt.position) + 1;
  }

  // One deletion according to the workload kind. `eligible` is the
  // without-replacement pool for distinct-key windows.
  void run_delete(WindowRecord& window, std::uint32_t timestamp,
                  std::vector<std::uint64_t>& eligible) {
    switch (spec_.kind) {
      case WorkloadKind::FillThenHover: {
        record_delete(window, timestamp, present_.sample(rng_), DeletionTarget{});
        return;
      }
      case WorkloadKind::DistinctKeyAlternating: {
        if (eligible.empty())
          throw ExhaustedKeysError("window needs more distinct keys than are present");
        const std::size_t at = static_cast<std::size_t>(rng_.next_below(eligible.size()));
        const std::uint64_t key = eligible[at];
        eligible[at] = eligible.back();
        eligible.pop_back();
        record_delete(window, timestamp, key, DeletionTarget{});
        return;
      }
      case WorkloadKind::AverageCase: {
        const std::uint32_t k = static_cast<std::uint32_t>(rng_.next_below(config_.n));
        DeletionTarget target;
        std::uint64_t key;
        if (table_.slot(k).is_occupied()) {
          target.kind = DeletionTarget::Kind::Direct;
          target.target = k;
          target.chosen_position = k;
          key = table_.slot(k).key;
        } else {
          target.kind = DeletionTarget::Kind::SecondChoice;
          target.target = k;
          key = present_.sample(rng_);
          // The victim's position becomes known from the delete receipt; fill
          // it in afterwards.
        }
        const std::size_t at = window.trace.window_ops.size();
        record_delete(window, timestamp, key, target);
        if (target.kind == DeletionTarget::Kind::SecondChoice) {
          window.trace.window_ops[at].deletion_target.chosen_position =
              window.trace.window_ops[at].position;
        }
        return;
      }
      case WorkloadKind::FillOnly:
        break;
    }
    throw InvariantError("unreachable workload kind in run_delete");
  }

  WorkloadRun run_fill_only() {
    WindowRecord window = open_window();  // empty table, all-free snapshot
    const std::uint32_t target = config_.capacity();
    for (std::uint32_t i = 1; i <= target; ++i) record_insert(window, i);
    finalize_window(window);
    WorkloadRun result{config_, std::move(table_), {}};
    result.windows.push_back(std::move(window));
    return result;
  }

  WorkloadRun run_hover() {
    const std::uint32_t target = fill_target();
    for (std::uint32_t i = 0; i < target; ++i) {
      const std::uint64_t key = fresh_key();
      table_.insert(key);
      present_.add(key);
    }
    table_.rebuild();  // canonical tombstone-free layout at the first window start

    WorkloadRun result{config_, Table(config_), {}};
    result.windows.reserve(spec_.num_windows);
    for (std::uint32_t w = 0; w < spec_.num_windows; ++w) {
      WindowRecord window = open_window();
      std::vector<std::uint64_t> eligible;
      if (spec_.kind == WorkloadKind::DistinctKeyAlternating) {
        if (spec_.R > present_.size())
          throw ExhaustedKeysError("window needs more distinct keys than are present");
        eligible = present_.keys();
      }
      for (std::uint32_t i = 0; i < 2 * spec_.R; ++i) {
        const std::uint32_t timestamp = i + 1;
        const bool insert_turn = (i % 2 == 0) == spec_.insert_first;
        if (insert_turn) {
          record_insert(window, timestamp);
        } else {
          run_delete(window, timestamp, eligible);
        }
      }
      finalize_window(window);
      table_.rebuild();
      result.windows.push_back(std::move(window));
    }
    result.table = std::move(table_);
    return result;
  }

  void finalize_window(WindowRecord& window) {
    std::uint64_t inserts = 0;
    std::uint64_t deletes = 0;
    for (const OpRecord& op : window.trace.window_ops)
      (op.kind == OpRecord::Kind::Insert ? inserts : deletes)++;
    if (inserts > 0) window.mean_insert_cost /= static_cast<double>(inserts);
    if (deletes > 0) window.mean_delete_cost /= static_cast<double>(deletes);
    window.trace.validate();
    if (!spec_.keep_traces) {
      window.trace.window_ops.clear();
      window.trace.window_ops.shrink_to_fit();
      window.trace.initial_set.clear();
      window.trace.initial_set.shrink_to_fit();
    }
  }

  WorkloadSpec spec_;
  TableConfig config_;
  Table table_;
  RngStream rng_;
  std::uint64_t key_high_;
  std::uint64_t key_counter_ = 0;
  PresentMirror present_;
};

}  // namespace

void WorkloadSpec::validate() const {
  TableConfig probe{n, x, R == 0 ? n : R, mode, 0, false, false};
  probe.validate();
  if (kind != WorkloadKind::FillOnly) {
    if (R == 0) throw ConfigError("hover workloads need R >= 1");
    if (num_windows == 0) throw ConfigError("hover workloads need num_windows >= 1");
  }
}

WorkloadRun run_workload(const WorkloadSpec& spec) {
  spec.validate();
  Driver driver(spec);
  return driver.run();
}

}  // namespace probelab
