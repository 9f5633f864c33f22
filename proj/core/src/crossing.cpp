#include "probelab/crossing.hpp"

namespace probelab {

void accumulate_crossing(CrossingProfile& profile, std::uint32_t n, Mode mode,
                         std::uint32_t hash, const Landing& landing) {
  // Length of the cyclic interval (hash, target]: for ordered tombstone
  // landings the target is the tombstone's stored hash, otherwise the landing
  // position. Plain cyclic distance: when the table has no free slot left, a
  // placement can consume a tombstone at or behind its own origin, making the
  // interval wrap (its length still stays below n).
  const std::uint32_t target =
      mode == Mode::Ordered && landing.kind == Landing::Kind::Tombstone
          ? landing.hash
          : landing.position;
  const std::uint32_t reach = target >= hash ? target - hash : target + n - hash;
  for (std::uint32_t k = 1; k <= reach; ++k) {
    std::uint32_t i = hash + k;
    if (i >= n) i -= n;
    ++profile.c[i];
  }
}

namespace {

CrossingProfile crossing_from_trace(const Trace& trace, Mode expected) {
  if (trace.mode != expected)
    throw ModeMismatchError("crossing rule does not match the trace's table mode");
  CrossingProfile profile;
  profile.c.assign(trace.n, 0);
  for (const OpRecord& op : trace.window_ops) {
    if (op.kind != OpRecord::Kind::Insert) continue;
    accumulate_crossing(profile, trace.n, expected, op.hash, *op.landing);
  }
  return profile;
}

}  // namespace

CrossingProfile crossing_online_ordered(const Trace& trace) {
  return crossing_from_trace(trace, Mode::Ordered);
}

CrossingProfile crossing_online_unordered(const Trace& trace) {
  return crossing_from_trace(trace, Mode::Unordered);
}

std::uint64_t total_insertion_displacement(const Trace& trace) {
  std::uint64_t total = 0;
  for (const OpRecord& op : trace.window_ops) {
    if (op.kind != OpRecord::Kind::Insert) continue;
    total += op.position >= op.hash ? op.position - op.hash
                                    : op.position + trace.n - op.hash;
  }
  return total;
}

double free_slot_deficit(const FreeSlotSnapshot& snapshot, std::uint32_t x) {
  const std::uint32_t n = snapshot.n();
  double best = 0.0 / (4.0 * x) - static_cast<double>(snapshot.is_free(n - 1) ? 1 : 0);
  for (std::uint32_t i = 1; i <= n; ++i) {
    const std::uint32_t len = std::min(i + 1, n);
    const std::uint32_t f = snapshot.count_closed(n - len, n - 1);
    const double value = static_cast<double>(i) / (4.0 * x) - static_cast<double>(f);
    if (value > best) best = value;
  }
  return best;
}

std::vector<std::uint64_t> run_length_histogram(const Table& table) {
  const std::uint32_t n = table.n();
  std::vector<std::uint64_t> hist;
  const auto bump = [&hist](std::uint32_t len) {
    if (len == 0) return;
    if (hist.size() <= len) hist.resize(len + 1, 0);
    ++hist[len];
  };
  if (table.free_count() == 0) {
    bump(n);
    return hist;
  }
  // Start at a free slot so every run is seen exactly once, wrap included.
  std::uint32_t start = 0;
  while (!table.slot(start).is_free()) ++start;
  std::uint32_t len = 0;
  for (std::uint32_t k = 1; k <= n; ++k) {
    const std::uint32_t pos = (start + k) % n;
    if (table.slot(pos).is_free()) {
      bump(len);
      len = 0;
    } else {
      ++len;
    }
  }
  bump(len);
  return hist;
}

ProbeStats probe_stats(const Trace& trace) {
  ProbeStats stats;
  std::uint64_t insert_total = 0, inserts = 0, delete_total = 0, deletes = 0;
  for (const OpRecord& op : trace.window_ops) {
    const std::uint32_t d =
        op.position >= op.hash ? op.position - op.hash : op.position + trace.n - op.hash;
    if (op.kind == OpRecord::Kind::Insert) {
      // Probe cost of the placement scan: distance to the consumed slot + 1.
      const Landing& landing = *op.landing;
      const std::uint32_t consumed = landing.position >= op.hash
                                         ? landing.position - op.hash
                                         : landing.position + trace.n - op.hash;
      insert_total += consumed + 1;
      ++inserts;
      (void)d;
    } else {
      delete_total += d + 1;
      ++deletes;
    }
  }
  if (inserts > 0) stats.mean_insert_cost = static_cast<double>(insert_total) / inserts;
  if (deletes > 0) stats.mean_delete_cost = static_cast<double>(delete_total) / deletes;

  const Table final_state = replay_trace(trace);
  stats.mean_query_cost = expected_query_cost(final_state);
  stats.run_length_histogram = run_length_histogram(final_state);
  return stats;
}

double expected_insert_cost(const Table& table) {
  const std::uint32_t n = table.n();
  if (table.free_count() == 0) return static_cast<double>(n);
  // Distance from each origin to the first free slot at or after it, via one
  // backward sweep over the doubled index range.
  std::vector<std::uint32_t> dist(n, 0);
  std::uint32_t next = 0;  // distance from the current position to a free slot
  // Seed by finding the first free slot scanning backward from the end twice
  // around (the second pass fixes origins that wrap).
  for (std::uint32_t pass = 0; pass < 2; ++pass) {
    for (std::uint32_t k = n; k-- > 0;) {
      if (table.slot(k).is_free()) next = 0;
      else ++next;
      dist[k] = next;
    }
  }
  std::uint64_t total = 0;
  for (std::uint32_t k = 0; k < n; ++k) total += dist[k] + 1;
  return static_cast<double>(total) / n;
}

double expected_query_cost(const Table& table) {
  std::uint64_t total = 0, occupants = 0;
  for (std::uint32_t pos = 0; pos < table.n(); ++pos) {
    const Slot& s = table.slot(pos);
    if (!s.is_occupied()) continue;
    total += table.displacement(s.hash, pos);
    ++occupants;
  }
  return occupants == 0 ? 0.0 : 1.0 + static_cast<double>(total) / occupants;
}

}  // namespace probelab
