#include "probelab/crossing_audit.hpp"

#include <algorithm>
#include <limits>

#include "probelab/crossing.hpp"
#include "probelab/errors.hpp"
#include "probelab/max_surplus.hpp"

namespace probelab {

namespace {

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min() / 4;

struct GridEvent {
  std::uint64_t slot = 0;  // keying slot in [0, n)
  std::uint32_t time = 0;  // 1-based timestamp within the window
  int sign = 0;            // +1 insert (blue), -1 delete (red)
};

// The slot that keys an op's dot under the given variant, or nullopt for
// ops that never produce a dot.
std::uint64_t keying_slot(const OpRecord& op, GridVariant variant) {
  if (op.kind == OpRecord::Kind::Insert) return op.hash;
  switch (variant) {
    case GridVariant::Ordered:
      return op.hash;
    case GridVariant::Unordered:
      return op.position;
    case GridVariant::Surrogate:
      if (op.deletion_target.kind == DeletionTarget::Kind::None)
        throw MissingAnnotationError(
            "surrogate grid requires deletion-target annotations on every delete");
      return op.deletion_target.target;
  }
  throw InvariantError("unreachable grid variant");
}

void check_variant_mode(const Trace& trace, GridVariant variant) {
  if (variant == GridVariant::Ordered && trace.mode != Mode::Ordered)
    throw ModeMismatchError("hash-keyed grids require an ordered-mode trace");
  if (variant != GridVariant::Ordered && trace.mode != Mode::Unordered)
    throw ModeMismatchError("position-based grids require an unordered-mode trace");
}

std::vector<GridEvent> grid_events(const Trace& trace, GridVariant variant) {
  std::vector<GridEvent> events;
  events.reserve(trace.window_ops.size());
  for (const OpRecord& op : trace.window_ops) {
    const int sign = op.kind == OpRecord::Kind::Insert ? 1 : -1;
    events.push_back(GridEvent{keying_slot(op, variant), op.index_in_window, sign});
  }
  return events;
}

DotGrid build_grid(const Trace& trace, IntervalSpec interval, GridVariant variant) {
  check_variant_mode(trace, variant);
  interval.validate(trace.n);
  DotGrid grid;
  grid.width = static_cast<double>(interval.t);
  grid.height = static_cast<double>(trace.window_ops.size());
  for (const GridEvent& ev : grid_events(trace, variant)) {
    const std::uint64_t offset = interval.offset_of(ev.slot, trace.n);
    if (offset >= interval.t) continue;
    grid.dots.push_back(Dot{static_cast<double>(offset) + 0.5,
                            static_cast<double>(ev.time) - 0.5,
                            ev.sign > 0 ? DotColor::Blue : DotColor::Red});
  }
  grid.validate();
  return grid;
}

}  // namespace

void IntervalSpec::validate(std::uint64_t n) const {
  if (t < 1 || t > n) throw ConfigError("interval length must satisfy 1 <= t <= n");
  if (j >= n) throw ConfigError("interval right endpoint must lie in [0, n)");
}

std::uint64_t IntervalSpec::offset_of(std::uint64_t pos, std::uint64_t n) const {
  const std::uint64_t left = (j + n - (t % n)) % n;
  return (pos + n - left) % n;
}

bool IntervalSpec::contains(std::uint64_t pos, std::uint64_t n) const {
  return offset_of(pos, n) < t;
}

DotGrid build_ordered_dot_grid(const Trace& trace, IntervalSpec interval) {
  return build_grid(trace, interval, GridVariant::Ordered);
}

DotGrid build_unordered_dot_grid(const Trace& trace, IntervalSpec interval) {
  return build_grid(trace, interval, GridVariant::Unordered);
}

DotGrid build_surrogate_grid(const Trace& trace, IntervalSpec interval) {
  return build_grid(trace, interval, GridVariant::Surrogate);
}

std::int64_t interval_surplus(const Trace& trace, IntervalSpec interval, GridVariant variant) {
  return max_surplus_value(build_grid(trace, interval, variant));
}

SandwichCounts count_sandwich_terms(const Trace& trace, IntervalSpec interval) {
  interval.validate(trace.n);
  SandwichCounts counts;
  for (const OpRecord& op : trace.window_ops) {
    if (op.kind != OpRecord::Kind::Delete) continue;
    if (op.deletion_target.kind != DeletionTarget::Kind::SecondChoice) continue;
    if (interval.contains(op.deletion_target.target, trace.n)) ++counts.a;
    if (interval.contains(op.deletion_target.chosen_position, trace.n)) ++counts.b;
  }
  return counts;
}

IdentityReport verify_crossing_identity(const Trace& trace, Mode mode) {
  if (trace.mode != mode)
    throw ModeMismatchError("identity check mode does not match the trace mode");
  const std::uint64_t n = trace.n;
  const std::size_t levels = trace.window_ops.size() + 1;  // ranks 0..T

  const GridVariant variant =
      mode == Mode::Ordered ? GridVariant::Ordered : GridVariant::Unordered;
  const CrossingProfile profile = mode == Mode::Ordered ? crossing_online_ordered(trace)
                                                        : crossing_online_unordered(trace);

  // Timestamp-indexed event signs per slot: adds[p][time] summed into column
  // weights colw(level) = sum of signs at times <= level.
  std::vector<std::vector<GridEvent>> by_slot(n);
  for (const GridEvent& ev : grid_events(trace, variant))
    by_slot[ev.slot].push_back(ev);

  IdentityReport report;
  std::vector<std::int64_t> dp(levels), suffix(levels), colw(levels);
  for (std::uint64_t s = 0; s < n; ++s) {
    // dp[l]: best surplus over the columns processed so far when the current
    // leftmost column sits at level exactly l.  Extending the interval one
    // slot to the left adds a column whose level must not exceed any level
    // to its right, hence the suffix maximum.
    std::fill(dp.begin(), dp.end(), 0);
    std::int64_t best_rhs = 0;  // empty-interval baseline
    // t runs all the way to n: the full-cycle interval is required for
    // exactness when a blocking chain wraps far enough that one of its
    // consuming insertions hashes at s itself, which no shorter interval
    // ending at s can cover.
    for (std::uint64_t t = 1; t <= n; ++t) {
      const std::uint64_t p = (s + n - (t % n)) % n;
      std::int64_t running = kNegInf;
      for (std::size_t l = levels; l-- > 0;) {
        running = std::max(running, dp[l]);
        suffix[l] = running;
      }
      std::fill(colw.begin(), colw.end(), 0);
      for (const GridEvent& ev : by_slot[p]) colw[ev.time] += ev.sign;
      std::int64_t acc = 0;
      std::int64_t best_t = kNegInf;
      for (std::size_t l = 0; l < levels; ++l) {
        acc += colw[l];
        dp[l] = acc + suffix[l];
        best_t = std::max(best_t, dp[l]);
      }
      const std::uint64_t hi = (s + n - 1) % n;
      const std::int64_t free_slots =
          static_cast<std::int64_t>(trace.free_snapshot.count_closed(p, hi));
      best_rhs = std::max(best_rhs, best_t - free_slots);
    }
    const std::int64_t c_s = static_cast<std::int64_t>(profile.c[s]);
    if (c_s != best_rhs) {
      report.holds = false;
      report.first_violation = s;
      return report;
    }
  }
  return report;
}

}  // namespace probelab
