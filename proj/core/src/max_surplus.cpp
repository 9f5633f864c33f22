#include "probelab/max_surplus.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace probelab {

namespace {

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min() / 4;
// Matrix-size budget (entries) for running the quadratic witness DP directly.
constexpr std::int64_t kQuadCells = std::int64_t{1} << 23;
// Budget for quadratic leaves inside the divide-and-conquer reconstruction.
constexpr std::int64_t kQuadLeafCells = std::int64_t{1} << 20;

// Grid digested into columns (distinct x, ascending) holding (rank, weight)
// pairs, where rank r in [1, K] indexes the r-th smallest distinct y and
// weight is +1 per blue, -1 per red, merged per (column, rank).
struct Prepared {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> cols;
  std::int32_t K = 0;
};

Prepared prepare(const DotGrid& grid) {
  Prepared p;
  if (grid.dots.empty()) return p;
  p.ys.reserve(grid.dots.size());
  for (const Dot& d : grid.dots) p.ys.push_back(d.y);
  std::sort(p.ys.begin(), p.ys.end());
  p.ys.erase(std::unique(p.ys.begin(), p.ys.end()), p.ys.end());
  p.K = static_cast<std::int32_t>(p.ys.size());

  struct Entry {
    double x;
    std::int32_t rank;
    std::int32_t w;
  };
  std::vector<Entry> entries;
  entries.reserve(grid.dots.size());
  for (const Dot& d : grid.dots) {
    const auto it = std::lower_bound(p.ys.begin(), p.ys.end(), d.y);
    entries.push_back(Entry{d.x, static_cast<std::int32_t>(it - p.ys.begin()) + 1,
                            d.color == DotColor::Blue ? 1 : -1});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.rank < b.rank;
  });
  for (const Entry& e : entries) {
    if (p.xs.empty() || p.xs.back() != e.x) {
      p.xs.push_back(e.x);
      p.cols.emplace_back();
    }
    auto& col = p.cols.back();
    if (!col.empty() && col.back().first == e.rank) col.back().second += e.w;
    else col.emplace_back(e.rank, e.w);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Segment tree over levels with lazy  x -> max(x + add, floor).
// Supports the two primitives of the sweep: range_add (a column's weight
// steps) and range_chmax (prefix-maximum repair with a running best).
// ---------------------------------------------------------------------------
class AddChmaxTree {
 public:
  explicit AddChmaxTree(std::int32_t leaves) : leaves_(leaves) {
    size_ = 1;
    while (size_ < leaves_) size_ <<= 1;
    mx_.assign(2 * size_, 0);
    add_.assign(2 * size_, 0);
    flr_.assign(2 * size_, kNegInf);
    for (std::int32_t i = leaves_; i < size_; ++i) mx_[size_ + i] = kNegInf;
    for (std::int32_t i = size_ - 1; i >= 1; --i)
      mx_[i] = std::max(mx_[2 * i], mx_[2 * i + 1]);
  }

  void range_add(std::int32_t l, std::int32_t r, std::int64_t a) {
    if (l > r) return;
    walk(1, 0, size_ - 1, l, r, a, kNegInf);
  }
  void range_chmax(std::int32_t l, std::int32_t r, std::int64_t b) {
    if (l > r || b == kNegInf) return;
    walk(1, 0, size_ - 1, l, r, 0, b);
  }
  std::int64_t query_point(std::int32_t i) { return query(1, 0, size_ - 1, i, i); }
  std::int64_t query_range_max(std::int32_t l, std::int32_t r) {
    return query(1, 0, size_ - 1, l, r);
  }
  std::vector<std::int64_t> extract() {
    std::vector<std::int64_t> out(leaves_);
    collect(1, 0, size_ - 1, out);
    return out;
  }

 private:
  void apply(std::int32_t node, std::int64_t a, std::int64_t b) {
    mx_[node] = std::max(mx_[node] + a, b);
    add_[node] += a;
    flr_[node] = std::max(flr_[node] == kNegInf ? kNegInf : flr_[node] + a, b);
  }
  void push(std::int32_t node) {
    if (add_[node] != 0 || flr_[node] != kNegInf) {
      apply(2 * node, add_[node], flr_[node]);
      apply(2 * node + 1, add_[node], flr_[node]);
      add_[node] = 0;
      flr_[node] = kNegInf;
    }
  }
  void walk(std::int32_t node, std::int32_t lo, std::int32_t hi, std::int32_t l,
            std::int32_t r, std::int64_t a, std::int64_t b) {
    if (r < lo || hi < l) return;
    if (l <= lo && hi <= r) {
      apply(node, a, b);
      return;
    }
    push(node);
    const std::int32_t mid = (lo + hi) / 2;
    walk(2 * node, lo, mid, l, r, a, b);
    walk(2 * node + 1, mid + 1, hi, l, r, a, b);
    mx_[node] = std::max(mx_[2 * node], mx_[2 * node + 1]);
  }
  std::int64_t query(std::int32_t node, std::int32_t lo, std::int32_t hi, std::int32_t l,
                     std::int32_t r) {
    if (r < lo || hi < l) return kNegInf;
    if (l <= lo && hi <= r) return mx_[node];
    push(node);
    const std::int32_t mid = (lo + hi) / 2;
    return std::max(query(2 * node, lo, mid, l, r), query(2 * node + 1, mid + 1, hi, l, r));
  }
  void collect(std::int32_t node, std::int32_t lo, std::int32_t hi,
               std::vector<std::int64_t>& out) {
    if (lo >= leaves_) return;
    if (lo == hi) {
      out[lo] = mx_[node];
      return;
    }
    push(node);
    const std::int32_t mid = (lo + hi) / 2;
    collect(2 * node, lo, mid, out);
    collect(2 * node + 1, mid + 1, hi, out);
  }

  std::int32_t leaves_;
  std::int32_t size_;
  std::vector<std::int64_t> mx_, add_, flr_;
};

using Steps = std::vector<std::pair<std::int32_t, std::int32_t>>;

// Clamps a column's (rank, weight) pairs into the level window [lo, hi]:
// the column weight as a function of the windowed level ell' in [0, hi-lo]
// becomes a step function with thresholds max(0, rank - lo); ranks above hi
// can never be covered and drop out.
Steps window_steps(const std::vector<std::pair<std::int32_t, std::int32_t>>& col,
                   std::int32_t lo, std::int32_t hi) {
  Steps steps;
  for (const auto& [rank, w] : col) {
    if (rank > hi) break;
    const std::int32_t s = rank <= lo ? 0 : rank - lo;
    if (!steps.empty() && steps.back().first == s) steps.back().second += w;
    else steps.emplace_back(s, w);
  }
  return steps;
}

// Same, mirrored: levels scanned in reverse (m = (hi-lo) - ell'), for the
// backward sweep. Covered iff m <= T with T = (hi-lo) - max(0, rank-lo), so
// each weight enters at 0 and leaves after T.
Steps mirrored_steps(const std::vector<std::pair<std::int32_t, std::int32_t>>& col,
                     std::int32_t lo, std::int32_t hi) {
  const std::int32_t kw = hi - lo;
  Steps raw;
  for (const auto& [rank, w] : col) {
    if (rank > hi) break;
    const std::int32_t t = kw - (rank <= lo ? 0 : rank - lo);
    raw.emplace_back(0, w);
    if (t + 1 <= kw) raw.emplace_back(t + 1, -w);
  }
  std::sort(raw.begin(), raw.end());
  Steps steps;
  for (const auto& [s, w] : raw) {
    if (!steps.empty() && steps.back().first == s) steps.back().second += w;
    else steps.emplace_back(s, w);
  }
  return steps;
}

// One column of the sweep: add the weight steps, then repair the array back
// to prefix-maximum form. Pieces between step thresholds each carry a
// constant column weight, so within a piece the array is still non-decreasing
// and only needs clamping to the running best V from the left. Every dot of
// the column is handled inside one call: interleaving other updates between a
// column's dots would corrupt the relaxation.
void apply_column(AddChmaxTree& tree, std::int32_t top, const Steps& steps) {
  for (const auto& [s, w] : steps) tree.range_add(s, top, w);
  std::size_t i = 0;
  while (i < steps.size() && steps[i].first == 0) ++i;
  if (i == steps.size()) return;  // constant shift only: still non-decreasing
  std::int64_t best = tree.query_point(steps[i].first - 1);
  for (; i < steps.size(); ++i) {
    const std::int32_t l = steps[i].first;
    const std::int32_t r =
        i + 1 < steps.size() ? steps[i + 1].first - 1 : top;
    tree.range_chmax(l, r, best);
    best = tree.query_point(r);
  }
}

// Forward sweep over columns [a, b] within level window [lo, hi]; returns the
// prefix-maxed value array F, where F[ell'] is the best assignment with the
// last column's level at most lo + ell'.
std::vector<std::int64_t> sweep_forward(const Prepared& p, std::int32_t a, std::int32_t b,
                                        std::int32_t lo, std::int32_t hi) {
  AddChmaxTree tree(hi - lo + 1);
  for (std::int32_t c = a; c <= b; ++c)
    apply_column(tree, hi - lo, window_steps(p.cols[c], lo, hi));
  return tree.extract();
}

// Backward sweep over columns [a, b]; returns B with B[ell'] = best
// assignment whose first column's level is at least lo + ell'.
std::vector<std::int64_t> sweep_backward(const Prepared& p, std::int32_t a, std::int32_t b,
                                         std::int32_t lo, std::int32_t hi) {
  const std::int32_t kw = hi - lo;
  AddChmaxTree tree(kw + 1);
  for (std::int32_t c = b; c >= a; --c)
    apply_column(tree, kw, mirrored_steps(p.cols[c], lo, hi));
  std::vector<std::int64_t> mirrored = tree.extract();
  std::vector<std::int64_t> out(kw + 1);
  for (std::int32_t m = 0; m <= kw; ++m) out[kw - m] = mirrored[m];
  return out;
}

// Quadratic DP with witness reconstruction on columns [a, b], levels
// [lo, hi]. Writes the chosen level (global scale) per column; returns the
// optimum value of the subproblem.
std::int64_t quad_levels(const Prepared& p, std::int32_t a, std::int32_t b, std::int32_t lo,
                         std::int32_t hi, std::vector<std::int32_t>& levels) {
  const std::int32_t C = b - a + 1;
  const std::int32_t W = hi - lo;
  std::vector<std::vector<std::int32_t>> D(
      static_cast<std::size_t>(C) + 1, std::vector<std::int32_t>(W + 1, 0));
  std::vector<std::int32_t> colw(W + 1);
  for (std::int32_t c = 1; c <= C; ++c) {
    std::fill(colw.begin(), colw.end(), 0);
    for (const auto& [s, w] : window_steps(p.cols[a + c - 1], lo, hi)) colw[s] += w;
    for (std::int32_t l = 1; l <= W; ++l) colw[l] += colw[l - 1];
    std::int32_t best = D[c - 1][0];
    for (std::int32_t l = 0; l <= W; ++l) {
      best = std::max(best, D[c - 1][l]);
      D[c][l] = colw[l] + best;
    }
  }
  std::int32_t cur = 0;
  for (std::int32_t l = 1; l <= W; ++l)
    if (D[C][l] > D[C][cur]) cur = l;
  const std::int64_t value = D[C][cur];
  for (std::int32_t c = C; c >= 1; --c) {
    levels[a + c - 1] = lo + cur;
    // Predecessor: the smallest level <= cur whose D value realizes the
    // prefix maximum the transition used.
    std::int32_t best_val = D[c - 1][0];
    std::int32_t arg = 0;
    for (std::int32_t l = 1; l <= cur; ++l) {
      if (D[c - 1][l] > best_val) {
        best_val = D[c - 1][l];
        arg = l;
      }
    }
    cur = arg;
  }
  return value;
}

// Divide-and-conquer witness reconstruction: split the columns at mid, find
// the boundary level via one forward and one backward sweep, and recurse with
// the level window partitioned at the argmax.
void solve_levels(const Prepared& p, std::int32_t a, std::int32_t b, std::int32_t lo,
                  std::int32_t hi, std::vector<std::int32_t>& levels) {
  if (a > b) return;
  if (lo == hi) {
    std::fill(levels.begin() + a, levels.begin() + b + 1, lo);
    return;
  }
  const std::int64_t cells =
      (static_cast<std::int64_t>(b - a) + 2) * (static_cast<std::int64_t>(hi - lo) + 1);
  if (cells <= kQuadLeafCells) {
    quad_levels(p, a, b, lo, hi, levels);
    return;
  }
  const std::int32_t mid = a + (b - a) / 2;
  const std::vector<std::int64_t> fwd = sweep_forward(p, a, mid, lo, hi);
  const std::vector<std::int64_t> bwd = sweep_backward(p, mid + 1, b, lo, hi);
  std::int32_t split = 0;
  std::int64_t best = kNegInf;
  for (std::int32_t l = 0; l <= hi - lo; ++l) {
    if (fwd[l] + bwd[l] > best) {
      best = fwd[l] + bwd[l];
      split = l;
    }
  }
  solve_levels(p, a, mid, lo, lo + split, levels);
  solve_levels(p, mid + 1, b, lo + split, hi, levels);
}

MonotonePath witness_from_levels(const Prepared& p, double grid_height,
                                 const std::vector<std::int32_t>& levels) {
  const auto height_of = [&](std::int32_t level) -> double {
    if (level == 0) return 0.0;
    if (level < p.K) return (p.ys[level - 1] + p.ys[level]) / 2.0;
    return p.ys[p.K - 1] < grid_height ? (p.ys[p.K - 1] + grid_height) / 2.0
                                       : p.ys[p.K - 1] + 1.0;
  };
  Staircase stairs;
  std::int32_t cur = 0;
  for (std::size_t c = 0; c < levels.size(); ++c) {
    if (levels[c] < cur) throw InvariantError("witness levels are not monotone");
    if (levels[c] == cur) continue;
    // Jump strictly between the previous column and this one (at the grid's
    // left edge when the first column sits at x = 0, covering its dots).
    const double bx = c == 0 ? p.xs[0] / 2.0 : (p.xs[c - 1] + p.xs[c]) / 2.0;
    cur = levels[c];
    stairs.breakpoints.push_back({bx, height_of(cur)});
  }
  return MonotonePath::from_staircase(std::move(stairs));
}

}  // namespace

std::int64_t max_surplus_value(const DotGrid& grid) {
  const Prepared p = prepare(grid);
  if (p.K == 0) return 0;
  AddChmaxTree tree(p.K + 1);
  for (const auto& col : p.cols) apply_column(tree, p.K, window_steps(col, 0, p.K));
  return tree.query_point(p.K);
}

SurplusSolution max_surplus(const DotGrid& grid) {
  const Prepared p = prepare(grid);
  SurplusSolution solution;
  if (p.K == 0) {
    solution.witness = MonotonePath::from_staircase(Staircase{});
    return solution;
  }
  const std::int32_t C = static_cast<std::int32_t>(p.cols.size());
  std::vector<std::int32_t> levels(C, 0);
  const std::int64_t cells =
      (static_cast<std::int64_t>(C) + 1) * (static_cast<std::int64_t>(p.K) + 1);
  if (cells <= kQuadCells) {
    solution.value = quad_levels(p, 0, C - 1, 0, p.K, levels);
  } else {
    solve_levels(p, 0, C - 1, 0, p.K, levels);
    solution.value = max_surplus_value(grid);
  }
  solution.witness = witness_from_levels(p, grid.height, levels);
  const std::int64_t check = surplus_of_path(grid, solution.witness);
  if (check != solution.value)
    throw InvariantError("max_surplus witness does not reproduce the DP value");
  return solution;
}

std::int64_t max_surplus_bruteforce(const DotGrid& grid) {
  const std::size_t k = grid.dots.size();
  if (k > 16) throw TooLargeError("brute-force surplus oracle is capped at 16 dots");
  // forces[d]: dots that must accompany d in any feasible subset — everything
  // weakly right of and weakly below d.
  std::vector<std::uint32_t> forces(k, 0);
  for (std::size_t d = 0; d < k; ++d)
    for (std::size_t e = 0; e < k; ++e)
      if (e != d && grid.dots[d].x <= grid.dots[e].x && grid.dots[e].y <= grid.dots[d].y)
        forces[d] |= 1u << e;
  std::int64_t best = 0;  // the empty subset is always feasible
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    bool feasible = true;
    std::int64_t value = 0;
    for (std::size_t d = 0; d < k && feasible; ++d) {
      if (!(mask & (1u << d))) continue;
      if ((forces[d] & mask) != forces[d]) feasible = false;
      else value += grid.dots[d].color == DotColor::Blue ? 1 : -1;
    }
    if (feasible) best = std::max(best, value);
  }
  return best;
}

}  // namespace probelab
