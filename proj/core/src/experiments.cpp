#include "probelab/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "probelab/crossing.hpp"
#include "probelab/crossing_audit.hpp"
#include "probelab/displacement_path.hpp"
#include "probelab/dot_grid.hpp"
#include "probelab/errors.hpp"
#include "probelab/max_surplus.hpp"
#include "probelab/poisson_grid.hpp"
#include "probelab/rng.hpp"
#include "probelab/workloads.hpp"

namespace probelab {

namespace {

using TaskFn = std::function<std::vector<SweepRow>()>;

// Sweep execution: tasks are independent; results land in a slot per task
// and are concatenated in task order, so the output does not depend on the
// thread count or scheduling.
std::vector<SweepRow> run_pool(std::vector<TaskFn>& tasks, std::uint64_t threads) {
  if (threads == 0) {
    threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
  }
  threads = std::min<std::uint64_t>(threads, tasks.size());
  std::vector<std::vector<SweepRow>> results(tasks.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i]();
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        try {
          results[i] = tasks[i]();
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (std::uint64_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<SweepRow> rows;
  for (std::vector<SweepRow>& part : results)
    rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  return rows;
}

struct Common {
  std::uint64_t base_seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t threads = 0;
};

Common read_common(KeyValueConfig& cfg, std::uint64_t default_trials) {
  Common common;
  common.base_seed = cfg.get_u64_or("seed", 1);
  common.trials = cfg.get_u64_or("trials", default_trials);
  common.threads = cfg.get_u64_or("threads", 0);
  if (common.trials == 0) throw ConfigError("trials must be >= 1");
  return common;
}

Mode parse_mode(const std::string& value) {
  if (value == "ordered") return Mode::Ordered;
  if (value == "unordered") return Mode::Unordered;
  throw ConfigError("mode must be 'ordered' or 'unordered', got '" + value + "'");
}

std::uint32_t check_u32(std::uint64_t value, const char* what) {
  if (value > UINT32_MAX)
    throw ConfigError(std::string(what) + " exceeds the 32-bit limit");
  return static_cast<std::uint32_t>(value);
}

// Default rebuild-window length R = n / ceil((log2 x)^1.5).
std::uint64_t default_window(std::uint64_t n, std::uint64_t x) {
  const double scaled = std::ceil(std::pow(std::log2(static_cast<double>(x)), 1.5));
  const std::uint64_t divisor = scaled < 1.0 ? 1 : static_cast<std::uint64_t>(scaled);
  return std::max<std::uint64_t>(1, n / divisor);
}

SweepRow make_row(const std::string& experiment, std::uint64_t n, std::uint64_t x,
                  std::uint64_t R, std::uint64_t m, std::uint64_t seed,
                  const std::string& metric, double value) {
  SweepRow row;
  row.experiment = experiment;
  row.n = n;
  row.x = x;
  row.R = R;
  row.beta = R == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(R);
  row.m = m;
  row.seed = seed;
  row.metric = metric;
  row.value = value;
  return row;
}

// --- fresh-insert-cost / fresh-query-cost ---------------------------------

ExperimentResult fresh_cost(const std::string& name, KeyValueConfig& cfg, bool query_metric) {
  const Common common = read_common(cfg, 20);
  const auto ns = cfg.get_u64_list_or("n", {1ull << 18});
  const auto xs = cfg.get_u64_list_or("x", {8, 16});
  const Mode mode = parse_mode(cfg.get_string_or("mode", "unordered"));
  cfg.assert_all_consumed();

  std::vector<TaskFn> tasks;
  std::uint64_t cell = 0;
  for (const std::uint64_t n : ns) {
    for (const std::uint64_t x : xs) {
      for (std::uint64_t trial = 0; trial < common.trials; ++trial) {
        const std::uint64_t seed = derive_seed(common.base_seed, cell, trial);
        tasks.push_back([=]() {
          WorkloadSpec spec;
          spec.kind = WorkloadKind::FillOnly;
          spec.n = check_u32(n, "n");
          spec.x = check_u32(x, "x");
          spec.seed = seed;
          spec.mode = mode;
          spec.keep_traces = false;
          const WorkloadRun run = run_workload(spec);
          const double value =
              query_metric ? expected_query_cost(run.table) : expected_insert_cost(run.table);
          return std::vector<SweepRow>{make_row(name, n, x, 0, 0, seed,
                                                query_metric ? "query_cost" : "insert_cost",
                                                value)};
        });
      }
      ++cell;
    }
  }
  ExperimentResult result;
  result.rows = run_pool(tasks, common.threads);
  return result;
}

// --- hovering sweeps -------------------------------------------------------

ExperimentResult hover_sweep(const std::string& name, KeyValueConfig& cfg, WorkloadKind kind,
                             const char* default_mode, std::uint64_t default_warmup,
                             std::uint64_t default_measured) {
  const Common common = read_common(cfg, 10);
  const auto ns = cfg.get_u64_list_or("n", {1ull << 18});
  const auto xs = cfg.get_u64_list_or("x", {32});
  const std::uint64_t r_override = cfg.get_u64_or("R", 0);
  const std::uint64_t warmup = cfg.get_u64_or("warmup_windows", default_warmup);
  const std::uint64_t measured = cfg.get_u64_or("measured_windows", default_measured);
  const Mode mode = parse_mode(cfg.get_string_or("mode", default_mode));
  const bool insert_first = cfg.get_bool_or("insert_first", false);
  cfg.assert_all_consumed();
  if (measured == 0) throw ConfigError("measured_windows must be >= 1");

  std::vector<TaskFn> tasks;
  std::uint64_t cell = 0;
  for (const std::uint64_t n : ns) {
    for (const std::uint64_t x : xs) {
      const std::uint64_t R = r_override != 0 ? r_override : default_window(n, x);
      for (std::uint64_t trial = 0; trial < common.trials; ++trial) {
        const std::uint64_t seed = derive_seed(common.base_seed, cell, trial);
        tasks.push_back([=]() {
          WorkloadSpec spec;
          spec.kind = kind;
          spec.n = check_u32(n, "n");
          spec.x = check_u32(x, "x");
          spec.R = check_u32(R, "R");
          spec.num_windows = check_u32(warmup + measured, "windows");
          spec.seed = seed;
          spec.mode = mode;
          spec.insert_first = insert_first;
          spec.keep_traces = false;
          const WorkloadRun run = run_workload(spec);
          double amortized = 0.0, fresh = 0.0, deletes = 0.0, query = 0.0;
          for (std::uint64_t w = warmup; w < warmup + measured; ++w) {
            const WindowRecord& window = run.windows[static_cast<std::size_t>(w)];
            amortized += window.mean_insert_cost;
            fresh += window.start_insert_cost;
            deletes += window.mean_delete_cost;
            query += window.start_query_cost;
          }
          const double denom = static_cast<double>(measured);
          std::vector<SweepRow> rows;
          rows.push_back(make_row(name, n, x, R, 0, seed, "amortized_insert_cost",
                                  amortized / denom));
          rows.push_back(make_row(name, n, x, R, 0, seed, "fresh_insert_cost", fresh / denom));
          rows.push_back(make_row(name, n, x, R, 0, seed, "amortized_delete_cost",
                                  deletes / denom));
          rows.push_back(make_row(name, n, x, R, 0, seed, "query_cost", query / denom));
          return rows;
        });
      }
      ++cell;
    }
  }
  ExperimentResult result;
  result.rows = run_pool(tasks, common.threads);
  return result;
}

// --- tradeoff (beta sweep) -------------------------------------------------

ExperimentResult tradeoff(const std::string& name, KeyValueConfig& cfg) {
  const Common common = read_common(cfg, 10);
  const std::uint64_t n = cfg.get_u64_or("n", 1ull << 18);
  const std::uint64_t x = cfg.get_u64_or("x", 32);
  const auto betas = cfg.get_u64_list_or("beta", {1, 4, 16});
  const std::uint64_t warmup = cfg.get_u64_or("warmup_windows", 2);
  const std::uint64_t measured = cfg.get_u64_or("measured_windows", 4);
  const Mode mode = parse_mode(cfg.get_string_or("mode", "ordered"));
  cfg.assert_all_consumed();
  if (measured == 0) throw ConfigError("measured_windows must be >= 1");

  std::vector<TaskFn> tasks;
  std::uint64_t cell = 0;
  for (const std::uint64_t beta : betas) {
    if (beta == 0) throw ConfigError("beta values must be >= 1");
    const std::uint64_t R = std::max<std::uint64_t>(1, n / beta);
    for (std::uint64_t trial = 0; trial < common.trials; ++trial) {
      const std::uint64_t seed = derive_seed(common.base_seed, cell, trial);
      tasks.push_back([=]() {
        WorkloadSpec spec;
        spec.kind = WorkloadKind::FillThenHover;
        spec.n = check_u32(n, "n");
        spec.x = check_u32(x, "x");
        spec.R = check_u32(R, "R");
        spec.num_windows = check_u32(warmup + measured, "windows");
        spec.seed = seed;
        spec.mode = mode;
        spec.keep_traces = false;
        const WorkloadRun run = run_workload(spec);
        double amortized = 0.0, query = 0.0, fresh = 0.0;
        for (std::uint64_t w = warmup; w < warmup + measured; ++w) {
          const WindowRecord& window = run.windows[static_cast<std::size_t>(w)];
          amortized += window.mean_insert_cost;
          query += window.start_query_cost;
          fresh += window.start_insert_cost;
        }
        const double denom = static_cast<double>(measured);
        std::vector<SweepRow> rows;
        rows.push_back(
            make_row(name, n, x, R, 0, seed, "amortized_insert_cost", amortized / denom));
        rows.push_back(make_row(name, n, x, R, 0, seed, "query_cost", query / denom));
        rows.push_back(make_row(name, n, x, R, 0, seed, "fresh_insert_cost", fresh / denom));
        return rows;
      });
    }
    ++cell;
  }
  ExperimentResult result;
  result.rows = run_pool(tasks, common.threads);
  return result;
}

// --- path surplus on Poisson grids ----------------------------------------

ExperimentResult poisson_surplus(const std::string& name, KeyValueConfig& cfg,
                                 std::vector<std::uint64_t> default_ms,
                                 std::uint64_t default_trials) {
  const Common common = read_common(cfg, default_trials);

  if (cfg.has("grid_in")) {
    const std::string grid_path = cfg.get_string("grid_in");
    const double width = cfg.get_double("width");
    const double height = cfg.get_double("height");
    const std::string witness_out = cfg.get_string_or("witness_out", "");
    cfg.assert_all_consumed();
    std::ifstream in(grid_path);
    if (!in) throw ConfigError("cannot open grid file '" + grid_path + "'");
    const DotGrid grid = read_grid_csv(in, width, height);
    const SurplusSolution solution = max_surplus(grid);
    if (!witness_out.empty()) {
      std::ofstream out(witness_out);
      if (!out) throw ConfigError("cannot open witness output '" + witness_out + "'");
      write_path_csv(out, solution.witness);
    }
    ExperimentResult result;
    result.rows.push_back(
        make_row(name, 0, 0, 0, 0, 0, "max_surplus", static_cast<double>(solution.value)));
    return result;
  }

  const auto ms = cfg.get_u64_list_or("m", std::move(default_ms));
  const std::string witness_out = cfg.get_string_or("witness_out", "");
  cfg.assert_all_consumed();

  std::vector<TaskFn> tasks;
  std::uint64_t cell = 0;
  for (const std::uint64_t m : ms) {
    for (std::uint64_t trial = 0; trial < common.trials; ++trial) {
      const std::uint64_t seed = derive_seed(common.base_seed, cell, trial);
      tasks.push_back([=]() {
        const DotGrid grid = gen_poisson_grid(check_u32(m, "m"), seed);
        const std::int64_t value = max_surplus_value(grid);
        return std::vector<SweepRow>{
            make_row(name, 0, 0, 0, m, seed, "max_surplus", static_cast<double>(value))};
      });
    }
    ++cell;
  }
  ExperimentResult result;
  result.rows = run_pool(tasks, common.threads);
  if (!witness_out.empty()) {
    // Witness of the sweep's first unit, recomputed with its exact seed.
    const DotGrid grid =
        gen_poisson_grid(check_u32(ms.front(), "m"), derive_seed(common.base_seed, 0, 0));
    const SurplusSolution solution = max_surplus(grid);
    std::ofstream out(witness_out);
    if (!out) throw ConfigError("cannot open witness output '" + witness_out + "'");
    write_path_csv(out, solution.witness);
  }
  return result;
}

// --- identity audit --------------------------------------------------------

ExperimentResult identity_audit(const std::string& name, KeyValueConfig& cfg) {
  const Common common = read_common(cfg, 13);
  const auto ns = cfg.get_u64_list_or("n", {32, 64});
  const auto xs = cfg.get_u64_list_or("x", {4, 8});
  const auto rdivs = cfg.get_u64_list_or("r_div", {4, 1});
  const std::uint64_t windows = cfg.get_u64_or("windows", 1);
  const std::string mode_str = cfg.get_string_or("mode", "both");
  cfg.assert_all_consumed();
  if (windows == 0) throw ConfigError("windows must be >= 1");

  std::vector<Mode> modes;
  if (mode_str == "both") {
    modes = {Mode::Ordered, Mode::Unordered};
  } else {
    modes = {parse_mode(mode_str)};
  }

  std::vector<TaskFn> tasks;
  std::uint64_t cell = 0;
  for (const Mode mode : modes) {
    for (const std::uint64_t n : ns) {
      for (const std::uint64_t x : xs) {
        for (const std::uint64_t rdiv : rdivs) {
          if (rdiv == 0) throw ConfigError("r_div values must be >= 1");
          const std::uint64_t R = std::max<std::uint64_t>(1, n / rdiv);
          for (std::uint64_t trial = 0; trial < common.trials; ++trial) {
            const std::uint64_t seed = derive_seed(common.base_seed, cell, trial);
            tasks.push_back([=]() {
              WorkloadSpec spec;
              spec.kind = mode == Mode::Ordered ? WorkloadKind::FillThenHover
                                                : WorkloadKind::AverageCase;
              spec.n = check_u32(n, "n");
              spec.x = check_u32(x, "x");
              spec.R = check_u32(R, "R");
              spec.num_windows = check_u32(windows, "windows");
              spec.seed = seed;
              spec.mode = mode;
              const WorkloadRun run = run_workload(spec);
              std::uint64_t violations = 0;
              for (const WindowRecord& window : run.windows) {
                const IdentityReport report = verify_crossing_identity(window.trace, mode);
                if (!report.holds) ++violations;
              }
              std::vector<SweepRow> rows;
              rows.push_back(make_row(name, n, x, R, 0, seed, "violations",
                                      static_cast<double>(violations)));
              rows.push_back(make_row(name, n, x, R, 0, seed, "windows_checked",
                                      static_cast<double>(windows)));
              return rows;
            });
          }
          ++cell;
        }
      }
    }
  }
  ExperimentResult result;
  result.rows = run_pool(tasks, common.threads);
  return result;
}

// --- recursive constructor vs exact optimum --------------------------------

ExperimentResult alg1_vs_dp(const std::string& name, KeyValueConfig& cfg) {
  const Common common = read_common(cfg, 200);
  const auto ms = cfg.get_u64_list_or("m", {256});
  cfg.assert_all_consumed();

  std::vector<TaskFn> tasks;
  std::uint64_t cell = 0;
  for (const std::uint64_t m : ms) {
    for (std::uint64_t trial = 0; trial < common.trials; ++trial) {
      const std::uint64_t seed = derive_seed(common.base_seed, cell, trial);
      tasks.push_back([=]() {
        const DotGrid grid = gen_poisson_grid(check_u32(m, "m"), seed);
        const DisplacementPathResult constructed = build_displacement_path(grid, seed);
        const std::int64_t path_value = surplus_of_path(grid, constructed.path);
        const std::int64_t best = max_surplus_value(grid);
        std::vector<SweepRow> rows;
        rows.push_back(
            make_row(name, 0, 0, 0, m, seed, "path_surplus", static_cast<double>(path_value)));
        rows.push_back(
            make_row(name, 0, 0, 0, m, seed, "max_surplus", static_cast<double>(best)));
        rows.push_back(make_row(name, 0, 0, 0, m, seed, "dominance_ok",
                                path_value <= best ? 1.0 : 0.0));
        rows.push_back(make_row(name, 0, 0, 0, m, seed, "regions_disjoint",
                                regions_disjoint(constructed.nodes) ? 1.0 : 0.0));
        return rows;
      });
    }
    ++cell;
  }
  ExperimentResult result;
  result.rows = run_pool(tasks, common.threads);
  return result;
}

// --- free-slot deficit ------------------------------------------------------

ExperimentResult deficit_sweep(const std::string& name, KeyValueConfig& cfg) {
  const Common common = read_common(cfg, 100);
  const auto ns = cfg.get_u64_list_or("n", {1ull << 16});
  const auto xs = cfg.get_u64_list_or("x", {4, 8, 16});
  const std::uint64_t r_override = cfg.get_u64_or("R", 0);
  const std::uint64_t warmup = cfg.get_u64_or("warmup_windows", 2);
  const std::uint64_t measured = cfg.get_u64_or("measured_windows", 1);
  const Mode mode = parse_mode(cfg.get_string_or("mode", "ordered"));
  cfg.assert_all_consumed();
  if (measured == 0) throw ConfigError("measured_windows must be >= 1");

  std::vector<TaskFn> tasks;
  std::uint64_t cell = 0;
  for (const std::uint64_t n : ns) {
    for (const std::uint64_t x : xs) {
      const std::uint64_t R = r_override != 0 ? r_override : default_window(n, x);
      for (std::uint64_t trial = 0; trial < common.trials; ++trial) {
        const std::uint64_t seed = derive_seed(common.base_seed, cell, trial);
        tasks.push_back([=]() {
          WorkloadSpec spec;
          spec.kind = WorkloadKind::FillThenHover;
          spec.n = check_u32(n, "n");
          spec.x = check_u32(x, "x");
          spec.R = check_u32(R, "R");
          spec.num_windows = check_u32(warmup + measured, "windows");
          spec.seed = seed;
          spec.mode = mode;
          spec.keep_traces = false;  // snapshots survive trimming
          const WorkloadRun run = run_workload(spec);
          double total = 0.0;
          for (std::uint64_t w = warmup; w < warmup + measured; ++w) {
            const WindowRecord& window = run.windows[static_cast<std::size_t>(w)];
            total += free_slot_deficit(window.trace.free_snapshot, check_u32(x, "x"));
          }
          return std::vector<SweepRow>{make_row(name, n, x, R, 0, seed, "free_slot_deficit",
                                                total / static_cast<double>(measured))};
        });
      }
      ++cell;
    }
  }
  ExperimentResult result;
  result.rows = run_pool(tasks, common.threads);
  return result;
}

}  // namespace

const std::vector<std::string>& experiment_catalog() {
  static const std::vector<std::string> catalog = {
      "fresh-insert-cost", "fresh-query-cost", "hover-amortized",     "unordered-hover",
      "tradeoff",          "path-surplus",     "path-surplus-scaling", "identity-audit",
      "alg1-vs-dp",        "free-slot-deficit",
  };
  return catalog;
}

ExperimentResult run_experiment(const std::string& name, KeyValueConfig& config) {
  ExperimentResult result;
  if (name == "fresh-insert-cost") {
    result = fresh_cost(name, config, /*query_metric=*/false);
  } else if (name == "fresh-query-cost") {
    result = fresh_cost(name, config, /*query_metric=*/true);
  } else if (name == "hover-amortized") {
    result = hover_sweep(name, config, WorkloadKind::FillThenHover, "ordered", 4, 8);
  } else if (name == "unordered-hover") {
    result = hover_sweep(name, config, WorkloadKind::AverageCase, "unordered", 4, 8);
  } else if (name == "tradeoff") {
    result = tradeoff(name, config);
  } else if (name == "path-surplus") {
    result = poisson_surplus(name, config, {64}, 1);
  } else if (name == "path-surplus-scaling") {
    result = poisson_surplus(name, config, {16, 64, 256}, 200);
  } else if (name == "identity-audit") {
    result = identity_audit(name, config);
  } else if (name == "alg1-vs-dp") {
    result = alg1_vs_dp(name, config);
  } else if (name == "free-slot-deficit") {
    result = deficit_sweep(name, config);
  } else {
    std::string names;
    for (const std::string& entry : experiment_catalog()) {
      if (!names.empty()) names += ", ";
      names += entry;
    }
    throw UnknownExperimentError("unknown experiment '" + name + "'; catalog: " + names);
  }
  for (const SweepRow& row : result.rows) {
    if (row.metric == "violations") result.violations += static_cast<std::uint64_t>(row.value);
  }
  return result;
}

std::string format_csv_number(double value) {
  if (std::isfinite(value) && value == std::floor(value) && std::fabs(value) < 9.0e15) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%lld", static_cast<long long>(value));
    return buffer;
  }
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "experiment,n,x,R,beta,m,seed,metric,value\n";
  char seed_hex[32];
  for (const SweepRow& row : rows) {
    std::snprintf(seed_hex, sizeof(seed_hex), "0x%016llx",
                  static_cast<unsigned long long>(row.seed));
    out << row.experiment << ',' << row.n << ',' << row.x << ',' << row.R << ','
        << format_csv_number(row.beta) << ',' << row.m << ',' << seed_hex << ',' << row.metric
        << ',' << format_csv_number(row.value) << "\n";
  }
}

}  // namespace probelab
