#pragma once

// Named experiment presets behind the CLI: each one expands a key-value
// config into a deterministic sweep of independent (cell, trial) units,
// executes them on a worker pool, and merges rows by unit index so the CSV
// is byte-identical regardless of thread count.
//
// Catalog:
//   fresh-insert-cost   expected insertion scan cost of freshly filled tables
//   fresh-query-cost    expected successful-lookup cost of the same states
//   hover-amortized     amortized vs fresh insertion cost under hovering
//   unordered-hover     the same regime, unordered tables + two-stage deletes
//   tradeoff            amortized insert / query cost across beta = n/R
//   path-surplus        maximum path surplus of one grid (file or Poisson)
//   path-surplus-scaling  E[max surplus] across grid sides m
//   identity-audit      per-index crossing-identity verification across seeds
//   alg1-vs-dp          recursive constructor surplus vs the exact optimum
//   free-slot-deficit   window-start free-slot deficit statistic vs x

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "probelab/config.hpp"

namespace probelab {

struct SweepRow {
  std::string experiment;
  std::uint64_t n = 0;
  std::uint64_t x = 0;
  std::uint64_t R = 0;
  double beta = 0.0;   // n/R when a rebuild window is in play
  std::uint64_t m = 0; // grid side for surplus experiments
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
};

struct ExperimentResult {
  std::vector<SweepRow> rows;
  // Sum of every `violations` metric (identity-audit); nonzero means the
  // audit failed and the CLI exits with status 3.
  std::uint64_t violations = 0;
};

const std::vector<std::string>& experiment_catalog();

// Runs a preset. Throws UnknownExperimentError for names outside the catalog
// and ConfigError for bad or leftover keys (every key must be consumed).
ExperimentResult run_experiment(const std::string& name, KeyValueConfig& config);

// Header `experiment,n,x,R,beta,m,seed,metric,value`, one row per line, LF
// endings, seeds in hex, numbers integer-formatted when they are integral.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

std::string format_csv_number(double value);

}  // namespace probelab
