// Microbenchmarks for the surplus machinery: exact maximum-surplus solves on
// Poisson grids and one full per-index identity verification window.

#include <benchmark/benchmark.h>

#include "probelab/crossing_audit.hpp"
#include "probelab/max_surplus.hpp"
#include "probelab/poisson_grid.hpp"
#include "probelab/workloads.hpp"

namespace {

using namespace probelab;

void BM_max_surplus_value(benchmark::State& state) {
  const std::uint32_t m = static_cast<std::uint32_t>(state.range(0));
  const DotGrid grid = gen_poisson_grid(m, 0xfeed);
  for (auto _ : state) benchmark::DoNotOptimize(max_surplus_value(grid));
  state.SetLabel(std::to_string(grid.dots.size()) + " dots");
}

void BM_max_surplus_witness(benchmark::State& state) {
  const std::uint32_t m = static_cast<std::uint32_t>(state.range(0));
  const DotGrid grid = gen_poisson_grid(m, 0xfeed);
  for (auto _ : state) benchmark::DoNotOptimize(max_surplus(grid).value);
}

void BM_identity_window(benchmark::State& state) {
  WorkloadSpec spec;
  spec.kind = WorkloadKind::FillThenHover;
  spec.n = static_cast<std::uint32_t>(state.range(0));
  spec.x = 4;
  spec.R = spec.n / 4;
  spec.num_windows = 1;
  spec.seed = 0xabc1;
  spec.mode = Mode::Ordered;
  const WorkloadRun run = run_workload(spec);
  for (auto _ : state) {
    const IdentityReport report = verify_crossing_identity(run.windows[0].trace, Mode::Ordered);
    if (!report.holds) state.SkipWithError("identity violated");
    benchmark::DoNotOptimize(report.holds);
  }
}

}  // namespace

BENCHMARK(BM_max_surplus_value)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_max_surplus_witness)->Arg(16)->Arg(64);
BENCHMARK(BM_identity_window)->Arg(64)->Arg(128);
