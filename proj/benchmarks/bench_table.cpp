// Microbenchmarks for the probing core: steady-state insert/delete churn and
// successful queries at the load cap, in both probing modes.

#include <benchmark/benchmark.h>

#include <vector>

#include "probelab/rng.hpp"
#include "probelab/table.hpp"

namespace {

using namespace probelab;

Table filled_table(std::uint32_t n, std::uint32_t x, Mode mode, std::uint64_t seed,
                   std::vector<std::uint64_t>& keys) {
  TableConfig config{n, x, n, mode, seed, false, false};
  Table table(config);
  const std::uint32_t target = config.capacity();
  keys.clear();
  for (std::uint32_t i = 0; i < target; ++i) {
    const std::uint64_t key = (seed << 20) + i + 1;
    table.insert(key);
    keys.push_back(key);
  }
  return table;
}

void BM_insert_delete_churn(benchmark::State& state, Mode mode) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const std::uint32_t x = static_cast<std::uint32_t>(state.range(1));
  std::vector<std::uint64_t> keys;
  Table table = filled_table(n, x, mode, 0x9bc1, keys);
  RngStream rng(0x51ee7);
  std::uint64_t fresh = 1ull << 40;
  for (auto _ : state) {
    const std::size_t at = static_cast<std::size_t>(rng.next_below(keys.size()));
    table.erase(keys[at]);
    const std::uint64_t key = fresh++;
    benchmark::DoNotOptimize(table.insert(key));
    keys[at] = key;
    if (table.tombstone_count() > n / 4) {
      state.PauseTiming();
      table.rebuild();
      state.ResumeTiming();
    }
  }
}

void BM_query_hit(benchmark::State& state, Mode mode) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const std::uint32_t x = static_cast<std::uint32_t>(state.range(1));
  std::vector<std::uint64_t> keys;
  const Table table = filled_table(n, x, mode, 0x9bc1, keys);
  RngStream rng(0x51ee7);
  for (auto _ : state) {
    const std::size_t at = static_cast<std::size_t>(rng.next_below(keys.size()));
    benchmark::DoNotOptimize(table.query(keys[at]));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_insert_delete_churn, ordered, probelab::Mode::Ordered)
    ->Args({1 << 16, 8})
    ->Args({1 << 16, 32});
BENCHMARK_CAPTURE(BM_insert_delete_churn, unordered, probelab::Mode::Unordered)
    ->Args({1 << 16, 8})
    ->Args({1 << 16, 32});
BENCHMARK_CAPTURE(BM_query_hit, ordered, probelab::Mode::Ordered)->Args({1 << 16, 8});
BENCHMARK_CAPTURE(BM_query_hit, unordered, probelab::Mode::Unordered)->Args({1 << 16, 8});

BENCHMARK_MAIN();
