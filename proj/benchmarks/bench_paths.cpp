#include "pcamix/kiers.hpp"
#include "pcamix/pcamix.hpp"
#include "pcamix/recode.hpp"
#include "pcamix/simbench.hpp"
#include "pcamix/varimax.hpp"

#include <benchmark/benchmark.h>

namespace {

pcamix::MixedTable table_for(const benchmark::State& state) {
  pcamix::sim::SimConfig config;
  config.n = state.range(0);
  config.p = state.range(1);
  config.seed = 7;
  return pcamix::sim::simulate(config);
}

void BM_SvdPath(benchmark::State& state) {
  const auto table = table_for(state);
  for (auto _ : state) {
    const auto model = pcamix::fit(pcamix::recode(table), 2);
    auto rotated = pcamix::rotate(model);
    benchmark::DoNotOptimize(rotated);
  }
}

void BM_ReformulationPath(benchmark::State& state) {
  const auto table = table_for(state);
  for (auto _ : state) {
    const auto qs = pcamix::kiers::build_quantification(table);
    const auto original = pcamix::kiers::fit_original(qs, 2);
    auto rotated = pcamix::kiers::rotate_reformulation(qs, original);
    benchmark::DoNotOptimize(rotated);
  }
}

void BM_Rotation(benchmark::State& state) {
  const auto model = pcamix::fit(pcamix::recode(table_for(state)), 2);
  for (auto _ : state) {
    auto rotated = pcamix::rotate(model);
    benchmark::DoNotOptimize(rotated);
  }
}

void grid(benchmark::internal::Benchmark* b) {
  for (long n : {50, 100, 200})
    for (long p : {10, 50}) b->Args({n, p});
  b->ArgNames({"n", "p"})->Unit(benchmark::kMicrosecond);
}

}  // namespace

BENCHMARK(BM_SvdPath)->Apply(grid);
BENCHMARK(BM_ReformulationPath)->Apply(grid);
BENCHMARK(BM_Rotation)->Apply(grid);
BENCHMARK_MAIN();
