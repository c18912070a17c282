// Serial versus OpenMP suite runner on the same generated cases.

#include <benchmark/benchmark.h>

#include "cochoice/harness.hpp"

namespace {

cochoice::SuiteOptions options(const benchmark::State& state) {
  cochoice::SuiteOptions opt;
  opt.n = static_cast<std::size_t>(state.range(0));
  opt.seed = 42;
  return opt;
}

void BM_SuiteSerial(benchmark::State& state) {
  const auto opt = options(state);
  for (auto _ : state) benchmark::DoNotOptimize(cochoice::run_suite_serial(opt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SuiteParallel(benchmark::State& state) {
  const auto opt = options(state);
  for (auto _ : state) benchmark::DoNotOptimize(cochoice::run_suite_parallel(opt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WeakBisim(benchmark::State& state) {
  const auto e = cochoice::gen_typed_source(42 + state.range(0), 1 + state.range(0) % 30);
  for (auto _ : state) benchmark::DoNotOptimize(cochoice::check_weak_bisim_pseudo(e, 8, 200));
}

}  // namespace

BENCHMARK(BM_SuiteSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SuiteParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WeakBisim)->Arg(21)->Arg(87)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
