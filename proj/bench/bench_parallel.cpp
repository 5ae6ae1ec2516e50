// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to compare.

#include <benchmark/benchmark.h>

#include "ipbounds/optimizer.hpp"
#include "ipbounds/verify.hpp"

using namespace ipbounds;

namespace {

FuzzConfig fuzz_config(benchmark::State& state) {
    FuzzConfig cfg;
    cfg.seed = 7;
    cfg.instances = static_cast<std::size_t>(state.range(0));
    return cfg;
}

void BM_FuzzSerial(benchmark::State& state) {
    const FuzzConfig cfg = fuzz_config(state);
    for (auto _ : state) benchmark::DoNotOptimize(fuzz_serial(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FuzzParallel(benchmark::State& state) {
    const FuzzConfig cfg = fuzz_config(state);
    for (auto _ : state) benchmark::DoNotOptimize(fuzz(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void optimize_with(benchmark::State& state, Execution execution) {
    FuzzConfig cfg;
    cfg.seed = 11;
    cfg.n_min = cfg.n_max = 8;
    const Instance inst = random_instance(cfg, 0);
    OptimConfig oc;
    oc.target = Target::Branch;
    oc.scope = Scope::BestOfAll;
    oc.execution = execution;
    for (auto _ : state) benchmark::DoNotOptimize(optimize(inst, oc));
}

void BM_OptimizeSerial(benchmark::State& state) { optimize_with(state, Execution::Serial); }
void BM_OptimizeParallel(benchmark::State& state) { optimize_with(state, Execution::Parallel); }

}  // namespace

BENCHMARK(BM_FuzzSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FuzzParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptimizeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptimizeParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
