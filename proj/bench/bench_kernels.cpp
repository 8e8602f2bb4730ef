// Parallel kernels against the serial reference on the same streams.
#include "rwtail/aggregation.hpp"
#include "rwtail/kernels.hpp"
#include "rwtail/montecarlo.hpp"

#include <benchmark/benchmark.h>

#include <optional>

using namespace rwtail;

namespace {

Scenario frechet3() {
    const auto p = MarginalModel::pareto(2, 1);
    return Scenario(3, {p, p, p}, std::nullopt,
                    WeightVectorSpec({WeightModel::uniform(1), WeightModel::uniform(1), WeightModel::uniform(1)}));
}

Scenario lcr5() {
    const auto x = MarginalModel::lognormal(0, 1);
    const auto w = WeightModel::beta(2, 3);
    return Scenario(3, {x, x, x, x, x}, CorrelationMatrix::equicorrelated(5, 0.3),
                    WeightVectorSpec({w, w, w}));
}

Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::SerialReference : Execution::Parallel;
}

McConfig config(const benchmark::State& state) {
    McConfig c;
    c.samples = 200'000;
    c.seed = 11;
    c.workers = default_workers();
    c.execution = mode(state);
    return c;
}

void BM_crude(benchmark::State& state) {
    const Scenario s = frechet3();
    const McConfig c = config(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(crude(s, 30.0, c));
    }
    state.SetItemsProcessed(state.iterations() * c.samples);
}

void BM_conditional(benchmark::State& state) {
    const Scenario s = frechet3();
    const McConfig c = config(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(conditional_c1(s, 30.0, c));
    }
    state.SetItemsProcessed(state.iterations() * c.samples);
}

void BM_sample_lc(benchmark::State& state) {
    const Scenario s = lcr5();
    const McConfig c = config(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_lc(s, c.samples, c.seed, c.workers, c.execution));
    }
    state.SetItemsProcessed(state.iterations() * c.samples);
}

} // namespace

// Arg 0: serial reference, 1: OpenMP.
BENCHMARK(BM_crude)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_conditional)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_lc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
