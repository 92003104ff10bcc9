#include <benchmark/benchmark.h>

#include "pzf_udn/philox.hpp"
#include "pzf_udn/simulator.hpp"

using namespace pzf_udn;

namespace {

const NetworkParams kNet;

void BM_PhiloxDouble(benchmark::State& state) {
    PhiloxStream rng(1, 0);
    double acc = 0.0;
    for (auto _ : state) acc += rng.next_double();
    benchmark::DoNotOptimize(acc);
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxDouble);

void BM_PhiloxNormalPair(benchmark::State& state) {
    PhiloxStream rng(1, 0);
    double acc = 0.0;
    for (auto _ : state) {
        auto [a, b] = rng.next_normal_pair();
        acc += a + b;
    }
    benchmark::DoNotOptimize(acc);
    state.SetItemsProcessed(2 * state.iterations());
}
BENCHMARK(BM_PhiloxNormalPair);

void BM_SamplePpp(benchmark::State& state) {
    std::uint64_t trial = 0;
    PppRealization field;
    for (auto _ : state) {
        PhiloxStream rng(7, trial++);
        detail::sample_ppp_stream(kNet, double(state.range(0)), rng, field);
        benchmark::DoNotOptimize(field.distances);
    }
}
BENCHMARK(BM_SamplePpp)->Arg(200)->Arg(2000);

void BM_EstimateSuccess(benchmark::State& state) {
    SimConfig sim;
    sim.trials = 200;
    sim.model = SimModel(state.range(0));
    const PzfConfig cfg{10, 5};
    std::uint64_t seed = 1;
    for (auto _ : state) {
        sim.seed = seed++;
        benchmark::DoNotOptimize(estimate_success(kNet, cfg, 1.0, sim));
    }
    state.SetItemsProcessed(sim.trials * state.iterations());
}
BENCHMARK(BM_EstimateSuccess)
    ->Arg(int(SimModel::exact))
    ->Arg(int(SimModel::approx_dm))
    ->Arg(int(SimModel::gamma_shortcut));

}  // namespace

BENCHMARK_MAIN();
