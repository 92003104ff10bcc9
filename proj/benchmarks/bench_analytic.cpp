#include <benchmark/benchmark.h>

#include "pzf_udn/analytic.hpp"
#include "pzf_udn/specfun.hpp"

using namespace pzf_udn;

namespace {

const NetworkParams kNet;  // lambda 1e-2, alpha 4, unit powers, r0 10

void BM_Gauss2F1(benchmark::State& state) {
    const specfun::Hyp2F1Params p{1.0, 0.5, 1.5};
    const double z = -std::pow(10.0, double(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(specfun::gauss_2f1_negz(p, z));
}
BENCHMARK(BM_Gauss2F1)->Arg(0)->Arg(2)->Arg(4)->Arg(6);

void BM_DerivLadder(benchmark::State& state) {
    const specfun::Hyp2F1Params p{1.0, 0.5, 1.5};
    const int n_max = int(state.range(0));
    for (auto _ : state) {
        auto d = specfun::gauss_2f1_derivs(p, -100.0, n_max);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_DerivLadder)->Arg(4)->Arg(9)->Arg(19);

void BM_SuccessApprox(benchmark::State& state) {
    const PzfConfig cfg{10, int(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(success_prob_approx(kNet, cfg, 1.0));
}
BENCHMARK(BM_SuccessApprox)->Arg(1)->Arg(5)->Arg(9);

void BM_SuccessExactM0(benchmark::State& state) {
    const int n_r = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(success_prob_exact_m0(kNet, n_r, 1.0));
}
BENCHMARK(BM_SuccessExactM0)->Arg(4)->Arg(10)->Arg(20);

void BM_UpperBound(benchmark::State& state) {
    const PzfConfig cfg{10, int(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(success_prob_upper_alzer(kNet, cfg, 1.0));
}
BENCHMARK(BM_UpperBound)->Arg(1)->Arg(5)->Arg(9);

void BM_OptimalM(benchmark::State& state) {
    const int n_r = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(find_optimal_m(kNet, n_r, 1.0));
}
BENCHMARK(BM_OptimalM)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
