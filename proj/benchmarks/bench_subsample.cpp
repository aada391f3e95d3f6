#include "ssbm/simulate.hpp"
#include "ssbm/subsample.hpp"

#include <benchmark/benchmark.h>

namespace {

ssbm::SortedSample exp_sample(int n) {
    ssbm::Xoshiro256pp rng(41);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng.next_exponential(1.0);
    return ssbm::make_sorted_sample(std::move(v));
}

void BM_Weights(benchmark::State& state) {
    const int n_raw = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssbm::weights(n_raw, n_raw / 64));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Weights)->Range(1 << 10, 1 << 17)->Complexity(benchmark::oN);

void BM_MomentsHat(benchmark::State& state) {
    const int n_raw = static_cast<int>(state.range(0));
    ssbm::SortedSample sample = exp_sample(n_raw);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssbm::moments_hat(sample, n_raw / 64));
    }
}
BENCHMARK(BM_MomentsHat)->Range(1 << 10, 1 << 17);

void BM_MpmrHat(benchmark::State& state) {
    const int n_raw = static_cast<int>(state.range(0));
    ssbm::SortedSample sample = exp_sample(n_raw);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssbm::mpmr_hat(sample, n_raw / 64));
    }
}
BENCHMARK(BM_MpmrHat)->Range(1 << 10, 1 << 16);

void BM_BmCurve(benchmark::State& state) {
    const int n_raw = static_cast<int>(state.range(0));
    ssbm::SortedSample sample = exp_sample(n_raw);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssbm::bm_curve(sample));
    }
}
BENCHMARK(BM_BmCurve)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

}  // namespace
