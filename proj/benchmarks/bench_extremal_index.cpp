#include "ssbm/extremal_index.hpp"
#include "ssbm/simulate.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>

namespace {

void BM_ThetaCurve(benchmark::State& state) {
    const int len = static_cast<int>(state.range(0));
    ssbm::Xoshiro256pp rng(7);
    std::vector<double> series(static_cast<std::size_t>(len));
    for (auto& x : series) x = rng.next_exponential(1.0);
    std::vector<double> sorted(series);
    std::sort(sorted.begin(), sorted.end());
    ssbm::Marginal marginal{ssbm::EmpiricalCdf(sorted)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            ssbm::theta_curve(series, marginal, ssbm::ZVariant::kBb));
    }
}
BENCHMARK(BM_ThetaCurve)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMillisecond);

}  // namespace
