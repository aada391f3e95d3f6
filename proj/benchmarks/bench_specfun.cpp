#include "ssbm/specfun.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_LambertW0(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssbm::specfun::lambert_w0(x));
        x = x < 1e8 ? x * 1.37 : 0.1;
    }
}
BENCHMARK(BM_LambertW0);

void BM_ErfcInv(benchmark::State& state) {
    double y = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssbm::specfun::erfc_inv(y));
        y = y < 1.9 ? y * 1.11 : 1e-6;
    }
}
BENCHMARK(BM_ErfcInv);

void BM_LogBeta(benchmark::State& state) {
    double a = 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssbm::specfun::log_beta(a, 0.75));
        a = a < 1e6 ? a * 1.5 : 2.0;
    }
}
BENCHMARK(BM_LogBeta);

void BM_Trigamma(benchmark::State& state) {
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssbm::specfun::trigamma(x));
        x = x < 1e5 ? x * 1.8 : 0.5;
    }
}
BENCHMARK(BM_Trigamma);

}  // namespace

BENCHMARK_MAIN();
