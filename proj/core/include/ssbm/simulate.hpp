#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ssbm {

// splitmix64 step: advances the state and returns a mixed 64-bit word.
// Used both as a standalone mixer and to seed the main generator.
std::uint64_t splitmix64_next(std::uint64_t& state);

// xoshiro256++ with splitmix64 seed expansion. Integer state only, so the
// stream is identical on every platform.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed);

    std::uint64_t next_u64();
    // Uniform on [0, 1) with 53 random bits.
    double next_double();
    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double next_normal();
    // Exponential with the given mean, by inverse CDF.
    double next_exponential(double mean);
    // Gamma(shape, 1) via Marsaglia-Tsang squeeze (any shape > 0).
    double next_gamma(double shape);

  private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Derives the generator seed for one replicate from the base seed.
std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t replicate);

struct SimulationConfig {
    double phi = 0.0;       // AR(1) coefficient in [0, 1)
    double xi = 1.0;        // theoretical EVI, > 0
    int length = 365;
    int replicates = 50;
    std::uint64_t base_seed = 0;
};

// Y_i = exp(X_i), X_i = phi X_{i-1} + eps_i, eps ~ Exp(mean xi), after a
// 1000-step burn-in. Deterministic per (base_seed, replicate).
std::vector<double> ar1_exp(const SimulationConfig& config, std::uint64_t replicate);

// |t_nu| draws (t via normal / sqrt(chi^2_nu / nu)).
std::vector<double> student_t_abs(double nu, int n, std::uint64_t seed);

// |N(0, sigma^2)| draws.
std::vector<double> half_gaussian(double sigma, int n, std::uint64_t seed);

struct BenchmarkRow {
    double phi;
    double xi;
    std::string method;
    double mape;       // over successful replicates
    int failures;      // replicates where the estimator errored
    int replicates;
    int k;             // upper order statistics used (0 for the WLSE methods)
};

struct BenchmarkTable {
    std::vector<BenchmarkRow> rows;
};

// Runs all six estimators (EMR/MPMR-WLSE on log Y; Hill, Schultze-
// Steinebach, Meerschaert-Scheffler, Smith on Y) over the (phi, xi) grid
// and summarizes accuracy as MAPE per method. k = 0 selects the default
// floor(sqrt(length)) for the order-statistics estimators. Estimator
// failures are counted and excluded, never thrown.
BenchmarkTable run_benchmark(const std::vector<double>& phis, const std::vector<double>& xis,
                             int replicates, int length, std::uint64_t base_seed, int k = 0);

}  // namespace ssbm
