#include "ssbm/simulate.hpp"

#include "ssbm/errors.hpp"
#include "ssbm/evi.hpp"
#include "ssbm/plateau.hpp"
#include "ssbm/specfun.hpp"
#include "ssbm/subsample.hpp"
#include "ssbm/tail_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace ssbm {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64_next(sm);
}

std::uint64_t Xoshiro256pp::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256pp::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Xoshiro256pp::next_normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on (0,1] uniforms so the log never sees zero.
    double u1 = 1.0 - next_double();
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * specfun::kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

double Xoshiro256pp::next_exponential(double mean) {
    return -mean * std::log1p(-next_double());
}

double Xoshiro256pp::next_gamma(double shape) {
    if (!(shape > 0.0)) throw domain_error("next_gamma: shape must be positive");
    if (shape < 1.0) {
        // Boost by one and rescale with an extra uniform.
        double g = next_gamma(shape + 1.0);
        double u = 1.0 - next_double();
        return g * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z = next_normal();
        double v = 1.0 + c * z;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = 1.0 - next_double();
        if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return d * v;
    }
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t replicate) {
    std::uint64_t sm = base_seed ^ (0x9E3779B97F4A7C15ULL * (replicate + 1));
    return splitmix64_next(sm);
}

std::vector<double> ar1_exp(const SimulationConfig& config, std::uint64_t replicate) {
    if (!(config.phi >= 0.0 && config.phi < 1.0))
        throw domain_error("ar1_exp: phi must lie in [0, 1)");
    if (!(config.xi > 0.0)) throw domain_error("ar1_exp: xi must be positive");
    if (config.length < 1) throw domain_error("ar1_exp: length must be >= 1");

    Xoshiro256pp rng(replicate_seed(config.base_seed, replicate));
    double x = 0.0;
    for (int i = 0; i < 1000; ++i) x = config.phi * x + rng.next_exponential(config.xi);
    std::vector<double> y(static_cast<std::size_t>(config.length));
    for (auto& v : y) {
        x = config.phi * x + rng.next_exponential(config.xi);
        v = std::exp(x);
    }
    return y;
}

std::vector<double> student_t_abs(double nu, int n, std::uint64_t seed) {
    if (!(nu > 0.0)) throw domain_error("student_t_abs: nu must be positive");
    if (n < 1) throw domain_error("student_t_abs: n must be >= 1");
    Xoshiro256pp rng(seed);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& v : out) {
        double z = rng.next_normal();
        double chi2 = 2.0 * rng.next_gamma(0.5 * nu);
        v = std::fabs(z / std::sqrt(chi2 / nu));
    }
    return out;
}

std::vector<double> half_gaussian(double sigma, int n, std::uint64_t seed) {
    if (!(sigma > 0.0)) throw domain_error("half_gaussian: sigma must be positive");
    if (n < 1) throw domain_error("half_gaussian: n must be >= 1");
    Xoshiro256pp rng(seed);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& v : out) v = std::fabs(sigma * rng.next_normal());
    return out;
}

namespace {

// One WLSE estimate (either method) from a raw positive series.
double wlse_on_log(const std::vector<double>& y, EviMethod method) {
    std::vector<double> logged(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) throw domain_error("wlse_on_log: series must be positive");
        logged[i] = std::log(y[i]);
    }
    SortedSample sample = make_sorted_sample(std::move(logged), Transform::kLog);
    BmCurve curve = bm_curve(sample);
    SdSpline spline = fit_sd_spline(curve);
    double n0 = std::sqrt(static_cast<double>(sample.values.size()));
    PlateauRange range = find_plateau(spline, 0.1, n0);
    return method == EviMethod::kEmrWlse ? wlse_emr(curve, range).xi_hat
                                         : wlse_mpmr(curve, range).xi_hat;
}

}  // namespace

BenchmarkTable run_benchmark(const std::vector<double>& phis, const std::vector<double>& xis,
                             int replicates, int length, std::uint64_t base_seed, int k) {
    if (phis.empty() || xis.empty()) throw domain_error("run_benchmark: empty grid");
    if (replicates < 1) throw domain_error("run_benchmark: need at least one replicate");
    if (k == 0) k = static_cast<int>(std::floor(std::sqrt(static_cast<double>(length))));
    if (k < 2 || k >= length) throw domain_error("run_benchmark: k outside [2, length)");

    struct NamedEstimator {
        std::string name;
        int k;  // recorded in the report; 0 when not applicable
        std::function<double(const std::vector<double>&)> run;
    };
    auto sorted_copy = [](const std::vector<double>& y) {
        std::vector<double> s(y);
        std::sort(s.begin(), s.end());
        return s;
    };
    const std::vector<NamedEstimator> estimators = {
        {"emr_wlse", 0,
         [](const std::vector<double>& y) { return wlse_on_log(y, EviMethod::kEmrWlse); }},
        {"mpmr_wlse", 0,
         [](const std::vector<double>& y) { return wlse_on_log(y, EviMethod::kMpmrWlse); }},
        {"hill", k,
         [&, k](const std::vector<double>& y) { return hill(sorted_copy(y), k).xi_hat; }},
        {"schultze_steinebach", k,
         [&, k](const std::vector<double>& y) {
             return schultze_steinebach(sorted_copy(y), k).xi_hat;
         }},
        {"meerschaert_scheffler", 0,
         [](const std::vector<double>& y) { return meerschaert_scheffler(y).xi_hat; }},
        {"smith", k,
         [&, k](const std::vector<double>& y) { return smith(sorted_copy(y), k).xi_hat; }},
    };

    BenchmarkTable table;
    for (double phi : phis) {
        for (double xi : xis) {
            SimulationConfig config{phi, xi, length, replicates, base_seed};
            // estimates keyed by (method, replicate); replicate order fixed
            std::vector<std::vector<double>> per_method(estimators.size());
            std::vector<int> failures(estimators.size(), 0);
            for (int r = 0; r < replicates; ++r) {
                std::vector<double> y = ar1_exp(config, static_cast<std::uint64_t>(r));
                for (std::size_t e = 0; e < estimators.size(); ++e) {
                    try {
                        per_method[e].push_back(estimators[e].run(y));
                    } catch (const error&) {
                        ++failures[e];
                    }
                }
            }
            for (std::size_t e = 0; e < estimators.size(); ++e) {
                BenchmarkRow row;
                row.phi = phi;
                row.xi = xi;
                row.method = estimators[e].name;
                row.failures = failures[e];
                row.replicates = replicates;
                row.k = estimators[e].k;
                row.mape = per_method[e].empty()
                               ? std::numeric_limits<double>::quiet_NaN()
                               : mape(per_method[e], xi);
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

}  // namespace ssbm
