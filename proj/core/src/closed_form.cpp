#include "ssbm/closed_form.hpp"

#include "ssbm/errors.hpp"
#include "ssbm/numerics.hpp"
#include "ssbm/specfun.hpp"

#include <cmath>
#include <limits>

namespace ssbm {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

double log_cdf(const TailModel& model, double m) {
    double s = survival(model, m);
    if (s >= 1.0) return -std::numeric_limits<double>::infinity();
    if (s > 0.5) return std::log(cdf(model, m));
    return std::log1p(-s);
}

double underlying_mode(const TailModel& model) {
    switch (model.family) {
        case Family::kGaussian:
        case Family::kHalfNormal:
        case Family::kExponential: return 0.0;
        case Family::kParetoGpd: return 1.0 / model.param;
    }
    return 0.0;
}

}  // namespace

BmLaw make_bm_law(TailModel model, double n) {
    if (!(n > 0.0)) throw domain_error("BmLaw: block size must be positive");
    return BmLaw{model, n};
}

double bm_cdf(const BmLaw& law, double m) {
    double lf = log_cdf(law.model, m);
    if (std::isinf(lf)) return 0.0;
    return std::exp(law.n * lf);
}

double bm_pdf(const BmLaw& law, double m) {
    double lf = log_cdf(law.model, m);
    double lp = log_pdf(law.model, m);
    if (std::isinf(lp)) return 0.0;
    if (std::isinf(lf)) return law.n == 1.0 ? std::exp(lp) : 0.0;
    return std::exp(std::log(law.n) + lp + (law.n - 1.0) * lf);
}

double bm_quantile(const BmLaw& law, double u) {
    if (!(u > 0.0 && u < 1.0)) throw domain_error("bm_quantile: u must lie in (0, 1)");
    const double p = law.model.param;
    // 1 - u^(1/n), without cancellation for large n
    const double one_minus_t =
        std::fmin(-std::expm1(std::log(u) / law.n), 1.0 - 1e-16);
    switch (law.model.family) {
        case Family::kGaussian: return p * kSqrt2 * specfun::erfc_inv(2.0 * one_minus_t);
        case Family::kHalfNormal: return p * kSqrt2 * specfun::erfc_inv(one_minus_t);
        case Family::kParetoGpd: return std::pow(one_minus_t, -p) / p;
        case Family::kExponential: return -p * std::log(one_minus_t);
    }
    return 0.0;
}

double mpmr_exact(const BmLaw& law) {
    const double n = law.n;
    const double p = law.model.param;
    if (!(n >= 1.0)) throw domain_error("mpmr_exact: block size must be >= 1");
    if (n == 1.0) return underlying_mode(law.model);

    switch (law.model.family) {
        case Family::kExponential: return p * std::log(n);
        case Family::kParetoGpd: return std::pow((n + p) / (p + 1.0), p) / p;
        default: break;
    }

    // Gaussian / half-normal: root of -(m/sigma^2) F(m) + (n-1) f(m) = 0,
    // bracketed between the underlying mode and a high quantile.
    auto g = [&](double m) {
        return -(m / (p * p)) * cdf(law.model, m) + (n - 1.0) * pdf(law.model, m);
    };
    const double lo = underlying_mode(law.model);
    double tail = 1.0 / (10.0 * n);
    for (int attempt = 0; attempt < 3; ++attempt) {
        double hi = quantile(law.model, 1.0 - tail);
        if (g(lo) > 0.0 && g(hi) < 0.0) {
            return numerics::brent_root(g, lo, hi, 1e-13 * std::max(1.0, hi));
        }
        tail *= 0.01;
    }
    throw numerical_error("mpmr_exact: could not bracket a sign change within the support");
}

double mpmr_asymptotic(const BmLaw& law) {
    const double n = law.n;
    const double p = law.model.param;
    if (!(n >= 2.0)) throw domain_error("mpmr_asymptotic: block size must be >= 2");
    switch (law.model.family) {
        case Family::kGaussian:
            return p * std::sqrt(specfun::lambert_w0(n * n / (2.0 * specfun::kPi)));
        case Family::kHalfNormal:
            return p * std::sqrt(specfun::lambert_w0(2.0 * n * n / specfun::kPi));
        case Family::kParetoGpd: return std::pow(n / (p + 1.0), p) / p;
        case Family::kExponential: return p * std::log(n);
    }
    return 0.0;
}

namespace {

double bm_mean_quadrature(const BmLaw& law) {
    double lo = bm_quantile(law, 1e-12);
    double hi = bm_quantile(law, 1.0 - 1e-12);
    return numerics::integrate([&](double m) { return m * bm_pdf(law, m); }, lo, hi, 1e-10);
}

}  // namespace

double emr(const BmLaw& law) {
    const double n = law.n;
    const double p = law.model.param;
    switch (law.model.family) {
        case Family::kExponential: return p * specfun::harmonic_real(n);
        case Family::kParetoGpd:
            if (p >= 1.0)
                throw nonexistence_error("emr: Pareto EMR does not exist for xi >= 1");
            return (n / p) * std::exp(specfun::log_beta(n, 1.0 - p));
        case Family::kGaussian:
        case Family::kHalfNormal: return bm_mean_quadrature(law);
    }
    return 0.0;
}

double bm_variance(const BmLaw& law) {
    const double n = law.n;
    const double p = law.model.param;
    switch (law.model.family) {
        case Family::kExponential:
            return p * p / 6.0 *
                   (specfun::kPi * specfun::kPi - 6.0 * specfun::trigamma(n + 1.0));
        case Family::kParetoGpd: {
            if (p >= 0.5)
                throw nonexistence_error("bm_variance: Pareto BM variance requires xi < 1/2");
            double b1 = std::exp(specfun::log_beta(n, 1.0 - 2.0 * p));
            double b2 = std::exp(specfun::log_beta(n, 1.0 - p));
            return n * (b1 - n * b2 * b2) / (p * p);
        }
        case Family::kGaussian:
        case Family::kHalfNormal: {
            double mean = bm_mean_quadrature(law);
            double lo = bm_quantile(law, 1e-12);
            double hi = bm_quantile(law, 1.0 - 1e-12);
            return numerics::integrate(
                [&](double m) { return (m - mean) * (m - mean) * bm_pdf(law, m); }, lo, hi,
                1e-10);
        }
    }
    return 0.0;
}

double bm_moment_pareto(const BmLaw& law, int k) {
    if (law.model.family != Family::kParetoGpd)
        throw domain_error("bm_moment_pareto: model must be ParetoGpd");
    if (k < 1) throw domain_error("bm_moment_pareto: k must be a positive integer");
    const double p = law.model.param;
    if (k * p >= 1.0)
        throw nonexistence_error("bm_moment_pareto: moment requires k xi < 1");
    return law.n * std::pow(p, -k) * std::exp(specfun::log_beta(law.n, 1.0 - k * p));
}

double bm_cdf_offset(double xi, double n, int k) {
    if (!(xi > 0.0)) throw domain_error("bm_cdf_offset: xi must be positive");
    const double e = std::exp(-k * specfun::kPi / std::sqrt(6.0));
    if (std::isinf(n)) return std::exp(-e);
    if (!(n >= 1.0)) throw domain_error("bm_cdf_offset: n must be >= 1");
    if (e >= n) return 0.0;
    return std::exp(n * std::log1p(-e / n));
}

double kld(double n_eff, KldDirection direction) {
    if (!(n_eff > 0.0)) throw domain_error("kld: effective block size must be positive");
    switch (direction) {
        case KldDirection::kMToX: return 1.0 / n_eff + std::log(n_eff) - 1.0;
        case KldDirection::kXToM: return n_eff - std::log(n_eff) - 1.0;
    }
    return 0.0;
}

}  // namespace ssbm
