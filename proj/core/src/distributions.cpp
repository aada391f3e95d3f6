#include "ssbm/distributions.hpp"

#include "ssbm/errors.hpp"
#include "ssbm/numerics.hpp"
#include "ssbm/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ssbm {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

void check_param(double param) {
    if (!(param > 0.0) || !std::isfinite(param))
        throw domain_error("TailModel: parameter must be strictly positive");
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::kGaussian: return "gaussian";
        case Family::kHalfNormal: return "halfnormal";
        case Family::kParetoGpd: return "pareto";
        case Family::kExponential: return "exponential";
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    if (name == "gaussian") return Family::kGaussian;
    if (name == "halfnormal") return Family::kHalfNormal;
    if (name == "pareto" || name == "gpd") return Family::kParetoGpd;
    if (name == "exponential") return Family::kExponential;
    throw domain_error("unknown family name: " + name);
}

TailModel make_model(Family family, double param) {
    check_param(param);
    return TailModel{family, param};
}

double support_lower(const TailModel& model) {
    switch (model.family) {
        case Family::kGaussian: return -std::numeric_limits<double>::infinity();
        case Family::kHalfNormal:
        case Family::kExponential: return 0.0;
        case Family::kParetoGpd: return 1.0 / model.param;
    }
    return 0.0;
}

double pdf(const TailModel& model, double x) {
    const double p = model.param;
    switch (model.family) {
        case Family::kGaussian: {
            double z = x / p;
            return std::exp(-0.5 * z * z) / (p * std::exp(kLogSqrt2Pi));
        }
        case Family::kHalfNormal: {
            if (x < 0.0) return 0.0;
            double z = x / p;
            return std::sqrt(2.0 / specfun::kPi) / p * std::exp(-0.5 * z * z);
        }
        case Family::kParetoGpd: {
            if (x <= 1.0 / p) return 0.0;
            return std::pow(p * x, -(p + 1.0) / p);
        }
        case Family::kExponential: {
            if (x < 0.0) return 0.0;
            return std::exp(-x / p) / p;
        }
    }
    return 0.0;
}

double log_pdf(const TailModel& model, double x) {
    const double p = model.param;
    switch (model.family) {
        case Family::kGaussian: {
            double z = x / p;
            return -0.5 * z * z - std::log(p) - kLogSqrt2Pi;
        }
        case Family::kHalfNormal: {
            if (x < 0.0) return -std::numeric_limits<double>::infinity();
            double z = x / p;
            return 0.5 * std::log(2.0 / specfun::kPi) - std::log(p) - 0.5 * z * z;
        }
        case Family::kParetoGpd: {
            if (x <= 1.0 / p) return -std::numeric_limits<double>::infinity();
            return -(p + 1.0) / p * std::log(p * x);
        }
        case Family::kExponential: {
            if (x < 0.0) return -std::numeric_limits<double>::infinity();
            return -x / p - std::log(p);
        }
    }
    return -std::numeric_limits<double>::infinity();
}

double cdf(const TailModel& model, double x) {
    const double p = model.param;
    switch (model.family) {
        case Family::kGaussian: return 0.5 * specfun::erfc(-x / (p * kSqrt2));
        case Family::kHalfNormal:
            if (x <= 0.0) return 0.0;
            return specfun::erf(x / (p * kSqrt2));
        case Family::kParetoGpd:
            if (x <= 1.0 / p) return 0.0;
            return 1.0 - std::pow(p * x, -1.0 / p);
        case Family::kExponential:
            if (x <= 0.0) return 0.0;
            return -std::expm1(-x / p);
    }
    return 0.0;
}

double survival(const TailModel& model, double x) {
    const double p = model.param;
    switch (model.family) {
        case Family::kGaussian: return 0.5 * specfun::erfc(x / (p * kSqrt2));
        case Family::kHalfNormal:
            if (x <= 0.0) return 1.0;
            return specfun::erfc(x / (p * kSqrt2));
        case Family::kParetoGpd:
            if (x <= 1.0 / p) return 1.0;
            return std::pow(p * x, -1.0 / p);
        case Family::kExponential:
            if (x <= 0.0) return 1.0;
            return std::exp(-x / p);
    }
    return 1.0;
}

double quantile(const TailModel& model, double u) {
    if (!(u > 0.0 && u < 1.0)) throw domain_error("quantile: u must lie in (0, 1)");
    const double p = model.param;
    switch (model.family) {
        case Family::kGaussian: return -p * kSqrt2 * specfun::erfc_inv(2.0 * u);
        case Family::kHalfNormal: return p * kSqrt2 * specfun::erfc_inv(1.0 - u);
        case Family::kParetoGpd: return std::pow(1.0 - u, -p) / p;
        case Family::kExponential: return -p * std::log1p(-u);
    }
    return 0.0;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> sorted_values) : values_(std::move(sorted_values)) {
    if (values_.empty()) throw domain_error("EmpiricalCdf: empty sample");
    if (!std::is_sorted(values_.begin(), values_.end()))
        throw domain_error("EmpiricalCdf: values must be ascending");
}

double EmpiricalCdf::operator()(double x) const {
    const auto n = static_cast<double>(values_.size());
    auto it = std::upper_bound(values_.begin(), values_.end(), x);
    auto count = static_cast<double>(it - values_.begin());
    if (count < 1.0) count = 1.0;  // below the minimum, stay inside (0,1)
    return count / (n + 1.0);
}

namespace {

FamilyFit fit_one(Family family, const std::vector<double>& x) {
    const auto n = static_cast<double>(x.size());
    FamilyFit fit;
    fit.family = family;
    const double x_min = x.front();

    auto finish = [&](double param, double log_lik) {
        fit.param = param;
        fit.log_lik = log_lik;
        fit.aic = 2.0 - 2.0 * log_lik;
        fit.supported = true;
    };

    switch (family) {
        case Family::kGaussian: {
            double ss = 0.0;
            for (double v : x) ss += v * v;
            double sigma2 = ss / n;
            double sigma = std::sqrt(sigma2);
            finish(sigma, -n * (kLogSqrt2Pi + std::log(sigma)) - 0.5 * n);
            break;
        }
        case Family::kHalfNormal: {
            if (x_min <= 0.0) return fit;
            double ss = 0.0;
            for (double v : x) ss += v * v;
            double sigma = std::sqrt(ss / n);
            double ll = n * (0.5 * std::log(2.0 / specfun::kPi) - std::log(sigma)) - 0.5 * n;
            finish(sigma, ll);
            break;
        }
        case Family::kExponential: {
            if (x_min <= 0.0) return fit;
            double mean = 0.0;
            for (double v : x) mean += v;
            mean /= n;
            finish(mean, -n * std::log(mean) - n);
            break;
        }
        case Family::kParetoGpd: {
            if (x_min <= 0.0) return fit;
            double sum_log = 0.0;
            for (double v : x) sum_log += std::log(v);
            // Support requires xi > 1/min(x); maximize over log xi.
            double lo = std::log(1.0 / x_min) + 1e-9;
            double hi = lo + 40.0;
            auto ll = [&](double t) {
                double xi = std::exp(t);
                return -(1.0 + 1.0 / xi) * (n * std::log(xi) + sum_log);
            };
            double t_hat = numerics::golden_max(ll, lo, hi, 1e-12);
            finish(std::exp(t_hat), ll(t_hat));
            break;
        }
    }
    return fit;
}

}  // namespace

MarginalFit fit_marginal(const std::vector<double>& sorted_values,
                         const std::vector<Family>& candidates) {
    if (sorted_values.size() < 30)
        throw domain_error("fit_marginal: need at least 30 observations");
    if (candidates.empty()) throw domain_error("fit_marginal: no candidate families");
    if (sorted_values.front() == sorted_values.back())
        throw numerical_error("fit_marginal: constant sample, degenerate likelihood");

    MarginalFit result;
    std::size_t best = candidates.size();
    for (Family f : candidates) {
        result.table.push_back(fit_one(f, sorted_values));
        const FamilyFit& fit = result.table.back();
        if (fit.supported && (best == candidates.size() || fit.aic < result.table[best].aic))
            best = result.table.size() - 1;
    }
    if (best == candidates.size())
        throw domain_error("fit_marginal: sample lies outside every candidate family's support");
    result.selected = TailModel{result.table[best].family, result.table[best].param};
    return result;
}

}  // namespace ssbm
