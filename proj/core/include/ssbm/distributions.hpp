#pragma once

#include <string>
#include <vector>

namespace ssbm {

// Parametric marginal families. The single parameter is sigma for
// Gaussian/HalfNormal and xi for ParetoGpd (shape, scale fixed at 1/xi)
// and Exponential (mean).
enum class Family { kGaussian, kHalfNormal, kParetoGpd, kExponential };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct TailModel {
    Family family;
    double param;  // sigma or xi, strictly positive
};

TailModel make_model(Family family, double param);

// Support lower edge (-inf for Gaussian, 0 for HalfNormal/Exponential,
// 1/xi for ParetoGpd).
double support_lower(const TailModel& model);

double pdf(const TailModel& model, double x);
double log_pdf(const TailModel& model, double x);
// Exact analytic CDF; clamped to 0 below the support.
double cdf(const TailModel& model, double x);
// Survival 1 - F computed without cancellation.
double survival(const TailModel& model, double x);
double quantile(const TailModel& model, double u);

// Empirical CDF with Weibull plotting positions F(x_[i]) = i / (N+1);
// strictly inside (0,1) everywhere, ties evaluated at the highest rank.
class EmpiricalCdf {
  public:
    explicit EmpiricalCdf(std::vector<double> sorted_values);

    double operator()(double x) const;
    std::size_t size() const { return values_.size(); }

  private:
    std::vector<double> values_;
};

struct FamilyFit {
    Family family;
    double param = 0.0;
    double log_lik = 0.0;
    double aic = 0.0;
    bool supported = false;  // sample inside family support
};

struct MarginalFit {
    TailModel selected;
    std::vector<FamilyFit> table;  // one row per candidate family
};

// Maximum-likelihood fit per candidate family plus AIC selection.
// Closed-form MLEs except ParetoGpd (1-D likelihood maximization).
// Sample must be ascending, size >= 30, non-constant.
MarginalFit fit_marginal(const std::vector<double>& sorted_values,
                         const std::vector<Family>& candidates);

}  // namespace ssbm
