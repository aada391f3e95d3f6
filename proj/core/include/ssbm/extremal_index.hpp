#pragma once

#include "ssbm/distributions.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace ssbm {

enum class ZVariant { kBb, kNorthrop };

const char* z_variant_name(ZVariant v);
ZVariant z_variant_from_name(const std::string& name);

// Marginal distribution evaluator used inside the Z statistics: either the
// empirical CDF or a fitted parametric tail model.
using Marginal = std::variant<EmpiricalCdf, TailModel>;

double marginal_cdf(const Marginal& marginal, double x);

// Maxima of rolling windows [t, t+n) advanced by `step`
// (default round(sqrt(n)), minimum 1). Order preserved.
std::vector<double> rolling_bm(const std::vector<double>& series, int n, int step = 0);

// Z_BB = n (1 - F(M_n)) or Z_Northrop = -n log F(M_n); both asymptotically
// Exp(theta). Throws if the marginal returns 0 or 1 at a maximum.
std::vector<double> z_stats(const std::vector<double>& maxima, const Marginal& marginal,
                            int n, ZVariant variant);

struct EiCurve {
    std::vector<double> n;
    std::vector<double> theta_hat;  // 1 / mean(Z), clamped to (0, 1]
    std::vector<double> z_sd;       // sample sd of the Z values at each n
    double selected_n = 0.0;
    double selected_theta = 0.0;
    double selected_theta_raw = 0.0;  // reciprocal before clamping at 1
    bool clamped = false;
    ZVariant variant = ZVariant::kBb;
};

// theta per block size with selection at the grid point of maximum Z
// dispersion (ties to the smallest n). Grid defaults to 32 geometric points
// spanning [4, length/4].
EiCurve theta_curve(const std::vector<double>& series, const Marginal& marginal,
                    const std::vector<int>& grid, ZVariant variant);
EiCurve theta_curve(const std::vector<double>& series, const Marginal& marginal,
                    ZVariant variant = ZVariant::kBb);

// Mean extreme-cluster duration 1/theta.
double sojourn_time(double theta);

}  // namespace ssbm
