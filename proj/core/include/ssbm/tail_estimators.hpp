#pragma once

#include <string>
#include <vector>

namespace ssbm {

enum class TailMethod { kHill, kSchultzeSteinebach, kMeerschaertScheffler, kSmith };

const char* tail_method_name(TailMethod m);

struct TailEstimate {
    TailMethod method;
    double xi_hat = 0.0;
    int k_used = 0;  // number of upper order statistics / exceedances
};

// Hill: mean log-ratio of the top k order statistics to x_[N-k].
// sorted_values ascending, all > 0, 2 <= k <= N-1.
TailEstimate hill(const std::vector<double>& sorted_values, int k);

// Schultze-Steinebach: OLS slope of log x_[N-i+1] on log((N+1)/i), i = 1..k.
TailEstimate schultze_steinebach(const std::vector<double>& sorted_values, int k);

// Meerschaert-Scheffler: log+(sum (x - mean)^2) / (2 log N).
TailEstimate meerschaert_scheffler(const std::vector<double>& values);

// Smith: GPD maximum likelihood on the k exceedances over x_[N-k], profile
// likelihood in one dimension.
TailEstimate smith(const std::vector<double>& sorted_values, int k);

// Mean absolute percentage error against a nonzero truth.
double mape(const std::vector<double>& estimates, double truth);

}  // namespace ssbm
