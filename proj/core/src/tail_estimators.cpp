#include "ssbm/tail_estimators.hpp"

#include "ssbm/errors.hpp"
#include "ssbm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ssbm {

const char* tail_method_name(TailMethod m) {
    switch (m) {
        case TailMethod::kHill: return "hill";
        case TailMethod::kSchultzeSteinebach: return "schultze_steinebach";
        case TailMethod::kMeerschaertScheffler: return "meerschaert_scheffler";
        case TailMethod::kSmith: return "smith";
    }
    return "unknown";
}

namespace {

void check_positive_sorted(const std::vector<double>& x) {
    if (x.empty() || x.front() <= 0.0)
        throw domain_error("tail estimator: all values must be positive");
    if (!std::is_sorted(x.begin(), x.end()))
        throw domain_error("tail estimator: values must be ascending");
}

}  // namespace

TailEstimate hill(const std::vector<double>& x, int k) {
    check_positive_sorted(x);
    const auto n = static_cast<int>(x.size());
    if (k < 2 || k > n - 1) throw domain_error("hill: k must lie in [2, N-1]");
    const double log_ref = std::log(x[n - k - 1]);
    double sum = 0.0;
    for (int i = 1; i <= k; ++i) sum += std::log(x[n - i]) - log_ref;
    return TailEstimate{TailMethod::kHill, sum / k, k};
}

TailEstimate schultze_steinebach(const std::vector<double>& x, int k) {
    check_positive_sorted(x);
    const auto n = static_cast<int>(x.size());
    if (k < 2 || k > n - 1)
        throw domain_error("schultze_steinebach: k must lie in [2, N-1]");
    double sx = 0.0, sy = 0.0;
    std::vector<double> rx(k), ry(k);
    for (int i = 1; i <= k; ++i) {
        rx[i - 1] = std::log((n + 1.0) / i);
        ry[i - 1] = std::log(x[n - i]);
        sx += rx[i - 1];
        sy += ry[i - 1];
    }
    const double xbar = sx / k, ybar = sy / k;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < k; ++i) {
        sxx += (rx[i] - xbar) * (rx[i] - xbar);
        sxy += (rx[i] - xbar) * (ry[i] - ybar);
    }
    return TailEstimate{TailMethod::kSchultzeSteinebach, sxy / sxx, k};
}

TailEstimate meerschaert_scheffler(const std::vector<double>& x) {
    const auto n = static_cast<int>(x.size());
    if (n < 2) throw domain_error("meerschaert_scheffler: need at least 2 observations");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    if (ss == 0.0)
        throw numerical_error("meerschaert_scheffler: constant sample is degenerate");
    double xi = std::max(0.0, std::log(ss)) / (2.0 * std::log(static_cast<double>(n)));
    return TailEstimate{TailMethod::kMeerschaertScheffler, xi, n};
}

TailEstimate smith(const std::vector<double>& x, int k) {
    check_positive_sorted(x);
    const auto n = static_cast<int>(x.size());
    if (k < 10) throw domain_error("smith: need at least 10 exceedances");
    if (k > n - 1) throw domain_error("smith: k must lie in [10, N-1]");

    const double u = x[n - k - 1];
    std::vector<double> y(k);
    double y_max = 0.0, y_mean = 0.0;
    for (int i = 1; i <= k; ++i) {
        y[i - 1] = x[n - i] - u;
        y_max = std::max(y_max, y[i - 1]);
        y_mean += y[i - 1];
    }
    y_mean /= k;
    if (y_max <= 0.0) throw numerical_error("smith: all exceedances tie with the threshold");

    // Profile likelihood over eta = xi / sigma: for fixed eta the shape MLE
    // is xi(eta) = mean log(1 + eta y), giving
    //   l(eta) = -k [log(xi(eta)/eta) + xi(eta) + 1],  l(0) = -k (log mean(y) + 1).
    auto profile = [&](double eta) {
        if (eta == 0.0) return -static_cast<double>(k) * (std::log(y_mean) + 1.0);
        double xi = 0.0;
        for (double v : y) xi += std::log1p(eta * v);
        xi /= k;
        if (xi == 0.0) return -static_cast<double>(k) * (std::log(y_mean) + 1.0);
        double sigma = xi / eta;
        if (sigma <= 0.0) return -std::numeric_limits<double>::infinity();
        return -static_cast<double>(k) * (std::log(sigma) + xi + 1.0);
    };

    // Coarse scan over both signs of eta, then golden refinement. The
    // negative side gets both a log-spaced mirror near zero and points
    // approaching the support bound -1/y_max.
    std::vector<double> etas;
    etas.push_back(0.0);
    for (int j = -60; j <= 60; ++j) {
        double m = std::pow(10.0, j / 6.0) / y_max;
        etas.push_back(m);
        if (m < 0.99 / y_max) etas.push_back(-m);
    }
    for (int j = 1; j <= 40; ++j)
        etas.push_back(-(1.0 - std::pow(10.0, -j / 8.0)) / y_max);
    std::sort(etas.begin(), etas.end());

    std::size_t best = 0;
    double best_l = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < etas.size(); ++i) {
        double l = profile(etas[i]);
        if (l > best_l) {
            best_l = l;
            best = i;
        }
    }
    if (!std::isfinite(best_l)) throw numerical_error("smith: likelihood did not converge");

    double lo = etas[best >= 2 ? best - 2 : 0];
    double hi = etas[std::min(best + 2, etas.size() - 1)];
    double eta_hat = lo < hi ? numerics::golden_max(profile, lo, hi, 1e-12) : etas[best];
    if (profile(eta_hat) < best_l) eta_hat = etas[best];

    double xi_hat = 0.0;
    if (eta_hat != 0.0) {
        for (double v : y) xi_hat += std::log1p(eta_hat * v);
        xi_hat /= k;
    }
    return TailEstimate{TailMethod::kSmith, xi_hat, k};
}

double mape(const std::vector<double>& estimates, double truth) {
    if (truth == 0.0) throw domain_error("mape: truth must be nonzero");
    if (estimates.empty()) throw domain_error("mape: no estimates");
    double acc = 0.0;
    for (double e : estimates) acc += std::fabs(e - truth) / std::fabs(truth);
    return 100.0 * acc / static_cast<double>(estimates.size());
}

}  // namespace ssbm
