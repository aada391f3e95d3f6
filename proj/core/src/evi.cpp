#include "ssbm/evi.hpp"

#include "ssbm/errors.hpp"
#include "ssbm/specfun.hpp"

#include <cmath>
#include <vector>

namespace ssbm {

const char* evi_method_name(EviMethod m) {
    switch (m) {
        case EviMethod::kMpmrWlse: return "mpmr_wlse";
        case EviMethod::kEmrWlse: return "emr_wlse";
    }
    return "unknown";
}

namespace {

struct RegressionData {
    std::vector<double> x, y, w;
};

EviFit weighted_fit(const RegressionData& d, EviMethod method, const PlateauRange& range) {
    const std::size_t k = d.x.size();
    if (k < 3)
        throw numerical_error("wlse: fewer than 3 grid points inside [n_min, n_max]");

    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sw += d.w[i];
        sx += d.w[i] * d.x[i];
        sy += d.w[i] * d.y[i];
    }
    const double xbar = sx / sw, ybar = sy / sw;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double dx = d.x[i] - xbar, dy = d.y[i] - ybar;
        sxx += d.w[i] * dx * dx;
        sxy += d.w[i] * dx * dy;
        syy += d.w[i] * dy * dy;
    }
    if (sxx <= 0.0) throw numerical_error("wlse: degenerate regressor (zero spread)");

    EviFit fit;
    fit.method = method;
    fit.xi_hat = sxy / sxx;
    fit.intercept = ybar - fit.xi_hat * xbar;
    fit.n_min = range.n_min;
    fit.n_max = range.n_max;
    fit.points_used = static_cast<int>(k);
    if (syy > 0.0) {
        double ss_res = syy - fit.xi_hat * sxy;
        fit.weighted_r2 = 1.0 - std::max(ss_res, 0.0) / syy;
    } else {
        fit.weighted_r2 = 1.0;  // constant ordinate reproduced exactly
    }
    return fit;
}

}  // namespace

EviFit wlse_mpmr(const BmCurve& curve, const PlateauRange& range) {
    RegressionData d;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        double n = curve.n[i];
        if (n < range.n_min || n > range.n_max) continue;
        d.x.push_back(std::log(n));
        d.y.push_back(curve.mpmr[i]);
        d.w.push_back(1.0 / n);
    }
    return weighted_fit(d, EviMethod::kMpmrWlse, range);
}

EviFit wlse_emr(const BmCurve& curve, const PlateauRange& range) {
    RegressionData d;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        double n = curve.n[i];
        if (n < range.n_min || n > range.n_max) continue;
        d.x.push_back(specfun::harmonic_real(n));
        d.y.push_back(curve.emr[i]);
        // pi^2/6 - sum_{i<=n} 1/i^2 == trigamma(n+1), exact and O(1)
        d.w.push_back(specfun::trigamma(n + 1.0));
    }
    return weighted_fit(d, EviMethod::kEmrWlse, range);
}

}  // namespace ssbm
