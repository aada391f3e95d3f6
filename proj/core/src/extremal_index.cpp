#include "ssbm/extremal_index.hpp"

#include "ssbm/errors.hpp"
#include "ssbm/subsample.hpp"

#include <algorithm>
#include <cmath>

namespace ssbm {

const char* z_variant_name(ZVariant v) {
    switch (v) {
        case ZVariant::kBb: return "bb";
        case ZVariant::kNorthrop: return "northrop";
    }
    return "unknown";
}

ZVariant z_variant_from_name(const std::string& name) {
    if (name == "bb") return ZVariant::kBb;
    if (name == "northrop") return ZVariant::kNorthrop;
    throw domain_error("unknown Z variant: " + name);
}

double marginal_cdf(const Marginal& marginal, double x) {
    if (std::holds_alternative<EmpiricalCdf>(marginal))
        return std::get<EmpiricalCdf>(marginal)(x);
    return cdf(std::get<TailModel>(marginal), x);
}

std::vector<double> rolling_bm(const std::vector<double>& series, int n, int step) {
    const auto len = static_cast<int>(series.size());
    if (n < 1) throw domain_error("rolling_bm: block size must be >= 1");
    if (len < n) throw domain_error("rolling_bm: series shorter than the block size");
    if (step <= 0) step = std::max(1, static_cast<int>(std::llround(std::sqrt(n))));

    std::vector<double> maxima;
    maxima.reserve(static_cast<std::size_t>((len - n) / step + 1));
    for (int t = 0; t + n <= len; t += step) {
        double m = series[t];
        for (int i = 1; i < n; ++i) m = std::max(m, series[t + i]);
        maxima.push_back(m);
    }
    return maxima;
}

std::vector<double> z_stats(const std::vector<double>& maxima, const Marginal& marginal,
                            int n, ZVariant variant) {
    std::vector<double> z;
    z.reserve(maxima.size());
    for (double m : maxima) {
        double f = marginal_cdf(marginal, m);
        if (!(f > 0.0 && f < 1.0))
            throw numerical_error(
                "z_stats: marginal CDF hit 0 or 1 at a block maximum; "
                "the marginal model is inconsistent with EI estimation");
        z.push_back(variant == ZVariant::kBb ? n * (1.0 - f) : -n * std::log(f));
    }
    return z;
}

namespace {

struct MeanSd {
    double mean;
    double sd;
};

MeanSd mean_sd(const std::vector<double>& v) {
    const auto k = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= k;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    double sd = k > 1.0 ? std::sqrt(ss / (k - 1.0)) : 0.0;
    return {mean, sd};
}

}  // namespace

EiCurve theta_curve(const std::vector<double>& series, const Marginal& marginal,
                    const std::vector<int>& grid, ZVariant variant) {
    const auto len = static_cast<int>(series.size());
    if (grid.empty()) throw domain_error("theta_curve: empty grid");
    for (int n : grid) {
        if (n < 1 || n > len / 4)
            throw domain_error("theta_curve: grid block sizes must lie in [1, length/4]");
    }

    EiCurve curve;
    curve.variant = variant;
    std::vector<double> raw;  // reciprocal of mean(Z) before clamping
    for (int n : grid) {
        try {
            std::vector<double> maxima = rolling_bm(series, n);
            std::vector<double> z = z_stats(maxima, marginal, n, variant);
            MeanSd ms = mean_sd(z);
            curve.n.push_back(static_cast<double>(n));
            raw.push_back(1.0 / ms.mean);
            curve.theta_hat.push_back(std::min(raw.back(), 1.0));
            curve.z_sd.push_back(ms.sd);
        } catch (const error& e) {
            throw numerical_error("theta_curve: at block size n=" + std::to_string(n) + ": " +
                                  e.what());
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.z_sd.size(); ++i) {
        if (curve.z_sd[i] > curve.z_sd[best]) best = i;  // ties keep the smaller n
    }
    if (curve.z_sd[best] <= 0.0)
        throw numerical_error(
            "theta_curve: Z dispersion is zero at every block size (degenerate series), "
            "no selection possible");

    curve.selected_n = curve.n[best];
    curve.selected_theta_raw = raw[best];
    curve.clamped = raw[best] > 1.0;
    curve.selected_theta = std::min(raw[best], 1.0);
    return curve;
}

EiCurve theta_curve(const std::vector<double>& series, const Marginal& marginal,
                    ZVariant variant) {
    const auto len = static_cast<int>(series.size());
    if (len < 16) throw domain_error("theta_curve: series too short for the default grid");
    return theta_curve(series, marginal, geometric_grid(4, len / 4, 32), variant);
}

double sojourn_time(double theta) {
    if (!(theta > 0.0) || theta > 1.0)
        throw domain_error("sojourn_time: theta must lie in (0, 1]");
    return 1.0 / theta;
}

}  // namespace ssbm
