#include "ssbm/subsample.hpp"

#include "ssbm/errors.hpp"
#include "ssbm/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ssbm {

namespace {

double kahan_sum(const std::vector<double>& v) {
    double sum = 0.0, comp = 0.0;
    for (double x : v) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace

const char* transform_name(Transform t) {
    switch (t) {
        case Transform::kIdentity: return "identity";
        case Transform::kLog: return "log";
        case Transform::kLogLoss: return "logloss";
    }
    return "unknown";
}

Transform transform_from_name(const std::string& name) {
    if (name == "identity") return Transform::kIdentity;
    if (name == "log") return Transform::kLog;
    if (name == "logloss") return Transform::kLogLoss;
    throw domain_error("unknown transform: " + name);
}

SortedSample make_sorted_sample(std::vector<double> series, Transform transform) {
    if (series.size() < 2) throw domain_error("SortedSample: need at least 2 observations");
    std::sort(series.begin(), series.end());
    return SortedSample{std::move(series), transform};
}

SubsampleWeights weights(int n_raw, int n) {
    if (n_raw < 2) throw domain_error("weights: sample size must be >= 2");
    if (n < 1 || n > n_raw) throw domain_error("weights: block size outside [1, N]");

    // log C(i-1, n-1) relative to the top weight, accumulated backward by
    // the exact ratio recurrence: the high-mass region stays at small
    // magnitude, so rounding stays relative there and sum(p) holds to
    // ~1e-13 after log-sum-exp normalization.
    std::vector<double> lw(static_cast<std::size_t>(n_raw - n + 1));
    lw.back() = 0.0;
    for (int i = n_raw; i > n; --i) {
        lw[i - n - 1] = lw[i - n] - std::log(static_cast<double>(i - 1)) +
                        std::log(static_cast<double>(i - n));
    }
    std::vector<double> expv(lw.size());
    for (std::size_t j = 0; j < lw.size(); ++j) expv[j] = std::exp(lw[j]);
    const double lse = std::log(kahan_sum(expv));
    for (double& v : lw) v -= lse;

    return SubsampleWeights{n, n_raw, std::move(lw)};
}

namespace {

std::vector<double> probabilities(const SubsampleWeights& w) {
    std::vector<double> p(w.log_p.size());
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = std::exp(w.log_p[j]);
    return p;
}

// West's weighted incremental update; total weight is 1 by construction.
// Weights far below the peak underflow to zero and are skipped.
WeightedMoments weighted_moments(const std::vector<double>& p,
                                 const std::vector<double>& values, std::size_t offset) {
    double wsum = 0.0, mean = 0.0, s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] == 0.0) continue;
        double x = values[offset + j];
        wsum += p[j];
        double delta = x - mean;
        mean += (p[j] / wsum) * delta;
        s += p[j] * delta * (x - mean);
    }
    double variance = std::max(s / wsum, 0.0);
    return WeightedMoments{mean, variance, std::sqrt(variance)};
}

}  // namespace

double emr_hat(const SortedSample& sample, int n) {
    return moments_hat(sample, n).mean;
}

WeightedMoments moments_hat(const SortedSample& sample, int n) {
    const auto N = static_cast<int>(sample.values.size());
    SubsampleWeights w = weights(N, n);
    return weighted_moments(probabilities(w), sample.values,
                            static_cast<std::size_t>(n - 1));
}

namespace {

struct MeanShiftContext {
    const std::vector<double>& x;  // full sorted sample
    const std::vector<double>& p;  // weights for i = n..N
    std::size_t offset;            // index of x corresponding to p[0]
    double h;                      // kernel bandwidth
};

// One mean-shift update; only points within 8.5 h contribute
// (exp(-36) ~ 2e-16, below double resolution against the peak).
double shift_once(const MeanShiftContext& ctx, double m) {
    const double radius = 8.5 * ctx.h;
    auto first = std::lower_bound(ctx.x.begin() + ctx.offset, ctx.x.end(), m - radius);
    auto last = std::upper_bound(first, ctx.x.end(), m + radius);
    double num = 0.0, den = 0.0;
    const double inv_2h2 = 1.0 / (2.0 * ctx.h * ctx.h);
    for (auto it = first; it != last; ++it) {
        std::size_t idx = static_cast<std::size_t>(it - ctx.x.begin());
        double d = *it - m;
        double wk = ctx.p[idx - ctx.offset] * std::exp(-d * d * inv_2h2);
        num += wk * *it;
        den += wk;
    }
    if (den <= 0.0) return m;
    return num / den;
}

double kde_value(const MeanShiftContext& ctx, double m) {
    const double inv_2h2 = 1.0 / (2.0 * ctx.h * ctx.h);
    double den = 0.0;
    for (std::size_t j = 0; j < ctx.p.size(); ++j) {
        double d = ctx.x[ctx.offset + j] - m;
        den += ctx.p[j] * std::exp(-d * d * inv_2h2);
    }
    return den;
}

}  // namespace

double mpmr_hat(const SortedSample& sample, int n) {
    const auto N = static_cast<int>(sample.values.size());
    const double range = sample.values.back() - sample.values.front();
    if (range <= 0.0) throw numerical_error("mpmr_hat: constant sample is degenerate");

    SubsampleWeights w = weights(N, n);
    std::vector<double> p = probabilities(w);
    WeightedMoments mom = weighted_moments(p, sample.values, static_cast<std::size_t>(n - 1));
    if (mom.sd == 0.0) return mom.mean;  // all mass on one value (n = N)

    double sum_p2 = 0.0;
    for (double v : p) sum_p2 += v * v;
    const double n_eff = 1.0 / sum_p2;
    const double h = mom.sd * std::pow(n_eff, -0.2);

    MeanShiftContext ctx{sample.values, p, static_cast<std::size_t>(n - 1), h};
    const double tol = 1e-8 * range;

    // Mean-shift converges linearly; when the ratio of successive steps
    // stabilizes, an Aitken jump to the projected fixed point skips the
    // crawl. The exit test is still the plain step criterion.
    auto run = [&](double start) -> std::pair<bool, double> {
        double m = start;
        double prev_step = 0.0;
        for (int it = 0; it < 500; ++it) {
            double next = shift_once(ctx, m);
            double step = next - m;
            m = next;
            if (std::fabs(step) <= tol) return {true, m};
            if (it % 4 == 3 && prev_step != 0.0) {
                double rate = step / prev_step;
                if (rate > 0.0 && rate < 0.999) {
                    double jump = m + step * rate / (1.0 - rate);
                    if (jump >= sample.values.front() && jump <= sample.values.back()) m = jump;
                }
            }
            prev_step = step;
        }
        return {false, m};
    };

    auto [ok, mode] = run(mom.mean);
    if (ok) return mode;

    // Fallback: restart from the three most heavily weighted points.
    double best = 0.0, best_kde = -1.0;
    bool any = false;
    for (int back = 0; back < 3 && back < N; ++back) {
        auto [ok2, m2] = run(sample.values[static_cast<std::size_t>(N - 1 - back)]);
        if (ok2) {
            double k = kde_value(ctx, m2);
            if (k > best_kde) {
                best_kde = k;
                best = m2;
            }
            any = true;
        }
    }
    if (!any) throw numerical_error("mpmr_hat: mean-shift did not converge in 500 iterations");
    return best;
}

std::vector<int> geometric_grid(int lo, int hi, int points) {
    if (lo < 1 || hi < lo) throw domain_error("geometric_grid: invalid range");
    if (points < 1) throw domain_error("geometric_grid: need at least one point");
    std::vector<int> grid;
    if (points == 1 || lo == hi) {
        grid.push_back(lo);
        if (hi != lo) grid.push_back(hi);
        return grid;
    }
    const double ratio = std::log(static_cast<double>(hi) / lo) / (points - 1);
    int prev = 0;
    for (int k = 0; k < points; ++k) {
        int v = static_cast<int>(std::llround(lo * std::exp(ratio * k)));
        v = std::clamp(v, lo, hi);
        if (v > prev) {
            grid.push_back(v);
            prev = v;
        }
    }
    return grid;
}

BmCurve bm_curve(const SortedSample& sample, int grid_points) {
    const auto N = static_cast<int>(sample.values.size());
    return bm_curve(sample, geometric_grid(2, N, grid_points));
}

BmCurve bm_curve(const SortedSample& sample, const std::vector<int>& grid) {
    const auto N = static_cast<int>(sample.values.size());
    if (grid.empty()) throw domain_error("bm_curve: empty grid");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[k] < 1 || grid[k] > N || (k > 0 && grid[k] <= grid[k - 1]))
            throw domain_error("bm_curve: grid must be strictly increasing within [1, N]");
    }
    BmCurve curve;
    curve.n.reserve(grid.size());
    for (int n : grid) {
        try {
            WeightedMoments mom = moments_hat(sample, n);
            double mode = mpmr_hat(sample, n);
            curve.n.push_back(static_cast<double>(n));
            curve.emr.push_back(mom.mean);
            curve.mpmr.push_back(mode);
            curve.sd.push_back(mom.sd);
        } catch (const error& e) {
            throw numerical_error("bm_curve: at block size n=" + std::to_string(n) + ": " +
                                  e.what());
        }
    }
    return curve;
}

}  // namespace ssbm
