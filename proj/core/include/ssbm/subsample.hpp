#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ssbm {

enum class Transform { kIdentity, kLog, kLogLoss };

const char* transform_name(Transform t);
Transform transform_from_name(const std::string& name);

// Ascending raw observations plus the provenance of any transform applied
// before sorting. The substrate of all sub-sampling estimators.
struct SortedSample {
    std::vector<double> values;  // nondecreasing, size >= 2
    Transform transform = Transform::kIdentity;
};

// Sorts a copy of the series; validates size.
SortedSample make_sorted_sample(std::vector<double> series,
                                Transform transform = Transform::kIdentity);

// Probabilities p_{n,i} = C(i-1, n-1) / C(N, n) that the i-th order
// statistic is the maximum of a uniformly random size-n subsample,
// stored as log p for i = n..N.
struct SubsampleWeights {
    int n = 0;
    int n_raw = 0;
    std::vector<double> log_p;  // index j corresponds to i = n + j

    int first_index() const { return n; }  // 1-based order-statistic index
};

SubsampleWeights weights(int n_raw, int n);

struct WeightedMoments {
    double mean = 0.0;
    double variance = 0.0;
    double sd = 0.0;
};

// Weighted mean of the order statistics under p_{n,i}: the sub-sampling
// estimate of the expected maximum risk.
double emr_hat(const SortedSample& sample, int n);

// Weighted mean/variance/sd in one numerically stable streaming pass.
WeightedMoments moments_hat(const SortedSample& sample, int n);

// Mode of the weighted Gaussian KDE over the order statistics, located by
// mean-shift iteration (Scott bandwidth on the effective sample size).
double mpmr_hat(const SortedSample& sample, int n);

// Per-block-size records of the sub-sampling estimates.
struct BmCurve {
    std::vector<double> n;  // strictly increasing block sizes
    std::vector<double> emr;
    std::vector<double> mpmr;
    std::vector<double> sd;

    std::size_t size() const { return n.size(); }
};

// Geometric grid of integer block sizes covering [lo, hi], deduplicated.
std::vector<int> geometric_grid(int lo, int hi, int points);

// Evaluates emr_hat, mpmr_hat and the BM standard deviation on a geometric
// grid of block sizes (default 64 points spanning [2, N]). Deterministic.
BmCurve bm_curve(const SortedSample& sample, int grid_points = 64);
BmCurve bm_curve(const SortedSample& sample, const std::vector<int>& grid);

}  // namespace ssbm
