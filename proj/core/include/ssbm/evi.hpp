#pragma once

#include "ssbm/plateau.hpp"
#include "ssbm/subsample.hpp"

#include <string>

namespace ssbm {

enum class EviMethod { kMpmrWlse, kEmrWlse };

const char* evi_method_name(EviMethod m);

struct EviFit {
    EviMethod method = EviMethod::kEmrWlse;
    double xi_hat = 0.0;
    double intercept = 0.0;
    double n_min = 0.0;
    double n_max = 0.0;
    int points_used = 0;
    double weighted_r2 = 0.0;
};

// Weighted least-squares slope of MPMR against log n with weights 1/n,
// restricted to grid points inside [n_min, n_max].
EviFit wlse_mpmr(const BmCurve& curve, const PlateauRange& range);

// Weighted least-squares slope of EMR against the harmonic number H_n with
// weights trigamma(n+1) (= pi^2/6 - sum 1/i^2).
EviFit wlse_emr(const BmCurve& curve, const PlateauRange& range);

}  // namespace ssbm
