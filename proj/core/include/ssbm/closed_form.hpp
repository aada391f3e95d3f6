#pragma once

#include "ssbm/distributions.hpp"

namespace ssbm {

// Law of the maximum of an effective block of size n. n is real-valued so
// that temporal clustering can be folded in as n * theta.
struct BmLaw {
    TailModel model;
    double n;  // effective block size, > 0
};

BmLaw make_bm_law(TailModel model, double n);

double bm_pdf(const BmLaw& law, double m);
double bm_cdf(const BmLaw& law, double m);
double bm_quantile(const BmLaw& law, double u);

// Mode of the block maximum: root of dfX/dm F(m) + (n-1) fX^2(m) = 0.
// Closed form for Exponential and ParetoGpd, bracketed root otherwise.
double mpmr_exact(const BmLaw& law);

// Family-specific large-n approximations (Lambert W forms for the
// Gaussian/half-normal, power law for Pareto, xi log n for Exponential).
double mpmr_asymptotic(const BmLaw& law);

// Mean of the block maximum. Throws nonexistence_error for Pareto xi >= 1.
double emr(const BmLaw& law);

// Variance of the block maximum. Throws nonexistence_error for Pareto
// xi >= 1/2.
double bm_variance(const BmLaw& law);

// k-th raw moment of the Pareto block maximum, n xi^-k B(n, 1 - k xi).
double bm_moment_pareto(const BmLaw& law, int k);

// F_M(m* + k xi pi / sqrt(6)) for the exponential underlying:
// (1 - exp(-k pi / sqrt 6) / n)^n, with the n -> infinity limit
// exp(-exp(-k pi / sqrt 6)) when n is infinite.
double bm_cdf_offset(double xi, double n, int k);

enum class KldDirection { kMToX, kXToM };

// Kullback-Leibler divergence between the block maximum at effective size
// n_eff and the underlying: 1/n + log n - 1 (M->X) or n - log n - 1 (X->M).
double kld(double n_eff, KldDirection direction);

}  // namespace ssbm
