#pragma once

#include <functional>

namespace ssbm::numerics {

// Brent root finder on [lo, hi]; f(lo) and f(hi) must have opposite signs.
double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double tol = 1e-14, int max_iter = 200);

// Golden-section maximization of f on [lo, hi]; returns the abscissa.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol = 1e-10, int max_iter = 300);

// Adaptive Gauss-Kronrod (G7, K15) quadrature of f over [a, b] to the given
// relative tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, int max_depth = 30);

}  // namespace ssbm::numerics
