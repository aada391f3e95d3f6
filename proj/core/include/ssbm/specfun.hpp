#pragma once

// Self-contained special-function kernel. Everything here is implemented
// from scratch (no dependency on platform libm beyond exp/log/sqrt) so that
// results are stable across platforms.

namespace ssbm::specfun {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Principal branch W0 of the Lambert W function: returns w >= -1 with
// w * exp(w) = x. Requires x >= -1/e.
double lambert_w0(double x);

// Error function and complement, accurate to ~1e-15 relative over the
// full double range.
double erf(double x);
double erfc(double x);

// Scaled complement exp(x^2) * erfc(x), finite for large x.
double erfcx(double x);

// Inverse of erfc on (0, 2).
double erfc_inv(double y);

// log Gamma(x) for x > 0, Lanczos approximation.
double log_gamma(double x);

// log B(a, b) for a, b > 0. Uses a Stirling-difference form for large
// arguments to avoid the cancellation in lgamma(a) + lgamma(b) - lgamma(a+b).
double log_beta(double a, double b);

// Trigamma psi^(1)(x) for x > 0.
double trigamma(double x);

// Harmonic number H_n. Exact summation for n <= 1e6, asymptotic
// gamma + log n + 1/(2n) - 1/(12n^2) beyond.
double harmonic(long long n);

// Harmonic "number" at real argument: exact sum at integral n <= 1e6,
// asymptotic otherwise. Used by closed forms evaluated at effective block
// sizes n*theta.
double harmonic_real(double n);

}  // namespace ssbm::specfun
