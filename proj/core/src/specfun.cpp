#include "ssbm/specfun.hpp"

#include "ssbm/errors.hpp"

#include <cmath>
#include <limits>

namespace ssbm::specfun {

namespace {

constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kInvE = 0.36787944117144232160;

// Lanczos g = 7, 9 coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// Lower regularized incomplete gamma P(1/2, z) by series, z in [0, 1.6].
double gamma_p_half_series(double z) {
    if (z == 0.0) return 0.0;
    const double a = 0.5;
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= z / (a + k);
        sum += term;
        if (term < sum * 1e-18) break;
    }
    // P = z^a e^-z sum / Gamma(1/2)
    return std::sqrt(z) * std::exp(-z) * sum / kSqrtPi;
}

// Continued fraction for Gamma(1/2, z) * e^z * z^-1/2, z >= 1.5 (Lentz).
double gamma_q_half_cf(double z) {
    const double a = 0.5;
    const double tiny = 1e-300;
    double b = z + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 300; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h;
}

// Stirling tail sum(B_2k / (2k(2k-1) z^(2k-1))), valid for z >= 10.
double stirling_tail(double z) {
    static constexpr double coef[7] = {
        1.0 / 12.0,     -1.0 / 360.0,     1.0 / 1260.0,    -1.0 / 1680.0,
        1.0 / 1188.0,   -691.0 / 360360.0, 1.0 / 156.0,
    };
    const double z2 = z * z;
    double zp = z;
    double sum = 0.0;
    for (double c : coef) {
        sum += c / zp;
        zp *= z2;
    }
    return sum;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw domain_error("log_gamma: argument must be positive");
    if (x < 0.5) {
        // Reflection to keep the Lanczos sum well conditioned.
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    const double xm1 = x - 1.0;
    double sum = kLanczos[0];
    for (int k = 1; k < 9; ++k) sum += kLanczos[k] / (xm1 + k);
    const double t = xm1 + 7.5;
    return kLogSqrt2Pi + (xm1 + 0.5) * std::log(t) - t + std::log(sum);
}

double erf(double x) {
    if (std::isnan(x)) return x;
    const double z = x * x;
    if (z < 1.5) {
        double p = gamma_p_half_series(z);
        return x < 0.0 ? -p : p;
    }
    double c = erfc(std::fabs(x));
    return x < 0.0 ? c - 1.0 : 1.0 - c;
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return 2.0 - erfc(-x);
    const double z = x * x;
    if (z < 1.5) return 1.0 - gamma_p_half_series(z);
    if (z > 710.0) return 0.0;
    return std::exp(-z) * x * gamma_q_half_cf(z) / kSqrtPi;
}

double erfcx(double x) {
    if (x < 0.0) {
        // Only meaningful while 2 exp(x^2) is finite.
        double z = x * x;
        if (z > 700.0) throw domain_error("erfcx: overflow for large negative argument");
        return 2.0 * std::exp(z) - erfcx(-x);
    }
    const double z = x * x;
    if (z < 1.5) return std::exp(z) * (1.0 - gamma_p_half_series(z));
    return x * gamma_q_half_cf(z) / kSqrtPi;
}

double erfc_inv(double y) {
    if (!(y > 0.0 && y < 2.0)) throw domain_error("erfc_inv: argument must lie in (0, 2)");
    if (y == 1.0) return 0.0;
    if (y > 1.0) return -erfc_inv(2.0 - y);

    // Acklam's inverse-normal rational approximation as the seed:
    // erfc_inv(y) = -probit(y/2) / sqrt(2).
    static constexpr double A[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double B[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double C[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double D[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    const double p = 0.5 * y;
    double xn;  // probit(p), negative since p < 0.5
    if (p < 0.02425) {
        double q = std::sqrt(-2.0 * std::log(p));
        xn = (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
             ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    } else {
        double q = p - 0.5;
        double r = q * q;
        xn = (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q /
             (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
    }
    double x = -xn / std::sqrt(2.0);
    if (x < 0.0) x = 0.0;

    // Newton polish on erfc(x) = y, written through erfcx to stay finite
    // in the far tail: step = sqrt(pi)/2 (erfcx(x) - y exp(x^2)).
    const double log_y = std::log(y);
    for (int it = 0; it < 6; ++it) {
        double step = 0.5 * kSqrtPi * (erfcx(x) - std::exp(log_y + x * x));
        x += step;
        if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(x))) break;
    }
    return x;
}

double lambert_w0(double x) {
    if (std::isnan(x)) throw domain_error("lambert_w0: NaN argument");
    if (x < -kInvE - 1e-15) throw domain_error("lambert_w0: argument below -1/e");
    if (x == 0.0) return 0.0;

    double w;
    if (x < -kInvE + 1e-4) {
        // Branch-point series in p = sqrt(2 (e x + 1)).
        double q = 2.0 * (std::exp(1.0) * x + 1.0);
        double ps = q > 0.0 ? std::sqrt(q) : 0.0;
        w = -1.0 + ps - ps * ps / 3.0 + 11.0 * ps * ps * ps / 72.0;
    } else if (x <= std::exp(1.0)) {
        w = std::log1p(x);
    } else {
        double l1 = std::log(x);
        double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    for (int it = 0; it < 60; ++it) {
        double wp1 = w + 1.0;
        if (std::fabs(wp1) < 1e-7) break;  // branch point: the series seed is best
        double ew = std::exp(w);
        double f = w * ew - x;
        double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if (denom == 0.0) break;
        double step = f / denom;
        w -= step;
        if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(w))) break;
    }
    return std::max(w, -1.0);
}

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw domain_error("log_beta: arguments must be positive");
    if (a < b) std::swap(a, b);  // a >= b; symmetry is exact by construction
    if (a < 10.0) {
        return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
    }
    // lgamma(a) - lgamma(a+b), expanded so the large Stirling terms cancel
    // analytically instead of numerically.
    double diff = -b * std::log(a + b) - (a - 0.5) * std::log1p(b / a) + b +
                  stirling_tail(a) - stirling_tail(a + b);
    return log_gamma(b) + diff;
}

double trigamma(double x) {
    if (!(x > 0.0)) throw domain_error("trigamma: argument must be positive");
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Asymptotic 1/x + 1/2x^2 + sum B_2k / x^(2k+1)
    double tail = inv + 0.5 * inv2 +
                  inv2 * inv *
                      (1.0 / 6.0 +
                       inv2 * (-1.0 / 30.0 +
                               inv2 * (1.0 / 42.0 +
                                       inv2 * (-1.0 / 30.0 + inv2 * (5.0 / 66.0)))));
    return acc + tail;
}

double harmonic(long long n) {
    if (n < 1) throw domain_error("harmonic: n must be >= 1");
    if (n <= 1000000) {
        double sum = 0.0;
        for (long long i = n; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
        return sum;
    }
    const double nd = static_cast<double>(n);
    return kEulerGamma + std::log(nd) + 0.5 / nd - 1.0 / (12.0 * nd * nd);
}

double harmonic_real(double n) {
    if (!(n > 0.0)) throw domain_error("harmonic_real: n must be positive");
    if (n == std::floor(n) && n <= 1e6) return harmonic(static_cast<long long>(n));
    return kEulerGamma + std::log(n) + 0.5 / n - 1.0 / (12.0 * n * n);
}

}  // namespace ssbm::specfun
