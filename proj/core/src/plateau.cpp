#include "ssbm/plateau.hpp"

#include "ssbm/errors.hpp"
#include "ssbm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ssbm {

SdSpline::SdSpline(std::vector<double> knots_n, std::vector<double> sd) {
    const std::size_t k = knots_n.size();
    if (k < 4 || sd.size() != k)
        throw domain_error("SdSpline: need at least 4 matching grid points");
    t_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!(knots_n[i] > 0.0) || (i > 0 && knots_n[i] <= knots_n[i - 1]))
            throw domain_error("SdSpline: block sizes must be positive and increasing");
        t_[i] = std::log(knots_n[i]);
    }
    y_ = std::move(sd);

    // Fritsch-Carlson tangents: harmonic-mean interior slopes, zero at
    // local extrema, clamped three-point endpoint rule.
    std::vector<double> h(k - 1), d(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) {
        h[i] = t_[i + 1] - t_[i];
        d[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    m_.assign(k, 0.0);
    for (std::size_t i = 1; i + 1 < k; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m_[i] = 0.0;
        } else {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::fabs(m) > 3.0 * std::fabs(d0)) return 3.0 * d0;
        return m;
    };
    m_[0] = endpoint(h[0], h[1], d[0], d[1]);
    m_[k - 1] = endpoint(h[k - 2], h[k - 3], d[k - 2], d[k - 3]);
}

double SdSpline::n_front() const { return std::exp(t_.front()); }
double SdSpline::n_back() const { return std::exp(t_.back()); }

double SdSpline::eval(double t, bool derivative) const {
    t = std::clamp(t, t_.front(), t_.back());
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = std::min<std::size_t>(
        t_.size() - 2, it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1);
    const double h = t_[i + 1] - t_[i];
    const double u = (t - t_[i]) / h;
    if (!derivative) {
        double h00 = (2.0 * u - 3.0) * u * u + 1.0;
        double h10 = ((u - 2.0) * u + 1.0) * u;
        double h01 = (3.0 - 2.0 * u) * u * u;
        double h11 = (u - 1.0) * u * u;
        return y_[i] * h00 + h * m_[i] * h10 + y_[i + 1] * h01 + h * m_[i + 1] * h11;
    }
    double dh00 = 6.0 * u * (u - 1.0);
    double dh10 = (3.0 * u - 4.0) * u + 1.0;
    double dh01 = -6.0 * u * (u - 1.0);
    double dh11 = (3.0 * u - 2.0) * u;
    return y_[i] * dh00 / h + m_[i] * dh10 + y_[i + 1] * dh01 / h + m_[i + 1] * dh11;
}

double SdSpline::operator()(double n) const { return eval(std::log(n), false); }
double SdSpline::derivative_log(double n) const { return eval(std::log(n), true); }

SdSpline fit_sd_spline(const BmCurve& curve) {
    return SdSpline(curve.n, curve.sd);
}

const char* plateau_diagnostic_name(PlateauDiagnostic d) {
    switch (d) {
        case PlateauDiagnostic::kPlateauFound: return "plateau_found";
        case PlateauDiagnostic::kMonotoneNoPlateau: return "monotone_no_plateau";
        case PlateauDiagnostic::kClippedAtBoundary: return "clipped_at_boundary";
    }
    return "unknown";
}

namespace {

constexpr int kDensePoints = 1024;

// Guards exp/log roundoff at the edges and enforces n_min <= n* <= n_max.
PlateauRange clamp_into_range(PlateauRange r, const SdSpline& g) {
    r.n_star = std::clamp(r.n_star, g.n_front(), g.n_back());
    r.n_min = std::clamp(r.n_min, g.n_front(), r.n_star);
    r.n_max = std::clamp(r.n_max, r.n_star, g.n_back());
    return r;
}

}  // namespace

PlateauRange find_plateau(const SdSpline& g, double delta, double n0) {
    if (!(delta > 0.0 && delta < 1.0)) throw domain_error("find_plateau: delta must lie in (0,1)");
    const double t_lo = std::log(g.n_front());
    const double t_hi = std::log(g.n_back());
    const double t0 = std::log(n0);
    if (t0 < t_lo - 1e-12 || t0 > t_hi + 1e-12)
        throw domain_error("find_plateau: n0 outside the fitted grid range");

    auto sq = [&](double t) {
        double d = g.derivative_log(std::exp(t));
        return d * d;
    };

    // argmin of the squared derivative over [t0, t_hi], ties to smallest t.
    double t_star = t0;
    double best = sq(t0);
    const double span = std::max(t_hi - t0, 0.0);
    for (int i = 1; i < kDensePoints; ++i) {
        double t = t0 + span * i / (kDensePoints - 1);
        double v = sq(t);
        if (v < best) {
            best = v;
            t_star = t;
        }
    }
    if (span > 0.0) {
        double step = span / (kDensePoints - 1);
        double a = std::max(t0, t_star - step);
        double b = std::min(t_hi, t_star + step);
        double t_ref = numerics::golden_max([&](double t) { return -sq(t); }, a, b, 1e-12);
        if (sq(t_ref) < best) t_star = t_ref;
    }

    const double g_star = g(std::exp(t_star));
    const double level_lo = (1.0 + delta) * g_star;  // crossing below n*
    const double level_hi = (1.0 - delta) * g_star;  // crossing above n*

    PlateauRange out;
    out.delta = delta;
    out.n_star = std::exp(t_star);

    // Nearest crossing below t_star on the full grid domain.
    bool clipped = false;
    {
        double step = (t_star - t_lo) / kDensePoints;
        double t_cross = t_lo;
        bool found = false;
        if (step > 0.0) {
            double prev_t = t_star;
            double prev_v = g_star - level_lo;
            for (int i = 1; i <= kDensePoints; ++i) {
                double t = t_star - step * i;
                double v = g(std::exp(t)) - level_lo;
                if (prev_v * v <= 0.0 && (prev_v != 0.0 || v != 0.0)) {
                    t_cross = numerics::brent_root(
                        [&](double tt) { return g(std::exp(tt)) - level_lo; }, t, prev_t, 1e-13);
                    found = true;
                    break;
                }
                prev_t = t;
                prev_v = v;
            }
        }
        if (!found) clipped = true;
        out.n_min = std::exp(found ? t_cross : t_lo);
    }
    // Nearest crossing above t_star.
    {
        double step = (t_hi - t_star) / kDensePoints;
        double t_cross = t_hi;
        bool found = false;
        if (step > 0.0) {
            double prev_t = t_star;
            double prev_v = g_star - level_hi;
            for (int i = 1; i <= kDensePoints; ++i) {
                double t = t_star + step * i;
                double v = g(std::exp(t)) - level_hi;
                if (prev_v * v <= 0.0 && (prev_v != 0.0 || v != 0.0)) {
                    t_cross = numerics::brent_root(
                        [&](double tt) { return g(std::exp(tt)) - level_hi; }, prev_t, t, 1e-13);
                    found = true;
                    break;
                }
                prev_t = t;
                prev_v = v;
            }
        }
        if (!found) clipped = true;
        out.n_max = std::exp(found ? t_cross : t_hi);
    }

    // Strictly decreasing with derivative bounded away from zero over the
    // whole fitted range: no plateau to find.
    {
        double min_sq = std::numeric_limits<double>::infinity();
        double max_sq = 0.0;
        bool strictly_decreasing = true;
        double prev = g(std::exp(t_lo));
        for (int i = 0; i < kDensePoints; ++i) {
            double t = t_lo + (t_hi - t_lo) * i / (kDensePoints - 1);
            double v = sq(t);
            min_sq = std::min(min_sq, v);
            max_sq = std::max(max_sq, v);
            if (i > 0) {
                double val = g(std::exp(t));
                if (val >= prev) strictly_decreasing = false;
                prev = val;
            }
        }
        if (strictly_decreasing && max_sq > 0.0 && min_sq > 1e-4 * max_sq) {
            out.diagnostic = PlateauDiagnostic::kMonotoneNoPlateau;
            return clamp_into_range(out, g);
        }
    }
    out.diagnostic =
        clipped ? PlateauDiagnostic::kClippedAtBoundary : PlateauDiagnostic::kPlateauFound;
    return clamp_into_range(out, g);
}

}  // namespace ssbm
