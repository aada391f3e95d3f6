#pragma once

#include "ssbm/subsample.hpp"

#include <vector>

namespace ssbm {

// Shape-preserving C1 cubic Hermite interpolant of BM standard deviation
// against log block size, with analytic derivative d g / d log n.
class SdSpline {
  public:
    // knots_n strictly increasing block sizes, sd the matching values.
    SdSpline(std::vector<double> knots_n, std::vector<double> sd);

    double operator()(double n) const;
    double derivative_log(double n) const;  // d g / d log n at n

    double n_front() const;
    double n_back() const;

  private:
    std::vector<double> t_;  // log n at knots
    std::vector<double> y_;
    std::vector<double> m_;  // tangents dy/dt

    double eval(double t, bool derivative) const;
};

SdSpline fit_sd_spline(const BmCurve& curve);

enum class PlateauDiagnostic { kPlateauFound, kMonotoneNoPlateau, kClippedAtBoundary };

const char* plateau_diagnostic_name(PlateauDiagnostic d);

struct PlateauRange {
    double n_star = 0.0;
    double n_min = 0.0;
    double n_max = 0.0;
    double delta = 0.0;
    PlateauDiagnostic diagnostic = PlateauDiagnostic::kPlateauFound;
};

// Finds n* = argmin_{n >= n0} (dg/dlog n)^2 and the level crossings
// g = (1 +- delta) g(n*) nearest to n*. Crossings missing in range are
// clipped to the grid edge and reported through the diagnostic; a strictly
// decreasing g with derivative bounded away from zero is reported as
// kMonotoneNoPlateau. Never throws on degenerate shapes.
PlateauRange find_plateau(const SdSpline& g, double delta, double n0);

}  // namespace ssbm
