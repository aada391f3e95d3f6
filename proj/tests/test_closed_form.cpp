#include "ssbm/closed_form.hpp"

#include "ssbm/errors.hpp"
#include "ssbm/simulate.hpp"
#include "ssbm/specfun.hpp"

#include "doctest.h"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

using namespace ssbm;
namespace sf = ssbm::specfun;

namespace {

// Simpson-rule oracle, independent of the library quadrature.
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("bm law at n=1 equals the underlying") {
    for (Family f : {Family::kGaussian, Family::kHalfNormal, Family::kParetoGpd,
                     Family::kExponential}) {
        TailModel m = make_model(f, f == Family::kParetoGpd ? 0.4 : 1.3);
        BmLaw law = make_bm_law(m, 1.0);
        for (double u : {0.1, 0.5, 0.9}) {
            double x = quantile(m, u);
            CHECK(bm_cdf(law, x) == doctest::Approx(cdf(m, x)).epsilon(1e-13));
            CHECK(bm_pdf(law, x) == doctest::Approx(pdf(m, x)).epsilon(1e-13));
        }
    }
}

TEST_CASE("bm quantile and cdf examples") {
    BmLaw exp10 = make_bm_law(make_model(Family::kExponential, 1.0), 10.0);
    CHECK(bm_quantile(exp10, 1.0 / std::exp(1.0)) ==
          doctest::Approx(-std::log(1.0 - std::exp(-0.1))).epsilon(1e-12));

    BmLaw par9 = make_bm_law(make_model(Family::kParetoGpd, 1.0), 9.0);
    CHECK(bm_cdf(par9, 5.0) == doctest::Approx(0.134217728).epsilon(1e-12));
}

TEST_CASE("bm cdf/quantile round-trip per family") {
    Xoshiro256pp rng(5);
    for (Family f : {Family::kGaussian, Family::kHalfNormal, Family::kParetoGpd,
                     Family::kExponential}) {
        for (double n : {1.0, 2.0, 17.5, 400.0}) {
            TailModel m = make_model(f, f == Family::kParetoGpd ? 0.35 : 2.0);
            BmLaw law = make_bm_law(m, n);
            for (int i = 0; i < 25; ++i) {
                double u = 1e-3 + (1.0 - 2e-3) * rng.next_double();
                CHECK(bm_cdf(law, bm_quantile(law, u)) == doctest::Approx(u).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("mpmr_exact examples with grid oracle") {
    // Exponential: xi log n, grid-maximize bm_pdf over (0, 20]
    BmLaw law = make_bm_law(make_model(Family::kExponential, 1.0), 100.0);
    double best_m = 0.0, best_v = -1.0;
    for (int i = 1; i <= 200000; ++i) {
        double m = 20.0 * i / 200000.0;
        double v = bm_pdf(law, m);
        if (v > best_v) {
            best_v = v;
            best_m = m;
        }
    }
    CHECK(mpmr_exact(law) == doctest::Approx(std::log(100.0)).epsilon(1e-12));
    CHECK(std::fabs(mpmr_exact(law) - best_m) <= 1e-3);

    // Pareto: ((n+xi)/(xi+1))^xi / xi at xi=1, n=9 -> 5, cross-checked
    BmLaw par = make_bm_law(make_model(Family::kParetoGpd, 1.0), 9.0);
    CHECK(mpmr_exact(par) == doctest::Approx(5.0).epsilon(1e-12));
    best_v = -1.0;
    for (int i = 1; i <= 200000; ++i) {
        double m = 1.0 + 20.0 * i / 200000.0;
        double v = bm_pdf(par, m);
        if (v > best_v) {
            best_v = v;
            best_m = m;
        }
    }
    CHECK(std::fabs(mpmr_exact(par) - best_m) <= 1e-3);

    // block of one: mode of the underlying
    CHECK(mpmr_exact(make_bm_law(make_model(Family::kExponential, 2.0), 1.0)) == 0.0);
    CHECK(mpmr_exact(make_bm_law(make_model(Family::kHalfNormal, 1.0), 1.0)) == 0.0);
}

TEST_CASE("mpmr_exact maximizes bm_pdf across families and block sizes") {
    for (Family f : {Family::kGaussian, Family::kHalfNormal, Family::kParetoGpd,
                     Family::kExponential}) {
        for (double n : {2.0, 10.0, 100.0, 1000.0}) {
            TailModel m = make_model(f, f == Family::kParetoGpd ? 0.4 : 1.0);
            BmLaw law = make_bm_law(m, n);
            double mode = mpmr_exact(law);
            double peak = bm_pdf(law, mode);
            CHECK(peak >= bm_pdf(law, mode * (1.0 + 1e-4)));
            CHECK(peak >= bm_pdf(law, mode * (1.0 - 1e-4)));
        }
    }
}

TEST_CASE("mpmr_asymptotic examples with bisected Lambert oracle") {
    // test-local bisection for W0(y)
    auto w0 = [](double y) {
        double lo = 0.0, hi = 1.0;
        while (hi * std::exp(hi) < y) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (mid * std::exp(mid) < y ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    BmLaw g = make_bm_law(make_model(Family::kGaussian, 1.0), 100.0);
    CHECK(mpmr_asymptotic(g) ==
          doctest::Approx(std::sqrt(w0(1e4 / (2.0 * sf::kPi)))).epsilon(1e-12));
    CHECK(std::fabs(mpmr_asymptotic(g) - mpmr_exact(g)) / mpmr_exact(g) < 0.02);

    BmLaw h = make_bm_law(make_model(Family::kHalfNormal, 1.0), 100.0);
    CHECK(mpmr_asymptotic(h) ==
          doctest::Approx(std::sqrt(w0(2e4 / sf::kPi))).epsilon(1e-12));
    CHECK(std::fabs(mpmr_asymptotic(h) - mpmr_exact(h)) / mpmr_exact(h) < 0.02);

    BmLaw e = make_bm_law(make_model(Family::kExponential, 2.0), std::exp(5.0));
    CHECK(mpmr_asymptotic(e) == doctest::Approx(10.0).epsilon(1e-12));

    CHECK_THROWS_AS(mpmr_asymptotic(make_bm_law(make_model(Family::kGaussian, 1.0), 1.5)),
                    domain_error);
    CHECK_THROWS_AS(mpmr_exact(make_bm_law(make_model(Family::kGaussian, 1.0), 0.5)),
                    domain_error);
    CHECK_THROWS_AS(make_bm_law(make_model(Family::kGaussian, 1.0), 0.0), domain_error);
}

TEST_CASE("emr examples") {
    CHECK(emr(make_bm_law(make_model(Family::kExponential, 1.0), 10.0)) ==
          doctest::Approx(2.9289682540).epsilon(1e-10));
    CHECK_THROWS_AS(emr(make_bm_law(make_model(Family::kParetoGpd, 1.5), 50.0)),
                    nonexistence_error);
    // n = 1: mean of the underlying
    CHECK(emr(make_bm_law(make_model(Family::kExponential, 3.0), 1.0)) ==
          doctest::Approx(3.0).epsilon(1e-12));
    CHECK(emr(make_bm_law(make_model(Family::kGaussian, 1.0), 1.0)) ==
          doctest::Approx(0.0).epsilon(1e-8));
    // half-normal mean sqrt(2/pi) via quadrature path
    CHECK(emr(make_bm_law(make_model(Family::kHalfNormal, 1.0), 1.0)) ==
          doctest::Approx(std::sqrt(2.0 / sf::kPi)).epsilon(1e-8));
}

TEST_CASE("bm_variance examples and Monte Carlo oracle") {
    // trigamma(inf) = 0 limit
    CHECK(bm_variance(make_bm_law(make_model(Family::kExponential, 1.0), 1e9)) ==
          doctest::Approx(sf::kPi * sf::kPi / 6.0).epsilon(1e-8));
    // n = 1 equals the underlying variance
    CHECK(bm_variance(make_bm_law(make_model(Family::kExponential, 1.0), 1.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(bm_variance(make_bm_law(make_model(Family::kParetoGpd, 0.6), 10.0)),
                    nonexistence_error);

    // Pareto xi=0.25, n=100: inverse-CDF Monte Carlo over 1e6 block maxima
    BmLaw law = make_bm_law(make_model(Family::kParetoGpd, 0.25), 100.0);
    Xoshiro256pp rng(31);
    double s1 = 0.0, s2 = 0.0;
    const int reps = 1000000;
    for (int i = 0; i < reps; ++i) {
        double u = rng.next_double();
        if (u <= 0.0) u = 1e-18;
        double m = bm_quantile(law, u);
        s1 += m;
        s2 += m * m;
    }
    double mc_var = s2 / reps - (s1 / reps) * (s1 / reps);
    CHECK(bm_variance(law) == doctest::Approx(mc_var).epsilon(0.01));
}

TEST_CASE("exponential bm variance nearly independent of n") {
    double v100 = bm_variance(make_bm_law(make_model(Family::kExponential, 1.0), 100.0));
    double v1e4 = bm_variance(make_bm_law(make_model(Family::kExponential, 1.0), 1e4));
    CHECK(std::fabs(v100 - v1e4) <= sf::trigamma(101.0));
}

TEST_CASE("bm_moment_pareto") {
    // k=1 matches EMR
    BmLaw law = make_bm_law(make_model(Family::kParetoGpd, 0.5), 10.0);
    CHECK(bm_moment_pareto(law, 1) == doctest::Approx(emr(law)).epsilon(1e-12));
    CHECK_THROWS_AS(bm_moment_pareto(make_bm_law(make_model(Family::kParetoGpd, 0.6), 10.0), 2),
                    nonexistence_error);
    // k=1, n=1: E[X] against Simpson quadrature of x f(x), integrated in
    // log x so the open support edge and the heavy tail are resolved
    BmLaw one = make_bm_law(make_model(Family::kParetoGpd, 0.5), 1.0);
    TailModel m = one.model;
    double oracle = simpson(
        [&](double t) {
            double x = std::exp(t);
            return x * pdf(m, x) * x;  // d x = x d t
        },
        std::log(2.0) + 1e-12, std::log(5e7), 200000);
    CHECK(bm_moment_pareto(one, 1) == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("bm_cdf_offset reproduces the tabulated limits") {
    const double inf = std::numeric_limits<double>::infinity();
    struct Row {
        int k;
        double value;
    };
    const Row rows[] = {{-3, 4.35599e-21}, {-2, 2.25592e-6}, {-1, 0.0271651},
                        {0, 0.367879},     {1, 0.757805},    {2, 0.925972},
                        {3, 0.978896}};
    for (const Row& r : rows) {
        CHECK(bm_cdf_offset(1.0, inf, r.k) == doctest::Approx(r.value).epsilon(5e-6));
    }
    // finite n tends to the limit
    CHECK(bm_cdf_offset(1.0, 1e7, 0) == doctest::Approx(1.0 / std::exp(1.0)).epsilon(1e-6));
    // independent of xi (the offset scale cancels)
    CHECK(bm_cdf_offset(0.3, 1000.0, 1) == bm_cdf_offset(2.5, 1000.0, 1));
}

TEST_CASE("kld closed forms against integral oracle") {
    CHECK(kld(1.0, KldDirection::kMToX) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(kld(1.0, KldDirection::kXToM) == doctest::Approx(0.0).epsilon(1e-14));

    // numerical integration of log(f_M/f_X) f_M for Exponential(1)
    auto oracle = [&](double n_eff) {
        TailModel m = make_model(Family::kExponential, 1.0);
        BmLaw law = make_bm_law(m, n_eff);
        return simpson(
            [&](double t) {
                double fm = bm_pdf(law, t);
                if (fm <= 0.0) return 0.0;
                return std::log(fm / pdf(m, t)) * fm;
            },
            1e-9, 60.0, 600000);
    };
    CHECK(kld(10.0, KldDirection::kMToX) == doctest::Approx(oracle(10.0)).epsilon(1e-6));
    CHECK(kld(10.0, KldDirection::kMToX) == doctest::Approx(1.4025851).epsilon(1e-6));
    // theta substitution: effective size n * theta
    CHECK(kld(10.0 * 0.5, KldDirection::kMToX) == doctest::Approx(oracle(5.0)).epsilon(1e-6));
    CHECK(kld(10.0 * 0.5, KldDirection::kMToX) ==
          doctest::Approx(0.2 + std::log(5.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("kld direction sum identity") {
    for (double n : {0.5, 1.0, 2.5, 10.0, 400.0}) {
        double sum = kld(n, KldDirection::kMToX) + kld(n, KldDirection::kXToM);
        CHECK(sum == doctest::Approx(n + 1.0 / n - 2.0).epsilon(1e-12));
    }
}

TEST_CASE("F_M at the exact mode approaches the family constants") {
    // Exponential: F_M(m*) -> 1/e
    BmLaw e = make_bm_law(make_model(Family::kExponential, 1.0), 1e4);
    CHECK(bm_cdf(e, mpmr_exact(e)) == doctest::Approx(1.0 / std::exp(1.0)).epsilon(1e-3));
    // Pareto: ((n-1)/(n+xi))^n -> exp(-1-xi)
    double xi = 0.4;
    BmLaw p = make_bm_law(make_model(Family::kParetoGpd, xi), 1e4);
    CHECK(bm_cdf(p, mpmr_exact(p)) == doctest::Approx(std::exp(-1.0 - xi)).epsilon(1e-3));
}
