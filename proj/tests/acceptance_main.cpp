// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criterion 11 is data-gated and reports SKIP when the
// public datasets are not present (SSBM_DATA_DIR or ./data).

#include "ssbm/analysis.hpp"
#include "ssbm/closed_form.hpp"
#include "ssbm/errors.hpp"
#include "ssbm/evi.hpp"
#include "ssbm/extremal_index.hpp"
#include "ssbm/plateau.hpp"
#include "ssbm/simulate.hpp"
#include "ssbm/specfun.hpp"
#include "ssbm/subsample.hpp"
#include "ssbm/tail_estimators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

using namespace ssbm;
namespace sf = ssbm::specfun;

namespace {

int g_failed = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
    std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failed;
}

void report_skip(int id, const std::string& name, const std::string& detail) {
    std::printf("SKIP criterion %2d: %s (%s)\n", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> iid_exponential(int n, std::uint64_t seed, double mean = 1.0) {
    Xoshiro256pp rng(seed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng.next_exponential(mean);
    return v;
}

Marginal ecdf_of(const std::vector<double>& series) {
    std::vector<double> sorted(series);
    std::sort(sorted.begin(), sorted.end());
    return Marginal{EmpiricalCdf(std::move(sorted))};
}

// ---------------------------------------------------------------- 1
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    const double inf = std::numeric_limits<double>::infinity();
    const struct {
        int k;
        double value;
    } rows[] = {{-3, 4.35599e-21}, {-2, 2.25592e-6}, {-1, 0.0271651}, {0, 0.367879},
                {1, 0.757805},     {2, 0.925972},    {3, 0.978896}};
    bool limits_ok = true;
    std::string worst;
    for (const auto& row : rows) {
        double got = bm_cdf_offset(1.0, inf, row.k);
        // 6 significant digits
        double rel = std::fabs(got - row.value) / row.value;
        if (rel > 5e-6) {
            limits_ok = false;
            worst = "k=" + std::to_string(row.k);
        }
    }

    // Monte Carlo at n = 1000: 1e5 block maxima, each the max of 1000 draws
    const int n = 1000, blocks = 100000;
    Xoshiro256pp rng(1001);
    std::vector<double> maxima(blocks);
    for (int b = 0; b < blocks; ++b) {
        double mx = 0.0;
        for (int i = 0; i < n; ++i) mx = std::max(mx, rng.next_exponential(1.0));
        maxima[b] = mx;
    }
    std::sort(maxima.begin(), maxima.end());
    const double mstar = std::log(static_cast<double>(n));
    const double unit = sf::kPi / std::sqrt(6.0);
    bool mc_ok = true;
    double worst_gap = 0.0;
    for (const auto& row : rows) {
        double level = mstar + row.k * unit;
        double expect = bm_cdf_offset(1.0, n, row.k);
        double got = static_cast<double>(
                         std::upper_bound(maxima.begin(), maxima.end(), level) -
                         maxima.begin()) /
                     blocks;
        double gap = std::fabs(got - expect);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 0.01) mc_ok = false;
    }
    double dt = seconds_since(t0);
    report(1, limits_ok && mc_ok && dt < 10.0, "Table 1 golden values",
           "limits " + std::string(limits_ok ? "ok" : ("off at " + worst)) +
               ", MC worst gap " + format_double(worst_gap) + ", " + format_double(dt) + " s");
}

// ---------------------------------------------------------------- 2
void criterion_2() {
    Xoshiro256pp rng(2024);
    bool ok = true;
    std::string detail = "all enumerations matched to 1e-12";
    for (int rep = 0; rep < 20 && ok; ++rep) {
        int N = 2 + static_cast<int>(rng.next_double() * 11);
        std::vector<double> v(static_cast<std::size_t>(N));
        for (auto& x : v) x = 20.0 * rng.next_double() - 10.0;
        SortedSample s = make_sorted_sample(v);
        for (int n = 1; n <= std::min(4, N) && ok; ++n) {
            // direct enumeration over all C(N, n) subsets
            std::vector<int> idx(n);
            std::iota(idx.begin(), idx.end(), 0);
            double s1 = 0.0, s2 = 0.0;
            long long count = 0;
            for (;;) {
                double mx = s.values[idx.back()];
                s1 += mx;
                s2 += mx * mx;
                ++count;
                int i = n - 1;
                while (i >= 0 && idx[i] == N - n + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
            }
            double mean = s1 / count;
            double var = s2 / count - mean * mean;
            WeightedMoments got = moments_hat(s, n);
            if (std::fabs(got.mean - mean) > 1e-12 * std::max(1.0, std::fabs(mean)) ||
                std::fabs(got.variance - var) > 1e-12 * std::max(1.0, var)) {
                ok = false;
                detail = "mismatch at N=" + std::to_string(N) + " n=" + std::to_string(n);
            }
        }
    }
    report(2, ok, "enumeration oracle N<=12 n<=4", detail);
}

// ---------------------------------------------------------------- 3
void criterion_3() {
    bool ok = true;
    double worst = 0.0;
    for (int N : {100, 1000, 10000, 100000}) {
        std::vector<int> grid = geometric_grid(2, N, 64);
        for (int n : grid) {
            SubsampleWeights w = weights(N, n);
            double sum = 0.0, comp = 0.0;
            for (double lp : w.log_p) {
                double y = std::exp(lp) - comp;
                double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            worst = std::max(worst, std::fabs(sum - 1.0));
            if (std::fabs(sum - 1.0) > 1e-12) ok = false;
        }
    }
    report(3, ok, "weight normalization across N up to 1e5",
           "worst |sum p - 1| = " + format_double(worst));
}

// ---------------------------------------------------------------- 4
void criterion_4() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> t = student_t_abs(3.0, 50000, 33);
    std::vector<double> logged(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) logged[i] = std::log(t[i]);
    SortedSample sample = make_sorted_sample(std::move(logged), Transform::kLog);
    BmCurve curve = bm_curve(sample);
    SdSpline spline = fit_sd_spline(curve);
    PlateauRange range = find_plateau(spline, 0.1, std::sqrt(50000.0));
    double xi_emr = wlse_emr(curve, range).xi_hat;
    double xi_mpmr = wlse_mpmr(curve, range).xi_hat;
    double dt = seconds_since(t0);
    bool ok = std::fabs(xi_emr - 1.0 / 3.0) <= 0.08 &&
              std::fabs(xi_mpmr - 1.0 / 3.0) <= 0.08 && dt < 120.0;
    report(4, ok, "student-t(3) recovery of xi = 1/3",
           "emr " + format_double(xi_emr) + ", mpmr " + format_double(xi_mpmr) + ", " +
               format_double(dt) + " s");
}

// ---------------------------------------------------------------- 5
void criterion_5() {
    // Interpreted as the plateau-level check |g(n*) - pi/sqrt 6| <= 5%
    // (the range endpoints sit at (1 +- delta) g(n*) by construction, so a
    // range-wide 5% band is unsatisfiable with delta = 0.1).
    std::vector<double> v = iid_exponential(50000, 1);
    SortedSample sample = make_sorted_sample(std::move(v));
    BmCurve curve = bm_curve(sample);
    SdSpline spline = fit_sd_spline(curve);
    PlateauRange range = find_plateau(spline, 0.1, std::sqrt(50000.0));
    const double level = sf::kPi / std::sqrt(6.0);
    double g_star = spline(range.n_star);
    double dev = std::fabs(g_star - level) / level;
    double xi = wlse_emr(curve, range).xi_hat;
    bool ok = dev <= 0.05 && xi >= 0.9 && xi <= 1.1;
    report(5, ok, "exponential plateau level and EMR slope",
           "g(n*) dev " + format_double(100.0 * dev) + "%, xi " + format_double(xi));
}

// ---------------------------------------------------------------- 6
void criterion_6() {
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::vector<double> v = half_gaussian(1.0, 50000, seed);
        SortedSample sample = make_sorted_sample(std::move(v));
        BmCurve curve = bm_curve(sample);
        SdSpline spline = fit_sd_spline(curve);
        PlateauRange range = find_plateau(spline, 0.1, std::sqrt(50000.0));
        if (range.diagnostic == PlateauDiagnostic::kMonotoneNoPlateau) {
            ++good;
        } else if (range.diagnostic == PlateauDiagnostic::kClippedAtBoundary) {
            bool strictly_decreasing = true;
            for (std::size_t i = 1; i < curve.size(); ++i)
                if (curve.sd[i] >= curve.sd[i - 1]) strictly_decreasing = false;
            if (strictly_decreasing) ++good;
        }
    }
    report(6, good >= 9, "half-Gaussian shows no plateau",
           std::to_string(good) + "/10 seeds");
}

// ---------------------------------------------------------------- 7
void criterion_7() {
    // Simpson integration of log(f_M / f_X) f_M for Exponential(1)
    auto integral = [](double n_eff) {
        TailModel m = make_model(Family::kExponential, 1.0);
        BmLaw law = make_bm_law(m, n_eff);
        const double a = 1e-10, b = 60.0;
        const int panels = 400000;
        double h = (b - a) / panels;
        auto f = [&](double t) {
            double fm = bm_pdf(law, t);
            if (fm <= 0.0) return 0.0;
            return std::log(fm / pdf(m, t)) * fm;
        };
        double acc = f(a) + f(b);
        for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
        return acc * h / 3.0;
    };
    bool ok = true;
    double worst = 0.0;
    for (double n : {2.0, 5.0, 10.0}) {
        double gap = std::fabs(integral(n) - kld(n, KldDirection::kMToX));
        worst = std::max(worst, gap);
        if (gap > 1e-6) ok = false;
    }
    for (double n_eff : {1.0, 2.5, 5.0}) {
        double gap = std::fabs(integral(n_eff) - kld(n_eff, KldDirection::kMToX));
        worst = std::max(worst, gap);
        if (gap > 1e-6) ok = false;
    }
    report(7, ok, "KLD closed forms vs quadrature",
           "worst |integral - closed form| = " + format_double(worst));
}

// ---------------------------------------------------------------- 8
void criterion_8() {
    auto t0 = std::chrono::steady_clock::now();
    int ok_iid = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::vector<double> series = iid_exponential(100000, seed);
        EiCurve c = theta_curve(series, ecdf_of(series), ZVariant::kBb);
        if (c.selected_theta >= 0.85 && c.selected_theta <= 1.15) ++ok_iid;
    }
    double dt_iid = seconds_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    int ok_pairs = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Xoshiro256pp rng(seed + 1000);
        std::vector<double> pairs(100000);
        for (std::size_t i = 0; i < pairs.size(); i += 2) {
            double v = rng.next_exponential(1.0);
            pairs[i] = v;
            if (i + 1 < pairs.size()) pairs[i + 1] = v;
        }
        EiCurve c = theta_curve(pairs, ecdf_of(pairs), ZVariant::kBb);
        if (c.selected_theta >= 0.4 && c.selected_theta <= 0.6) ++ok_pairs;
    }
    double dt_pairs = seconds_since(t1);
    bool ok = ok_iid >= 8 && ok_pairs >= 8 && dt_iid < 60.0 && dt_pairs < 60.0;
    report(8, ok, "extremal index recovery",
           "iid " + std::to_string(ok_iid) + "/10 in " + format_double(dt_iid) +
               " s, pairs " + std::to_string(ok_pairs) + "/10 in " +
               format_double(dt_pairs) + " s");
}

// ---------------------------------------------------------------- 9
void criterion_9() {
    auto t0 = std::chrono::steady_clock::now();
    BenchmarkTable table = run_benchmark({0.0, 0.5}, {0.5, 1.0, 2.0}, 50, 365, 1);
    bool finite_ok = true;
    bool failure_ok = true;
    for (const BenchmarkRow& row : table.rows) {
        if (!std::isfinite(row.mape)) finite_ok = false;
        if (static_cast<double>(row.failures) / row.replicates >= 0.10) failure_ok = false;
    }
    int emr_wins = 0;
    for (double xi : {0.5, 1.0, 2.0}) {
        double emr_mape = 0.0, hill_mape = 0.0;
        for (const BenchmarkRow& row : table.rows) {
            if (row.phi == 0.5 && row.xi == xi) {
                if (row.method == "emr_wlse") emr_mape = row.mape;
                if (row.method == "hill") hill_mape = row.mape;
            }
        }
        if (emr_mape <= hill_mape) ++emr_wins;
    }
    double dt = seconds_since(t0);
    bool ok = finite_ok && failure_ok && emr_wins >= 2 && dt < 300.0;
    report(9, ok, "benchmark MAPE ordering at phi = 0.5",
           std::string(finite_ok ? "all finite" : "non-finite MAPE") + ", " +
               std::string(failure_ok ? "failure rates < 10%" : "failure rate >= 10%") +
               ", emr<=hill for " + std::to_string(emr_wins) + "/3 xi, " +
               format_double(dt) + " s");
}

// ---------------------------------------------------------------- 10
void criterion_10() {
    // Hazen positions (i - 0.5) / N; see the ledger for why the Weibull
    // convention cannot meet the stated smith tolerance at k = 100.
    const int N = 10000, k = 100;
    bool ok = true;
    std::string detail;
    for (double xi : {0.5, 1.0, 2.0}) {
        std::vector<double> x(N);
        for (int i = 1; i <= N; ++i) x[i - 1] = std::pow(1.0 - (i - 0.5) / N, -xi);
        double h = std::fabs(hill(x, k).xi_hat - xi) / xi;
        double s = std::fabs(schultze_steinebach(x, k).xi_hat - xi) / xi;
        double sm = std::fabs(smith(x, k).xi_hat - xi) / xi;
        double ms = std::fabs(meerschaert_scheffler(x).xi_hat - xi) / xi;
        if (h > 0.10 || s > 0.10 || sm > 0.10 || ms > 0.25) ok = false;
        detail += "xi=" + format_double(xi) + ": h " + format_double(100 * h) + "% ss " +
                  format_double(100 * s) + "% sm " + format_double(100 * sm) + "% ms " +
                  format_double(100 * ms) + "%; ";
    }
    report(10, ok, "estimator sanity on analytic Pareto quantiles", detail);
}

// ---------------------------------------------------------------- 11
void criterion_11() {
    namespace fs = std::filesystem;
    const char* env = std::getenv("SSBM_DATA_DIR");
    fs::path dir = env != nullptr ? fs::path(env) : fs::path("data");

    struct Case {
        const char* file;
        const char* column;
        Transform transform;
        double xi_lo, xi_hi;
        bool check_ei;
        double sojourn_lo, sojourn_hi;
    };
    const Case cases[] = {
        {"meteorite_mass.csv", "mass", Transform::kLog, 1.35, 1.65, false, 0, 0},
        {"earthquake_energy.csv", "energy", Transform::kLog, 1.41, 1.71, true, 0.98, 1.48},
        {"greenland_snow_logloss.csv", "logloss", Transform::kLog, 0.15, 0.31, false, 0, 0},
    };
    bool any = false;
    for (const Case& c : cases) {
        fs::path path = dir / c.file;
        if (!fs::exists(path)) continue;
        any = true;
        try {
            EviOptions options;
            options.input_path = path.string();
            options.column = c.column;
            options.transform = c.transform;
            options.require_plateau = false;
            EviReport report_data = run_evi(options);
            double xi = report_data.emr_fit.xi_hat;
            bool ok = xi >= c.xi_lo && xi <= c.xi_hi;
            std::string detail = std::string(c.file) + ": xi " + format_double(xi);
            if (c.check_ei) {
                EiOptions ei_options;
                ei_options.input_path = path.string();
                ei_options.column = c.column;
                EiReport ei_report = run_ei(ei_options);
                double sj = ei_report.sojourn;
                ok = ok && sj >= c.sojourn_lo && sj <= c.sojourn_hi;
                detail += ", 1/theta " + format_double(sj);
            }
            report(11, ok, "case study reproduction", detail);
        } catch (const error& e) {
            report(11, false, "case study reproduction",
                   std::string(c.file) + " failed: " + e.what());
        }
    }
    if (!any)
        report_skip(11, "case study reproduction",
                    "no dataset files under " + dir.string() +
                        "; provide meteorite_mass.csv / earthquake_energy.csv / "
                        "greenland_snow_logloss.csv to enable");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failed == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failed);
    return 1;
}
