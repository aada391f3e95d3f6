#include "ssbm/analysis.hpp"

#include "ssbm/errors.hpp"
#include "ssbm/specfun.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

namespace ssbm {

namespace {

bool parse_double(const std::string& raw, double& out) {
    std::size_t b = raw.find_first_not_of(" \t");
    if (b == std::string::npos) return false;
    std::size_t e = raw.find_last_not_of(" \t") + 1;
    if (raw[b] == '+' && b + 1 < e) ++b;  // from_chars rejects a leading plus
    const char* first = raw.data() + b;
    const char* last = raw.data() + e;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

IngestResult ingest_table(const CsvTable& table, const std::string& column,
                          const std::string& timestamp_column) {
    std::size_t col;
    std::size_t ts_col = 0;
    const bool has_ts = !timestamp_column.empty();
    try {
        col = table.column(column);
        if (has_ts) ts_col = table.column(timestamp_column);
    } catch (const domain_error& e) {
        throw domain_error(std::string("ingest: ") + e.what());
    }

    IngestResult result;
    result.rows_total = static_cast<long long>(table.rows.size());
    std::vector<std::string> ts_keys;
    for (const auto& row : table.rows) {
        double v;
        if (col >= row.size() || !parse_double(row[col], v)) {
            ++result.rows_dropped;
            continue;
        }
        if (has_ts) {
            if (ts_col >= row.size() ||
                row[ts_col].find_first_not_of(" \t") == std::string::npos)
                throw domain_error("ingest: timestamps cannot be ordered (empty cell)");
            ts_keys.push_back(row[ts_col]);
        }
        result.series.push_back(v);
    }
    if (result.series.empty()) throw domain_error("ingest: empty series");

    if (has_ts) {
        std::vector<double> numeric(ts_keys.size());
        bool all_numeric = true;
        for (std::size_t i = 0; i < ts_keys.size() && all_numeric; ++i)
            all_numeric = parse_double(ts_keys[i], numeric[i]);

        std::vector<std::size_t> order(ts_keys.size());
        std::iota(order.begin(), order.end(), 0);
        if (all_numeric) {
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return numeric[a] < numeric[b]; });
        } else {
            // Lexicographic order; ISO-8601 timestamps sort correctly.
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return ts_keys[a] < ts_keys[b]; });
        }
        std::vector<double> sorted(result.series.size());
        for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = result.series[order[i]];
        result.series = std::move(sorted);
    }
    return result;
}

IngestResult ingest(const std::string& path, const std::string& column,
                    const std::string& timestamp_column) {
    CsvTable table;
    try {
        table = read_csv_file(path);
    } catch (const domain_error& e) {
        throw domain_error(std::string("ingest: ") + e.what());
    }
    return ingest_table(table, column, timestamp_column);
}

std::vector<double> apply_transform(const std::vector<double>& series, Transform kind) {
    std::vector<double> out(series.size());
    switch (kind) {
        case Transform::kIdentity:
            out = series;
            break;
        case Transform::kLog:
            for (std::size_t i = 0; i < series.size(); ++i) {
                if (!(series[i] > 0.0))
                    throw domain_error("transform: log requires strictly positive values");
                out[i] = std::log(series[i]);
            }
            break;
        case Transform::kLogLoss: {
            double mx = -std::numeric_limits<double>::infinity();
            for (double v : series) {
                if (!(v > 0.0))
                    throw domain_error("transform: logloss requires strictly positive values");
                mx = std::max(mx, v);
            }
            const double log_mx = std::log(mx);
            for (std::size_t i = 0; i < series.size(); ++i)
                out[i] = log_mx - std::log(series[i]);
            break;
        }
    }
    return out;
}

EviReport run_evi(const EviOptions& options) {
    EviReport report;
    IngestResult in = ingest(options.input_path, options.column, options.timestamp_column);
    report.input = InputInfo{options.input_path,   options.column,
                             options.timestamp_column, options.transform,
                             in.rows_total,        in.rows_dropped};
    report.grid_points = options.grid_points;

    std::vector<double> transformed = apply_transform(in.series, options.transform);
    SortedSample sample = make_sorted_sample(std::move(transformed), options.transform);
    const double N = static_cast<double>(sample.values.size());

    report.curve = bm_curve(sample, options.grid_points);
    SdSpline spline = fit_sd_spline(report.curve);
    const double n0 = std::clamp(std::sqrt(N), report.curve.n.front(), report.curve.n.back());
    report.plateau = find_plateau(spline, options.delta, n0);
    if (options.require_plateau &&
        report.plateau.diagnostic == PlateauDiagnostic::kMonotoneNoPlateau)
        throw numerical_error(
            "plateau: monotone_no_plateau — the BM standard deviation decreases without "
            "flattening, so no WLSE range is defined for this sample");

    report.mpmr_fit = wlse_mpmr(report.curve, report.plateau);
    report.emr_fit = wlse_emr(report.curve, report.plateau);
    report.ei_theta = options.ei_theta;
    if (options.ei_theta && !(*options.ei_theta > 0.0 && *options.ei_theta <= 1.0))
        throw domain_error("risk: --ei-theta must lie in (0, 1]");

    std::vector<double> ns = options.n_extrapolate;
    if (ns.empty()) ns.push_back(N);
    const double xi = report.mpmr_fit.xi_hat;
    if (!(xi > 0.0)) {
        report.risk_omitted_reason =
            "mpmr_wlse slope is not positive; log-n extrapolation does not apply";
        return report;
    }
    const double offset_unit = xi * specfun::kPi / std::sqrt(6.0);
    for (double n : ns) {
        if (!(n > 1.0)) throw domain_error("risk: extrapolation block sizes must exceed 1");
        RiskEntry entry;
        entry.n = n;
        entry.mpmr = report.mpmr_fit.intercept + xi * std::log(n);
        for (int k = 0; k <= 2; ++k)
            entry.offsets[static_cast<std::size_t>(k)] =
                RiskOffset{k, entry.mpmr + k * offset_unit, bm_cdf_offset(xi, n, k)};
        if (options.ei_theta) entry.reserve = entry.mpmr / *options.ei_theta;
        report.risk.push_back(entry);
    }
    return report;
}

EiReport run_ei(const EiOptions& options) {
    EiReport report;
    IngestResult in = ingest(options.input_path, options.column, options.timestamp_column);
    report.input = InputInfo{options.input_path,   options.column,
                             options.timestamp_column, options.transform,
                             in.rows_total,        in.rows_dropped};

    std::vector<double> series = apply_transform(in.series, options.transform);
    const auto len = static_cast<int>(series.size());
    if (len < 16) throw domain_error("ei: series too short (need at least 16 observations)");

    std::vector<double> sorted(series);
    std::sort(sorted.begin(), sorted.end());

    Marginal marginal{EmpiricalCdf({0.0, 1.0})};  // replaced below
    report.marginal = options.marginal;
    if (options.marginal == "ecdf") {
        marginal = EmpiricalCdf(sorted);
    } else {
        Family family = family_from_name(options.marginal);
        MarginalFit fit = fit_marginal(sorted, {family});
        marginal = fit.selected;
        report.marginal_param = fit.selected.param;
    }

    report.curve = theta_curve(series, marginal,
                               geometric_grid(4, len / 4, options.grid_points), options.variant);
    report.sojourn = sojourn_time(report.curve.selected_theta);
    return report;
}

namespace {

void write_input(JsonWriter& w, const InputInfo& input) {
    w.key("input").begin_object();
    w.key("path").value(input.path);
    w.key("column").value(input.column);
    if (input.timestamp_column.empty())
        w.key("timestamp_column").null_value();
    else
        w.key("timestamp_column").value(input.timestamp_column);
    w.key("transform").value(transform_name(input.transform));
    w.key("rows_parsed").value(static_cast<long long>(input.rows_parsed));
    w.key("rows_dropped").value(static_cast<long long>(input.rows_dropped));
    w.end_object();
}

void write_fit(JsonWriter& w, const EviFit& fit) {
    w.begin_object();
    w.key("method").value(evi_method_name(fit.method));
    w.key("xi_hat").value(fit.xi_hat);
    w.key("intercept").value(fit.intercept);
    w.key("n_min").value(fit.n_min);
    w.key("n_max").value(fit.n_max);
    w.key("points_used").value(fit.points_used);
    w.key("weighted_r2").value(fit.weighted_r2);
    w.end_object();
}

}  // namespace

std::string to_json(const EviReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kReportSchemaVersion);
    w.key("command").value("evi");
    write_input(w, report.input);
    w.key("grid").begin_object();
    w.key("kind").value("geometric");
    w.key("points").value(report.grid_points);
    w.end_object();
    w.key("bm_curve").begin_array();
    for (std::size_t i = 0; i < report.curve.size(); ++i) {
        w.begin_object();
        w.key("n").value(report.curve.n[i]);
        w.key("emr").value(report.curve.emr[i]);
        w.key("mpmr").value(report.curve.mpmr[i]);
        w.key("sd").value(report.curve.sd[i]);
        w.end_object();
    }
    w.end_array();
    w.key("plateau").begin_object();
    w.key("n_star").value(report.plateau.n_star);
    w.key("n_min").value(report.plateau.n_min);
    w.key("n_max").value(report.plateau.n_max);
    w.key("delta").value(report.plateau.delta);
    w.key("diagnostic").value(plateau_diagnostic_name(report.plateau.diagnostic));
    w.end_object();
    w.key("evi").begin_object();
    w.key("headline").value("emr_wlse");
    w.key("emr_wlse");
    write_fit(w, report.emr_fit);
    w.key("mpmr_wlse");
    write_fit(w, report.mpmr_fit);
    w.end_object();
    if (report.ei_theta)
        w.key("ei_theta").value(*report.ei_theta);
    else
        w.key("ei_theta").null_value();
    if (!report.risk_omitted_reason.empty()) {
        w.key("risk_omitted_reason").value(report.risk_omitted_reason);
    }
    w.key("risk").begin_array();
    for (const RiskEntry& entry : report.risk) {
        w.begin_object();
        w.key("n").value(entry.n);
        w.key("mpmr").value(entry.mpmr);
        w.key("offsets").begin_array();
        for (const RiskOffset& off : entry.offsets) {
            w.begin_object();
            w.key("k").value(off.k);
            w.key("level").value(off.level);
            w.key("probability").value(off.probability);
            w.end_object();
        }
        w.end_array();
        if (entry.reserve)
            w.key("reserve").value(*entry.reserve);
        else
            w.key("reserve").null_value();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

std::string to_json(const EiReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kReportSchemaVersion);
    w.key("command").value("ei");
    write_input(w, report.input);
    w.key("marginal").begin_object();
    w.key("kind").value(report.marginal);
    if (report.marginal_param)
        w.key("param").value(*report.marginal_param);
    else
        w.key("param").null_value();
    w.end_object();
    w.key("variant").value(z_variant_name(report.curve.variant));
    w.key("ei_curve").begin_array();
    for (std::size_t i = 0; i < report.curve.n.size(); ++i) {
        w.begin_object();
        w.key("n").value(report.curve.n[i]);
        w.key("theta_hat").value(report.curve.theta_hat[i]);
        w.key("z_sd").value(report.curve.z_sd[i]);
        w.end_object();
    }
    w.end_array();
    w.key("selected").begin_object();
    w.key("n").value(report.curve.selected_n);
    w.key("theta").value(report.curve.selected_theta);
    w.key("theta_raw").value(report.curve.selected_theta_raw);
    w.key("clamped").value(report.curve.clamped);
    w.key("sojourn").value(report.sojourn);
    w.end_object();
    w.end_object();
    return w.str() + "\n";
}

std::string to_json(const BenchmarkTable& table, long long base_seed, int length) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kReportSchemaVersion);
    w.key("command").value("simulate");
    w.key("base_seed").value(base_seed);
    w.key("length").value(length);
    w.key("rows").begin_array();
    for (const BenchmarkRow& row : table.rows) {
        w.begin_object();
        w.key("phi").value(row.phi);
        w.key("xi").value(row.xi);
        w.key("method").value(row.method);
        w.key("mape").value(row.mape);
        w.key("failures").value(row.failures);
        w.key("replicates").value(row.replicates);
        w.key("k").value(row.k);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

std::string bm_curve_to_csv(const BmCurve& curve) {
    std::string out = "n,emr,mpmr,sd\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out += format_double(curve.n[i]) + ',' + format_double(curve.emr[i]) + ',' +
               format_double(curve.mpmr[i]) + ',' + format_double(curve.sd[i]) + '\n';
    }
    return out;
}

BmCurve bm_curve_from_csv(const std::string& text) {
    CsvTable table = read_csv_string(text);
    const std::size_t cn = table.column("n");
    const std::size_t ce = table.column("emr");
    const std::size_t cm = table.column("mpmr");
    const std::size_t cs = table.column("sd");
    BmCurve curve;
    for (const auto& row : table.rows) {
        double n, e, m, s;
        if (!parse_double(row[cn], n) || !parse_double(row[ce], e) ||
            !parse_double(row[cm], m) || !parse_double(row[cs], s))
            throw domain_error("bm_curve_from_csv: unparseable row");
        curve.n.push_back(n);
        curve.emr.push_back(e);
        curve.mpmr.push_back(m);
        curve.sd.push_back(s);
    }
    return curve;
}

std::string ei_curve_to_csv(const EiCurve& curve) {
    std::string out = "n,theta_hat,z_sd\n";
    for (std::size_t i = 0; i < curve.n.size(); ++i) {
        out += format_double(curve.n[i]) + ',' + format_double(curve.theta_hat[i]) + ',' +
               format_double(curve.z_sd[i]) + '\n';
    }
    return out;
}

std::string benchmark_to_csv(const BenchmarkTable& table) {
    std::string out = "phi,xi,method,mape,failures,replicates,k\n";
    for (const BenchmarkRow& row : table.rows) {
        out += format_double(row.phi) + ',' + format_double(row.xi) + ',' + row.method + ',' +
               format_double(row.mape) + ',' + std::to_string(row.failures) + ',' +
               std::to_string(row.replicates) + ',' + std::to_string(row.k) + '\n';
    }
    return out;
}

}  // namespace ssbm
