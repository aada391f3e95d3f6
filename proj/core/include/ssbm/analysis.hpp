#pragma once

#include "ssbm/closed_form.hpp"
#include "ssbm/distributions.hpp"
#include "ssbm/evi.hpp"
#include "ssbm/extremal_index.hpp"
#include "ssbm/io.hpp"
#include "ssbm/plateau.hpp"
#include "ssbm/simulate.hpp"
#include "ssbm/subsample.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ssbm {

inline constexpr int kReportSchemaVersion = 1;

struct IngestResult {
    std::vector<double> series;  // time-ordered
    long long rows_total = 0;
    long long rows_dropped = 0;  // unparseable target cells
};

// Parses the target column of a CSV with header. With a timestamp column
// the rows are stably re-sorted ascending by timestamp (numeric if every
// cell parses as a number, lexicographic otherwise, which orders ISO-8601
// datetimes correctly).
IngestResult ingest(const std::string& path, const std::string& column,
                    const std::string& timestamp_column = "");
IngestResult ingest_table(const CsvTable& table, const std::string& column,
                          const std::string& timestamp_column = "");

// identity | log | logloss (r_t = log(max_T y_T) - log(y_t)).
std::vector<double> apply_transform(const std::vector<double>& series, Transform kind);

struct InputInfo {
    std::string path;
    std::string column;
    std::string timestamp_column;
    Transform transform = Transform::kIdentity;
    long long rows_parsed = 0;
    long long rows_dropped = 0;
};

struct RiskOffset {
    int k;
    double level;        // extrapolated m*_n + k xi pi / sqrt(6)
    double probability;  // bm_cdf_offset(xi, n, k)
};

struct RiskEntry {
    double n;
    double mpmr;  // extrapolated mode at block size n
    std::array<RiskOffset, 3> offsets;
    std::optional<double> reserve;  // m*_n / theta when EI supplied
};

struct EviReport {
    InputInfo input;
    int grid_points = 64;
    BmCurve curve;
    PlateauRange plateau;
    EviFit mpmr_fit;
    EviFit emr_fit;
    std::optional<double> ei_theta;
    std::vector<RiskEntry> risk;
    std::string risk_omitted_reason;  // nonempty when risk could not be built
};

struct EviOptions {
    std::string input_path;
    std::string column;
    std::string timestamp_column;
    Transform transform = Transform::kIdentity;
    double delta = 0.1;
    int grid_points = 64;
    std::vector<double> n_extrapolate;  // default: {N}
    std::optional<double> ei_theta;
    bool require_plateau = true;  // monotone_no_plateau becomes an error
};

EviReport run_evi(const EviOptions& options);

struct EiOptions {
    std::string input_path;
    std::string column;
    std::string timestamp_column;
    Transform transform = Transform::kIdentity;
    std::string marginal = "ecdf";  // ecdf | exponential | gpd | gaussian
    ZVariant variant = ZVariant::kBb;
    int grid_points = 32;
};

struct EiReport {
    InputInfo input;
    std::string marginal;
    std::optional<double> marginal_param;
    EiCurve curve;
    double sojourn = 0.0;
};

EiReport run_ei(const EiOptions& options);

// Serializers. All output is deterministic byte-for-byte.
std::string to_json(const EviReport& report);
std::string to_json(const EiReport& report);
std::string to_json(const BenchmarkTable& table, long long base_seed, int length);
std::string bm_curve_to_csv(const BmCurve& curve);
BmCurve bm_curve_from_csv(const std::string& text);
std::string ei_curve_to_csv(const EiCurve& curve);
std::string benchmark_to_csv(const BenchmarkTable& table);

}  // namespace ssbm
