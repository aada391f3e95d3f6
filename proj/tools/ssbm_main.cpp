// Command-line front end: evi / ei / simulate / closed-form subcommands.
// Exit codes: 0 ok, 2 input error, 3 numerical or diagnostic error,
// 4 internal error.

#include "ssbm/analysis.hpp"
#include "ssbm/closed_form.hpp"
#include "ssbm/errors.hpp"
#include "ssbm/io.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

std::vector<double> parse_list(const std::string& csv, const std::string& flag) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t next = csv.find(',', pos);
        std::string tok = csv.substr(pos, next == std::string::npos ? next : next - pos);
        if (!tok.empty()) {
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw ssbm::domain_error(flag + ": cannot parse '" + tok + "'");
            }
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.empty()) throw ssbm::domain_error(flag + ": empty list");
    return out;
}

int parse_grid(const std::string& grid_spec, const std::string& flag) {
    const std::string prefix = "geometric:";
    if (grid_spec.rfind(prefix, 0) != 0)
        throw ssbm::domain_error(flag + ": expected geometric:<points>");
    int points = 0;
    try {
        points = std::stoi(grid_spec.substr(prefix.size()));
    } catch (const std::exception&) {
        throw ssbm::domain_error(flag + ": cannot parse point count");
    }
    if (points < 4) throw ssbm::domain_error(flag + ": need at least 4 grid points");
    return points;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ssbm::domain_error("cannot write '" + path + "'");
    out << content;
}

int emit_error(int code, const std::string& message) {
    ssbm::JsonWriter w;
    w.begin_object();
    w.key("schema").value(ssbm::kReportSchemaVersion);
    w.key("error").begin_object();
    w.key("exit_code").value(code);
    w.key("message").value(message);
    w.end_object();
    w.end_object();
    std::cout << w.str() << "\n";
    return code;
}

struct EviFlags {
    ssbm::EviOptions options;
    std::string transform = "identity";
    std::string grid = "geometric:64";
    std::string n_extrapolate;
    double ei_theta = -1.0;
    bool has_ei_theta = false;
    std::string output = "json";
    std::string output_dir = ".";
};

struct EiFlags {
    ssbm::EiOptions options;
    std::string transform = "identity";
    std::string variant = "bb";
    std::string grid = "geometric:32";
    std::string output = "json";
    std::string output_dir = ".";
};

struct SimulateFlags {
    std::string phi = "0";
    std::string xi = "1";
    int length = 365;
    int replicates = 50;
    std::uint64_t seed = 0;
    int k = 0;  // 0 = floor(sqrt(length))
    std::string output = "csv";
};

struct ClosedFormFlags {
    std::string model;
    double param = 0.0;
    double n = 0.0;
    std::string what;
};

int run_evi_command(EviFlags& flags) {
    flags.options.transform = ssbm::transform_from_name(flags.transform);
    flags.options.grid_points = parse_grid(flags.grid, "--grid");
    if (!flags.n_extrapolate.empty())
        flags.options.n_extrapolate = parse_list(flags.n_extrapolate, "--n-extrapolate");
    if (flags.has_ei_theta) flags.options.ei_theta = flags.ei_theta;

    ssbm::EviReport report = ssbm::run_evi(flags.options);
    std::string json = ssbm::to_json(report);
    if (flags.output == "json") {
        std::cout << json;
    } else if (flags.output == "csv-dir") {
        namespace fs = std::filesystem;
        fs::create_directories(flags.output_dir);
        const std::string report_path = (fs::path(flags.output_dir) / "report.json").string();
        const std::string curve_path = (fs::path(flags.output_dir) / "bm_curve.csv").string();
        write_file(report_path, json);
        write_file(curve_path, ssbm::bm_curve_to_csv(report.curve));
        std::cerr << "wrote " << report_path << " and " << curve_path << "\n";
    } else {
        throw ssbm::domain_error("--output: expected json or csv-dir");
    }
    return 0;
}

int run_ei_command(EiFlags& flags) {
    flags.options.transform = ssbm::transform_from_name(flags.transform);
    flags.options.variant = ssbm::z_variant_from_name(flags.variant);
    flags.options.grid_points = parse_grid(flags.grid, "--grid");

    ssbm::EiReport report = ssbm::run_ei(flags.options);
    std::string json = ssbm::to_json(report);
    if (flags.output == "json") {
        std::cout << json;
    } else if (flags.output == "csv-dir") {
        namespace fs = std::filesystem;
        fs::create_directories(flags.output_dir);
        const std::string report_path = (fs::path(flags.output_dir) / "report.json").string();
        const std::string curve_path = (fs::path(flags.output_dir) / "ei_curve.csv").string();
        write_file(report_path, json);
        write_file(curve_path, ssbm::ei_curve_to_csv(report.curve));
        std::cerr << "wrote " << report_path << " and " << curve_path << "\n";
    } else {
        throw ssbm::domain_error("--output: expected json or csv-dir");
    }
    return 0;
}

int run_simulate_command(const SimulateFlags& flags) {
    std::vector<double> phis = parse_list(flags.phi, "--phi");
    std::vector<double> xis = parse_list(flags.xi, "--xi");
    ssbm::BenchmarkTable table =
        ssbm::run_benchmark(phis, xis, flags.replicates, flags.length, flags.seed, flags.k);
    if (flags.output == "csv") {
        std::cout << ssbm::benchmark_to_csv(table);
    } else if (flags.output == "json") {
        std::cout << ssbm::to_json(table, static_cast<long long>(flags.seed), flags.length);
    } else {
        throw ssbm::domain_error("--output: expected csv or json");
    }
    return 0;
}

int run_closed_form_command(const ClosedFormFlags& flags) {
    ssbm::TailModel model =
        ssbm::make_model(ssbm::family_from_name(flags.model), flags.param);
    ssbm::BmLaw law = ssbm::make_bm_law(model, flags.n);

    double value = 0.0;
    if (flags.what == "mpmr") {
        value = ssbm::mpmr_exact(law);
    } else if (flags.what == "mpmr-asymptotic") {
        value = ssbm::mpmr_asymptotic(law);
    } else if (flags.what == "emr") {
        value = ssbm::emr(law);
    } else if (flags.what == "variance") {
        value = ssbm::bm_variance(law);
    } else if (flags.what.rfind("cdf-offset:", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(flags.what.substr(11));
        } catch (const std::exception&) {
            throw ssbm::domain_error("--what: cannot parse offset index in cdf-offset:<k>");
        }
        value = ssbm::bm_cdf_offset(flags.param, flags.n, k);
    } else if (flags.what == "kld-mx") {
        value = ssbm::kld(flags.n, ssbm::KldDirection::kMToX);
    } else if (flags.what == "kld-xm") {
        value = ssbm::kld(flags.n, ssbm::KldDirection::kXToM);
    } else {
        throw ssbm::domain_error("--what: unknown quantity '" + flags.what + "'");
    }

    ssbm::JsonWriter w;
    w.begin_object();
    w.key("schema").value(ssbm::kReportSchemaVersion);
    w.key("command").value("closed-form");
    w.key("model").value(flags.model);
    w.key("param").value(flags.param);
    w.key("n").value(flags.n);
    w.key("what").value(flags.what);
    w.key("value").value(value);
    w.end_object();
    std::cout << w.str() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sub-sampling block maxima extreme risk modeling"};
    app.require_subcommand(1);

    EviFlags evi;
    CLI::App* cmd_evi = app.add_subcommand("evi", "Estimate the extreme value index by WLSE");
    cmd_evi->add_option("--input", evi.options.input_path, "Input CSV path")->required();
    cmd_evi->add_option("--column", evi.options.column, "Target column name")->required();
    cmd_evi->add_option("--timestamp", evi.options.timestamp_column, "Timestamp column name");
    cmd_evi->add_option("--transform", evi.transform, "identity|log|logloss");
    cmd_evi->add_option("--delta", evi.options.delta, "Plateau tolerance");
    cmd_evi->add_option("--grid", evi.grid, "geometric:<points>");
    cmd_evi->add_option("--n-extrapolate", evi.n_extrapolate,
                        "Comma-separated block sizes for risk extrapolation");
    cmd_evi->add_option("--ei-theta", evi.ei_theta, "Extremal index for the reserve m*/theta")
        ->check(CLI::Range(0.0, 1.0));
    cmd_evi->add_option("--output", evi.output, "json|csv-dir");
    cmd_evi->add_option("--output-dir", evi.output_dir, "Directory for csv-dir output");

    EiFlags ei;
    CLI::App* cmd_ei = app.add_subcommand("ei", "Estimate the extremal index");
    cmd_ei->add_option("--input", ei.options.input_path, "Input CSV path")->required();
    cmd_ei->add_option("--column", ei.options.column, "Target column name")->required();
    cmd_ei->add_option("--timestamp", ei.options.timestamp_column, "Timestamp column name");
    cmd_ei->add_option("--transform", ei.transform, "identity|log|logloss");
    cmd_ei->add_option("--marginal", ei.options.marginal, "ecdf|exponential|gpd|gaussian");
    cmd_ei->add_option("--variant", ei.variant, "bb|northrop");
    cmd_ei->add_option("--grid", ei.grid, "geometric:<points>");
    cmd_ei->add_option("--output", ei.output, "json|csv-dir");
    cmd_ei->add_option("--output-dir", ei.output_dir, "Directory for csv-dir output");

    SimulateFlags sim;
    CLI::App* cmd_sim = app.add_subcommand("simulate", "Run the MAPE estimator benchmark");
    cmd_sim->add_option("--phi", sim.phi, "Comma-separated AR(1) coefficients");
    cmd_sim->add_option("--xi", sim.xi, "Comma-separated theoretical EVI values");
    cmd_sim->add_option("--length", sim.length, "Series length per replicate");
    cmd_sim->add_option("--replicates", sim.replicates, "Replicates per grid point");
    cmd_sim->add_option("--seed", sim.seed, "Base seed (64-bit)");
    cmd_sim->add_option("--k", sim.k,
                        "Upper order statistics for hill/ss/smith (0 = sqrt(length))");
    cmd_sim->add_option("--output", sim.output, "csv|json");

    ClosedFormFlags cf;
    CLI::App* cmd_cf = app.add_subcommand("closed-form", "Evaluate closed-form BM statistics");
    cmd_cf->add_option("--model", cf.model, "gaussian|halfnormal|pareto|exponential")
        ->required();
    cmd_cf->add_option("--param", cf.param, "sigma or xi")->required();
    cmd_cf->add_option("--n", cf.n, "Block size (real-valued; inf allowed for cdf-offset)")
        ->required();
    cmd_cf->add_option("--what", cf.what,
                       "mpmr|mpmr-asymptotic|emr|variance|cdf-offset:<k>|kld-mx|kld-xm")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_evi->parsed()) {
            evi.has_ei_theta = cmd_evi->count("--ei-theta") > 0;
            return run_evi_command(evi);
        }
        if (cmd_ei->parsed()) return run_ei_command(ei);
        if (cmd_sim->parsed()) return run_simulate_command(sim);
        if (cmd_cf->parsed()) return run_closed_form_command(cf);
    } catch (const ssbm::numerical_error& e) {
        return emit_error(3, e.what());
    } catch (const ssbm::domain_error& e) {
        return emit_error(2, e.what());
    } catch (const ssbm::error& e) {
        return emit_error(4, e.what());
    } catch (const std::exception& e) {
        return emit_error(4, e.what());
    }
    return 4;
}
