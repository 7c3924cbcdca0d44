#pragma once

#include "cospa/metrics.hpp"
#include "cospa/scenarios.hpp"
#include "cospa/tables.hpp"
#include "cospa/trackio.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cospa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitTableMismatch = 2;

/// Everything the three subcommands read from the command line.
struct CliConfig {
    std::string subcommand;
    std::string p = "1";
    std::string pnorm = "2";
    double c = 80.0;
    double c_dot = 81.0;
    double xi = 1.0;
    double alpha = 2.0;
    std::string metrics = "ospa,gospa,cospa";
    std::string truth;
    std::string estimate;
    std::string out = "-";
    std::string format = "csv";
    int figure = 0;
    bool eval = false;
    SimConfig sim;
};

inline double parse_order(const std::string& s, const char* flag) {
    if (s == "inf" || s == "infinity") return kInfinity;
    double v = 0.0;
    if (!detail::parse_double(detail::trim(s), v)) {
        throw std::invalid_argument(std::string(flag) + " expects a number or 'inf', got '" + s + "'");
    }
    return v;
}

inline MetricParams params_from(const CliConfig& cfg) {
    RawParams raw;
    raw.p = parse_order(cfg.p, "--p");
    raw.base_norm = parse_order(cfg.pnorm, "--pnorm");
    raw.c = cfg.c;
    raw.c_dot = cfg.c_dot;
    raw.xi = cfg.xi;
    raw.alpha = cfg.alpha;
    return validate_params(raw);
}

inline std::set<Metric> metrics_from(const std::string& list) {
    std::set<Metric> out;
    for (auto name : detail::split_commas(list)) {
        if (!name.empty()) out.insert(parse_metric(name));
    }
    if (out.empty()) throw std::invalid_argument("--metrics selects no metric");
    return out;
}

inline TrackSeries load_tracks(const std::string& path, Format format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TrackIoError("cannot open '" + path + "'");
    try {
        return read_tracks(in, format);
    } catch (const TrackIoError& e) {
        throw TrackIoError(path + ": " + e.what());
    }
}

/// Runs `write` against the file at `path`, or against `stdout_stream` for "-".
template <typename Write>
void with_output(const std::string& path, std::ostream& stdout_stream, Write&& write) {
    if (path == "-" || path.empty()) {
        write(stdout_stream);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw TrackIoError("cannot open '" + path + "' for writing");
    try {
        write(file);
    } catch (const TrackIoError& e) {
        throw TrackIoError(path + ": " + e.what());
    }
}

inline int cmd_eval(const CliConfig& cfg, std::ostream& out) {
    const MetricParams params = params_from(cfg);
    const auto which = metrics_from(cfg.metrics);
    const Format format = parse_format(cfg.format);
    const TrackSeries truth = load_tracks(cfg.truth, format);
    const TrackSeries estimate = load_tracks(cfg.estimate, format);
    const auto steps = eval_series(truth.points(), estimate.points(), params, which);
    with_output(cfg.out, out, [&](std::ostream& os) { write_results(steps, os, format); });
    return kExitOk;
}

inline int cmd_tables(const CliConfig& cfg, std::ostream& out) {
    if (parse_order(cfg.p, "--p") != 1.0 || cfg.xi != 1.0) {
        throw std::invalid_argument("the analytic tables are closed forms at --p 1 --xi 1");
    }
    const MetricParams params = params_from(cfg);
    std::vector<TableCell> cells;
    if (cfg.figure == 0) {
        cells = verify_tables(params);
    } else {
        cells = verify_figure(cfg.figure, params);
    }
    std::size_t failed = 0;
    out << "figure,metric,subject,setting,computed,expected,status\n";
    for (const auto& cell : cells) {
        out << cell.figure << ',' << cell.metric << ',' << cell.subject << ',' << cell.setting << ','
            << cell.computed << ',' << cell.expected << ',' << (cell.pass ? "pass" : "FAIL") << '\n';
        if (!cell.pass) ++failed;
    }
    out << "# " << cells.size() - failed << "/" << cells.size() << " cells pass\n";
    out.flush();
    return failed == 0 ? kExitOk : kExitTableMismatch;
}

inline int cmd_simulate(const CliConfig& cfg, std::ostream& out) {
    // Validate everything before writing anything.
    const MetricParams params = params_from(cfg);
    const auto which = metrics_from(cfg.metrics);
    const Format format = parse_format(cfg.format);
    validate(cfg.sim);
    if (cfg.truth.empty() || cfg.estimate.empty()) throw std::invalid_argument("--truth and --est output paths are required");

    const SimulatedTracks sim = simulate_tracks(cfg.sim);
    const TrackSeries truth = make_track_series(sim.truth, sim.truth_ids);
    const TrackSeries estimate = make_track_series(sim.estimate, sim.estimate_ids);
    with_output(cfg.truth, out, [&](std::ostream& os) { write_tracks(truth, os, format); });
    with_output(cfg.estimate, out, [&](std::ostream& os) { write_tracks(estimate, os, format); });
    if (cfg.eval) {
        const auto steps = eval_series(sim.truth, sim.estimate, params, which);
        with_output(cfg.out, out, [&](std::ostream& os) { write_results(steps, os, format); });
    }
    return kExitOk;
}

inline void add_metric_flags(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--p", cfg.p, "Order p (number >= 1 or 'inf')")->capture_default_str();
    cmd->add_option("--pnorm", cfg.pnorm, "Base norm order p' (number >= 1 or 'inf')")->capture_default_str();
    cmd->add_option("--c", cfg.c, "Cut-off c > 0")->capture_default_str();
    cmd->add_option("--cdot", cfg.c_dot, "Cardinality penalty c_dot >= c")->capture_default_str();
    cmd->add_option("--xi", cfg.xi, "Empty-set weight in [0, 1]")->capture_default_str();
    cmd->add_option("--alpha", cfg.alpha, "GOSPA alpha in (0, 2]")->capture_default_str();
    cmd->add_option("--metrics", cfg.metrics, "Comma list of ospa, gospa, cospa")->capture_default_str();
    cmd->add_option("--format", cfg.format, "csv or json")->capture_default_str();
}

/// Entry point shared by the executable and the tests. Diagnostics go to
/// `err` as a single line.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"OSPA / GOSPA / COSPA distances between multi-target state sets", "cospa"};
    app.require_subcommand(1);

    auto* eval = app.add_subcommand("eval", "Per-step distances between truth and estimate track files");
    add_metric_flags(eval, cfg);
    eval->add_option("--truth", cfg.truth, "Truth track file")->required();
    eval->add_option("--est", cfg.estimate, "Estimate track file")->required();
    eval->add_option("--out", cfg.out, "Results file, '-' for stdout")->capture_default_str();

    auto* tables = app.add_subcommand("tables", "Check every analytic scenario against its closed form");
    tables->add_option("--c", cfg.c, "Cut-off c");
    tables->add_option("--cdot", cfg.c_dot, "Cardinality penalty c_dot");
    tables->add_option("--alpha", cfg.alpha, "GOSPA alpha");
    tables->add_option("--p", cfg.p, "Order (the tables require 1)");
    tables->add_option("--xi", cfg.xi, "Empty-set weight (the tables require 1)");
    tables->add_option("--figure", cfg.figure, "Only this figure (2-7); 0 for all")
        ->check(CLI::IsMember({0, 2, 3, 4, 5, 6, 7}));
    tables->preparse_callback([&cfg](std::size_t) {
        cfg.c = 1.0;
        cfg.c_dot = 1.2;
    });

    auto* simulate = app.add_subcommand("simulate", "Generate synthetic truth and estimate tracks");
    add_metric_flags(simulate, cfg);
    simulate->add_option("--truth", cfg.truth, "Truth track output file")->required();
    simulate->add_option("--est", cfg.estimate, "Estimate track output file")->required();
    simulate->add_option("--out", cfg.out, "Results file with --eval, '-' for stdout")->capture_default_str();
    simulate->add_option("--seed", cfg.sim.seed, "PRNG seed")->capture_default_str();
    simulate->add_option("--targets", cfg.sim.num_targets, "Number of targets")->capture_default_str();
    simulate->add_option("--steps", cfg.sim.num_steps, "Number of time steps")->capture_default_str();
    simulate->add_option("--survival", cfg.sim.survival_prob, "Per-step survival probability")->capture_default_str();
    simulate->add_option("--detection", cfg.sim.detection_prob, "Per-step detection probability")->capture_default_str();
    simulate->add_option("--clutter", cfg.sim.clutter_rate, "Mean false tracks per step")->capture_default_str();
    simulate->add_option("--noise", cfg.sim.noise_std, "Estimate position noise std")->capture_default_str();
    simulate->add_flag("--eval", cfg.eval, "Also write the per-step results");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (eval->parsed()) return cmd_eval(cfg, out);
        if (tables->parsed()) return cmd_tables(cfg, out);
        return cmd_simulate(cfg, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace cospa::cli
