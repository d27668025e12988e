// tuav: run tethered-UAV scenarios and export telemetry.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tuav/config.hpp"
#include "tuav/error.hpp"
#include "tuav/metrics.hpp"
#include "tuav/sim_engine.hpp"
#include "tuav/telemetry.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kUnexpected = 1,
    kConfig = 2,
    kNumerical = 3,
    kGeometry = 4,
    kIo = 5,
};

int exit_code_for(tuav::ErrorKind kind) {
    using tuav::ErrorKind;
    switch (kind) {
    case ErrorKind::config:
    case ErrorKind::domain:
        return kConfig;
    case ErrorKind::numerical_blowup:
    case ErrorKind::singularity:
    case ErrorKind::convergence:
        return kNumerical;
    case ErrorKind::infeasible_slack:
    case ErrorKind::over_length:
    case ErrorKind::degenerate_geometry:
        return kGeometry;
    case ErrorKind::io:
        return kIo;
    }
    return kUnexpected;
}

std::string default_output_dir() {
    if (const char* env = std::getenv("TUAV_OUT"); env != nullptr && *env != '\0') {
        return env;
    }
    return "tuav_out";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw tuav::Error(tuav::ErrorKind::io, "cannot read config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct RunOptions {
    std::string config_path;
    std::string scenario;
    std::string out_dir;
    std::size_t frame_stride = 100;
    int tether_samples = 50;
    bool csv = true;
    bool frames = true;
    bool metrics = true;
};

int run_command(const RunOptions& opts) {
    std::string text;
    if (!opts.scenario.empty()) {
        text += "scenario = " + opts.scenario + "\n";
    }
    if (!opts.config_path.empty()) {
        text += read_file(opts.config_path);
    }
    const tuav::SimConfig config = tuav::parse_config_text(text);

    const std::string out_dir = opts.out_dir.empty() ? default_output_dir() : opts.out_dir;
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw tuav::Error(tuav::ErrorKind::io, "cannot create output directory '" + out_dir +
                                                   "': " + ec.message());
    }
    const std::filesystem::path dir(out_dir);

    const tuav::SimLog log = tuav::run_closed_loop(config);
    if (opts.csv) {
        tuav::export_csv(log, (dir / "telemetry.csv").string());
    }
    if (opts.frames && !log.rows.empty()) {
        tuav::export_frames(log, (dir / "frames.jsonl").string(), opts.frame_stride,
                            opts.tether_samples, config.synchronized().material);
    }
    if (opts.metrics && !log.rows.empty()) {
        const tuav::Metrics m = tuav::compute_metrics(log);
        tuav::write_text_file((dir / "metrics.json").string(),
                              tuav::metrics_json(m, log, config.scenario));
    }

    std::cout << "scenario " << config.scenario << ": " << log.rows.size() << " rows written to "
              << out_dir << "\n";
    if (log.failure) {
        std::cerr << "run stopped at t = " << log.failure->t << " ("
                  << tuav::to_string(log.failure->kind) << "): " << log.failure->message << "\n";
        return exit_code_for(log.failure->kind);
    }
    return kOk;
}

int metrics_command(const std::string& csv_path, const std::string& out_path) {
    const tuav::SimLog log = tuav::log_from_csv(tuav::read_csv(csv_path));
    if (log.rows.empty()) {
        throw tuav::Error(tuav::ErrorKind::io, "telemetry '" + csv_path + "' has no rows");
    }
    const std::string json = tuav::metrics_json(tuav::compute_metrics(log), log, csv_path);
    if (out_path.empty()) {
        std::cout << json;
    } else {
        tuav::write_text_file(out_path, json);
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tethered UAV simulator: closed-loop runs, telemetry and metrics"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run = app.add_subcommand("run", "Simulate a scenario and export telemetry");
    run->add_option("--config,-c", run_opts.config_path, "key = value configuration file");
    run->add_option("--scenario,-s", run_opts.scenario,
                    "built-in base scenario (overridden by --config keys)");
    run->add_option("--out,-o", run_opts.out_dir,
                    "output directory (default: $TUAV_OUT or ./tuav_out)");
    run->add_option("--frame-stride", run_opts.frame_stride, "rows between animation frames")
        ->check(CLI::PositiveNumber);
    run->add_option("--tether-samples", run_opts.tether_samples, "points per tether polyline")
        ->check(CLI::Range(2, 100000));
    run->add_flag("!--no-csv", run_opts.csv, "skip telemetry.csv");
    run->add_flag("!--no-frames", run_opts.frames, "skip frames.jsonl");
    run->add_flag("!--no-metrics", run_opts.metrics, "skip metrics.json");

    std::string log_path;
    std::string metrics_out;
    auto* metrics = app.add_subcommand("metrics", "Compute metrics from a telemetry CSV");
    metrics->add_option("--log,-l", log_path, "telemetry CSV written by `run`")->required();
    metrics->add_option("--out,-o", metrics_out, "write JSON here instead of stdout");

    auto* scenarios = app.add_subcommand("scenarios", "List built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kConfig;
    }

    try {
        if (run->parsed()) {
            return run_command(run_opts);
        }
        if (metrics->parsed()) {
            return metrics_command(log_path, metrics_out);
        }
        if (scenarios->parsed()) {
            for (const auto& name : tuav::builtin_scenario_names()) {
                std::cout << name << "\n";
            }
            return kOk;
        }
    } catch (const tuav::Error& e) {
        std::cerr << "error (" << tuav::to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnexpected;
    }
    return kUnexpected;
}
