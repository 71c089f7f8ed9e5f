// qmh: run quantum Monty Hall scenarios and emit machine-readable reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qmh/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

}  // namespace

int main(int argc, char** argv) {
    using qmh::scenario::ConfigError;
    using qmh::scenario::ScenarioConfig;

    CLI::App app{"Quantum Monty Hall protocol simulator"};

    std::string scenario_name, format_name, out_path, config_path, circuit_path;
    std::string seed_text;
    ScenarioConfig config;

    app.add_option("--scenario", scenario_name,
                   "exact | quantum_mc | dhv_mc | adversarial_mc | photonic | noise_sweep | "
                   "power_plan");
    app.add_option("--trials", config.n_trials, "number of Monte Carlo trials");
    app.add_option("--seed", seed_text, "RNG seed (default: QMH_SEED env var, else 0)");
    app.add_option("--stream", config.stream_id, "RNG stream id");
    app.add_option("--epsilon", config.epsilon, "white-noise level in [0,1]");
    app.add_option("--eta", config.eta, "per-stage detector efficiency in [0,1]");
    app.add_option("--confidence", config.confidence, "CI confidence level in (0.5,1)");
    app.add_option("--target-q", config.target_q, "adversarial target / power-plan p_true");
    app.add_option("--z", config.z, "power-plan z value");
    app.add_option("--format", format_name, "json | csv");
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--config", config_path, "key=value config file; flags override it");
    app.add_option("--circuit", circuit_path, "optical circuit description file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            ScenarioConfig from_file = qmh::scenario::parse_config_file(config_path);
            // flags override file values
            if (!app.count("--trials")) config.n_trials = from_file.n_trials;
            if (!app.count("--stream")) config.stream_id = from_file.stream_id;
            if (!app.count("--epsilon")) config.epsilon = from_file.epsilon;
            if (!app.count("--eta")) config.eta = from_file.eta;
            if (!app.count("--confidence")) config.confidence = from_file.confidence;
            if (!app.count("--target-q")) config.target_q = from_file.target_q;
            if (!app.count("--z")) config.z = from_file.z;
            config.scenario = from_file.scenario;
            config.format = from_file.format;
            config.seed = from_file.seed;
            if (out_path.empty()) out_path = from_file.output_path;
            if (circuit_path.empty()) circuit_path = from_file.circuit_path;
        }
        if (!scenario_name.empty()) config.scenario = qmh::scenario::scenario_from_string(scenario_name);
        if (!format_name.empty()) {
            if (format_name == "json") config.format = qmh::scenario::Format::Json;
            else if (format_name == "csv") config.format = qmh::scenario::Format::Csv;
            else throw ConfigError("--format: expected json or csv");
        }
        if (!seed_text.empty()) {
            config.seed = std::stoull(seed_text);
        } else if (!app.count("--seed") && config.seed == 0) {
            if (const char* env = std::getenv("QMH_SEED")) config.seed = std::stoull(env);
        }
        config.output_path = out_path;
        config.circuit_path = circuit_path;
        qmh::scenario::validate(config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        const std::string report = qmh::scenario::run_scenario(config);
        if (config.output_path.empty()) {
            std::cout << report;
        } else {
            std::ofstream f(config.output_path, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot open output file " << config.output_path << "\n";
                return kExitRuntimeError;
            }
            f << report;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}
