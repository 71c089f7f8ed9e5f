#ifndef QMH_SCENARIO_HPP
#define QMH_SCENARIO_HPP

#include <cstdint>
#include <string>

#include "qmh/montecarlo.hpp"

// Scenario orchestration behind the CLI: configuration parsing/validation,
// end-to-end runs and report serialization. Reports carry no wall-clock
// content, so a repeated run with identical parameters is byte-identical.

namespace qmh::scenario {

constexpr int kSchemaVersion = 1;

enum class Scenario { Exact, QuantumMc, DhvMc, AdversarialMc, Photonic, NoiseSweep, PowerPlan };
enum class Format { Json, Csv };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

struct ScenarioConfig {
    Scenario scenario = Scenario::Exact;
    std::int64_t n_trials = 1000000;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    double epsilon = 0.0;
    double eta = 1.0;
    double confidence = 0.95;
    double target_q = 1.0 / 6.0;
    double z = 5.0;
    Format format = Format::Json;
    std::string output_path;   // empty = stdout
    std::string circuit_path;  // optional, photonic scenario only
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Applies one `key = value` setting; throws ConfigError on unknown keys or
/// unparsable values.
void apply_setting(ScenarioConfig& config, const std::string& key, const std::string& value);

/// Reads a key=value config file ('#' comments allowed). Errors carry the
/// offending line number and field.
ScenarioConfig parse_config_file(const std::string& path);

/// Range checks on every numeric field; throws ConfigError before any work.
void validate(const ScenarioConfig& config);

/// Runs the configured scenario and returns the serialized report.
std::string run_scenario(const ScenarioConfig& config);

/// Serialized ExperimentReport, both directions. The CSV column order is
/// fixed and documented in the README.
std::string experiment_report_to_json(const mc::ExperimentReport& report, Scenario scenario);
std::string experiment_report_to_csv(const mc::ExperimentReport& report, Scenario scenario);
mc::ExperimentReport read_experiment_report_json(const std::string& text);
mc::ExperimentReport read_experiment_report_csv(const std::string& text);

/// Rounds to 10 significant digits, the precision every report prints.
double round_sig10(double value);

}  // namespace qmh::scenario

#endif
