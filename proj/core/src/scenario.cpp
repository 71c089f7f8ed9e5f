#include "qmh/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qmh/photonics.hpp"

namespace qmh::scenario {

using json = nlohmann::ordered_json;

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::Exact: return "exact";
        case Scenario::QuantumMc: return "quantum_mc";
        case Scenario::DhvMc: return "dhv_mc";
        case Scenario::AdversarialMc: return "adversarial_mc";
        case Scenario::Photonic: return "photonic";
        case Scenario::NoiseSweep: return "noise_sweep";
        case Scenario::PowerPlan: return "power_plan";
    }
    return "unknown";
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "exact") return Scenario::Exact;
    if (s == "quantum_mc") return Scenario::QuantumMc;
    if (s == "dhv_mc") return Scenario::DhvMc;
    if (s == "adversarial_mc") return Scenario::AdversarialMc;
    if (s == "photonic") return Scenario::Photonic;
    if (s == "noise_sweep") return Scenario::NoiseSweep;
    if (s == "power_plan") return Scenario::PowerPlan;
    throw ConfigError("unknown scenario: " + s);
}

double round_sig10(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return std::strtod(buf, nullptr);
}

namespace {

std::string sig10(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    std::istringstream ss(value);
    T out{};
    ss >> out;
    if (ss.fail() || !(ss >> std::ws).eof())
        throw ConfigError("field '" + key + "': cannot parse value '" + value + "'");
    return out;
}

}  // namespace

void apply_setting(ScenarioConfig& c, const std::string& key, const std::string& value) {
    if (key == "scenario") c.scenario = scenario_from_string(value);
    else if (key == "trials") c.n_trials = parse_number<std::int64_t>(key, value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "stream") c.stream_id = parse_number<std::uint64_t>(key, value);
    else if (key == "epsilon") c.epsilon = parse_number<double>(key, value);
    else if (key == "eta") c.eta = parse_number<double>(key, value);
    else if (key == "confidence") c.confidence = parse_number<double>(key, value);
    else if (key == "target_q") c.target_q = parse_number<double>(key, value);
    else if (key == "z") c.z = parse_number<double>(key, value);
    else if (key == "format") {
        if (value == "json") c.format = Format::Json;
        else if (value == "csv") c.format = Format::Csv;
        else throw ConfigError("field 'format': expected json or csv, got '" + value + "'");
    } else if (key == "out") c.output_path = value;
    else if (key == "circuit") c.circuit_path = value;
    else throw ConfigError("unknown key '" + key + "'");
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    ScenarioConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty()) continue;
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t\r");
            return (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
        };
        try {
            apply_setting(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& err) {
            throw ConfigError("config line " + std::to_string(lineno) + ": " + err.what());
        }
    }
    return c;
}

void validate(const ScenarioConfig& c) {
    if (c.n_trials < 1) throw ConfigError("trials must be >= 1");
    if (c.epsilon < 0.0 || c.epsilon > 1.0) throw ConfigError("epsilon must lie in [0,1]");
    if (c.eta < 0.0 || c.eta > 1.0) throw ConfigError("eta must lie in [0,1]");
    if (c.confidence <= 0.5 || c.confidence >= 1.0)
        throw ConfigError("confidence must lie in (0.5, 1)");
    if (c.target_q <= 0.0 || c.target_q >= 1.0) throw ConfigError("target_q must lie in (0,1)");
    if (c.z <= 0.0) throw ConfigError("z must be positive");
}

namespace {

void fill_common(json& j, Scenario s) {
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = to_string(s);
}

json report_to_json_obj(const mc::ExperimentReport& r, Scenario s) {
    json j;
    fill_common(j, s);
    j["model"] = mc::to_string(r.model_tag);
    j["n_trials"] = r.n_trials;
    j["n_detected"] = r.n_detected;
    j["q_hat"] = round_sig10(r.q_hat);
    j["ci_low"] = round_sig10(r.ci_low);
    j["ci_high"] = round_sig10(r.ci_high);
    j["confidence"] = round_sig10(r.confidence);
    j["verdict"] = mc::to_string(r.verdict);
    j["seed"] = r.seed;
    j["stream_id"] = r.stream_id;
    j["epsilon"] = round_sig10(r.epsilon);
    j["eta"] = round_sig10(r.eta);
    j["q_quantum_exact"] = round_sig10(r.q_quantum_exact);
    j["q_det_bound"] = round_sig10(r.q_det_bound);
    j["epsilon_threshold"] = round_sig10(r.epsilon_threshold);
    return j;
}

constexpr const char* kCsvHeader =
    "schema_version,scenario,model,n_trials,n_detected,q_hat,ci_low,ci_high,confidence,"
    "verdict,seed,stream_id,epsilon,eta,q_quantum_exact,q_det_bound,epsilon_threshold";

}  // namespace

std::string experiment_report_to_json(const mc::ExperimentReport& r, Scenario s) {
    return report_to_json_obj(r, s).dump(2) + "\n";
}

std::string experiment_report_to_csv(const mc::ExperimentReport& r, Scenario s) {
    std::ostringstream out;
    out << kCsvHeader << "\n"
        << kSchemaVersion << ',' << to_string(s) << ',' << mc::to_string(r.model_tag) << ','
        << r.n_trials << ',' << r.n_detected << ',' << sig10(r.q_hat) << ',' << sig10(r.ci_low)
        << ',' << sig10(r.ci_high) << ',' << sig10(r.confidence) << ','
        << mc::to_string(r.verdict) << ',' << r.seed << ',' << r.stream_id << ','
        << sig10(r.epsilon) << ',' << sig10(r.eta) << ',' << sig10(r.q_quantum_exact) << ','
        << sig10(r.q_det_bound) << ',' << sig10(r.epsilon_threshold) << "\n";
    return out.str();
}

mc::ExperimentReport read_experiment_report_json(const std::string& text) {
    const json j = json::parse(text);
    mc::ExperimentReport r;
    r.model_tag = mc::model_tag_from_string(j.at("model").get<std::string>());
    r.n_trials = j.at("n_trials").get<std::int64_t>();
    r.n_detected = j.at("n_detected").get<std::int64_t>();
    r.q_hat = j.at("q_hat").get<double>();
    r.ci_low = j.at("ci_low").get<double>();
    r.ci_high = j.at("ci_high").get<double>();
    r.confidence = j.at("confidence").get<double>();
    r.verdict = mc::verdict_from_string(j.at("verdict").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.stream_id = j.at("stream_id").get<std::uint64_t>();
    r.epsilon = j.at("epsilon").get<double>();
    r.eta = j.at("eta").get<double>();
    r.q_quantum_exact = j.at("q_quantum_exact").get<double>();
    r.q_det_bound = j.at("q_det_bound").get<double>();
    r.epsilon_threshold = j.at("epsilon_threshold").get<double>();
    return r;
}

mc::ExperimentReport read_experiment_report_csv(const std::string& text) {
    std::istringstream in(text);
    std::string header, row;
    if (!std::getline(in, header) || !std::getline(in, row))
        throw std::invalid_argument("report csv: expected header and one data row");
    if (header != kCsvHeader) throw std::invalid_argument("report csv: unexpected header");
    std::vector<std::string> cells;
    std::istringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) cells.push_back(cell);
    if (cells.size() != 17) throw std::invalid_argument("report csv: expected 17 columns");
    mc::ExperimentReport r;
    r.model_tag = mc::model_tag_from_string(cells[2]);
    r.n_trials = std::stoll(cells[3]);
    r.n_detected = std::stoll(cells[4]);
    r.q_hat = std::stod(cells[5]);
    r.ci_low = std::stod(cells[6]);
    r.ci_high = std::stod(cells[7]);
    r.confidence = std::stod(cells[8]);
    r.verdict = mc::verdict_from_string(cells[9]);
    r.seed = std::stoull(cells[10]);
    r.stream_id = std::stoull(cells[11]);
    r.epsilon = std::stod(cells[12]);
    r.eta = std::stod(cells[13]);
    r.q_quantum_exact = std::stod(cells[14]);
    r.q_det_bound = std::stod(cells[15]);
    r.epsilon_threshold = std::stod(cells[16]);
    return r;
}

namespace {

std::string run_exact(const ScenarioConfig& c) {
    const auto model = protocol::build_discard_povm();
    const auto psi0 = protocol::DensityMatrix::pure(protocol::prepare_psi0());
    const double p_f1 = protocol::measure_discard(model, psi0)[0].probability;
    const double q_qm = protocol::q_quantum(model, psi0);
    const double q_det = dhv::q_deterministic(dhv::canonical_model());

    if (c.format == Format::Csv) {
        std::ostringstream out;
        out << "schema_version,scenario,p_f1,q_quantum,q_det,violation_ratio,epsilon_threshold\n"
            << kSchemaVersion << ",exact," << sig10(p_f1) << ',' << sig10(q_qm) << ','
            << sig10(q_det) << ',' << sig10(q_det / q_qm) << ',' << sig10(1.0 / 12.0) << "\n";
        return out.str();
    }
    json j;
    fill_common(j, Scenario::Exact);
    j["p_f1"] = round_sig10(p_f1);
    j["q_quantum"] = round_sig10(q_qm);
    j["q_det"] = round_sig10(q_det);
    j["violation_ratio"] = round_sig10(q_det / q_qm);
    j["epsilon_threshold"] = round_sig10(1.0 / 12.0);
    return j.dump(2) + "\n";
}

std::string run_mc(const ScenarioConfig& c) {
    rng::RngStream rng(c.seed, c.stream_id);
    std::vector<mc::TrialRecord> trials;
    double suppression = 1.0, efficiency = 1.0;
    switch (c.scenario) {
        case Scenario::QuantumMc:
            trials = mc::simulate_quantum(c.n_trials, c.epsilon, c.eta, rng);
            break;
        case Scenario::DhvMc:
            trials = mc::simulate_dhv(c.n_trials, dhv::canonical_model(), rng);
            break;
        case Scenario::AdversarialMc: {
            const auto [model, eff] = dhv::adversarial_detection_model(c.target_q);
            suppression = model.detection[0][1];
            efficiency = eff;
            trials = mc::simulate_dhv(c.n_trials, model, rng, mc::ModelTag::DhvAdversarial);
            break;
        }
        default:
            throw std::logic_error("run_mc: not a Monte Carlo scenario");
    }
    mc::ExperimentReport r = mc::estimate_q(trials, c.confidence);
    r.seed = c.seed;
    r.stream_id = c.stream_id;
    r.epsilon = c.epsilon;
    r.eta = c.eta;

    if (c.format == Format::Csv) return experiment_report_to_csv(r, c.scenario);
    json j = report_to_json_obj(r, c.scenario);
    if (c.scenario == Scenario::AdversarialMc) {
        j["target_q"] = round_sig10(c.target_q);
        j["suppression"] = round_sig10(suppression);
        j["efficiency_analytic"] = round_sig10(efficiency);
        j["detection_rate"] =
            round_sig10(static_cast<double>(r.n_detected) / static_cast<double>(r.n_trials));
    }
    return j.dump(2) + "\n";
}

std::string run_noise_sweep(const ScenarioConfig& c) {
    const auto model = protocol::build_discard_povm();
    std::vector<double> eps;
    for (int i = 0; i <= 20; ++i) eps.push_back(i * 0.05);
    const auto curve = protocol::q_noise_curve(model, eps);

    if (c.format == Format::Csv) {
        std::ostringstream out;
        out << "epsilon,q_computed,q_paper_formula,delta\n";
        for (const auto& p : curve)
            out << sig10(p.epsilon) << ',' << sig10(p.q_computed) << ',' << sig10(p.q_formula)
                << ',' << sig10(p.delta) << "\n";
        return out.str();
    }
    json j;
    fill_common(j, Scenario::NoiseSweep);
    j["points"] = json::array();
    for (const auto& p : curve)
        j["points"].push_back({{"epsilon", round_sig10(p.epsilon)},
                               {"q_computed", round_sig10(p.q_computed)},
                               {"q_paper_formula", round_sig10(p.q_formula)},
                               {"delta", round_sig10(p.delta)}});
    return j.dump(2) + "\n";
}

std::string run_photonic(const ScenarioConfig& c) {
    using namespace photonics;
    OpticalCircuit discard = c.circuit_path.empty() ? design_discard_circuit()
                                                    : parse_circuit_file(c.circuit_path);

    const auto psi0 = protocol::prepare_psi0();
    ModeState in;
    in.amps = psi0.amps;
    const auto branch = run_circuit(discard, in);

    // same circuit with the projective A-filter appended
    OpticalCircuit filtered = discard;
    filtered.filter_mode = 0;
    const auto overall = run_circuit(filtered, in);

    const Operator k_eff = effective_kraus(discard);
    const auto model = protocol::build_discard_povm();
    // compare columns up to one global phase
    double kraus_dev = 0.0;
    {
        Ket flat_eff(9), flat_k1(9);
        for (std::size_t i = 0; i < 9; ++i) {
            flat_eff[i] = k_eff.entries[i];
            flat_k1[i] = model.kraus[0].entries[i];
        }
        const Ket a = phase_aligned(flat_eff), b = phase_aligned(flat_k1);
        for (std::size_t i = 0; i < 9; ++i)
            kraus_dev = std::max(kraus_dev, std::abs(a[i] - b[i]));
    }

    if (c.format == Format::Csv) {
        std::ostringstream out;
        out << "schema_version,scenario,discard_probability,overall_A_probability,"
               "kraus_deviation_from_K1\n"
            << kSchemaVersion << ",photonic," << sig10(branch.postselect_probability) << ','
            << sig10(overall.postselect_probability) << ',' << sig10(kraus_dev) << "\n";
        return out.str();
    }
    json j;
    fill_common(j, Scenario::Photonic);
    j["discard_probability"] = round_sig10(branch.postselect_probability);
    j["overall_A_probability"] = round_sig10(overall.postselect_probability);
    j["kraus_deviation_from_K1"] = round_sig10(kraus_dev);
    if (branch.conditional_state) {
        j["conditional_state"] = json::array();
        for (const auto& a : branch.conditional_state->amps)
            j["conditional_state"].push_back({{"re", round_sig10(a.real())},
                                              {"im", round_sig10(a.imag())}});
    }
    return j.dump(2) + "\n";
}

std::string run_power_plan(const ScenarioConfig& c) {
    const double boundary = 1.0 / 3.0;
    const std::int64_t n = mc::required_trials(c.target_q, boundary, c.z);
    if (c.format == Format::Csv) {
        std::ostringstream out;
        out << "schema_version,scenario,p_true,boundary,z,required_trials\n"
            << kSchemaVersion << ",power_plan," << sig10(c.target_q) << ',' << sig10(boundary)
            << ',' << sig10(c.z) << ',' << n << "\n";
        return out.str();
    }
    json j;
    fill_common(j, Scenario::PowerPlan);
    j["p_true"] = round_sig10(c.target_q);
    j["boundary"] = round_sig10(boundary);
    j["z"] = round_sig10(c.z);
    j["required_trials"] = n;
    return j.dump(2) + "\n";
}

}  // namespace

std::string run_scenario(const ScenarioConfig& c) {
    validate(c);
    switch (c.scenario) {
        case Scenario::Exact: return run_exact(c);
        case Scenario::QuantumMc:
        case Scenario::DhvMc:
        case Scenario::AdversarialMc: return run_mc(c);
        case Scenario::NoiseSweep: return run_noise_sweep(c);
        case Scenario::Photonic: return run_photonic(c);
        case Scenario::PowerPlan: return run_power_plan(c);
    }
    throw std::logic_error("run_scenario: unhandled scenario");
}

}  // namespace qmh::scenario
