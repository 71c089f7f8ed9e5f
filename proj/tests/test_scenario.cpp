#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "qmh/scenario.hpp"

using namespace qmh::scenario;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        path = std::string(std::tmpnam(nullptr)) + ".cfg";
        std::ofstream f(path);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("exact scenario prints the analytic table") {
    ScenarioConfig c;
    c.scenario = Scenario::Exact;
    const std::string out = run_scenario(c);
    CHECK(out.find("0.1666666667") != std::string::npos);
    CHECK(out.find("0.3333333333") != std::string::npos);
    CHECK(out.find("\"violation_ratio\": 2") != std::string::npos);
    CHECK(out.find("0.08333333333") != std::string::npos);

    c.format = Format::Csv;
    const std::string csv = run_scenario(c);
    CHECK(csv.find("p_f1,q_quantum,q_det") != std::string::npos);
    CHECK(csv.find("0.1666666667") != std::string::npos);
}

TEST_CASE("scenario runs are deterministic") {
    for (Scenario s : {Scenario::QuantumMc, Scenario::DhvMc, Scenario::AdversarialMc,
                       Scenario::NoiseSweep, Scenario::Photonic, Scenario::PowerPlan}) {
        ScenarioConfig c;
        c.scenario = s;
        c.n_trials = 20000;
        c.seed = 42;
        CHECK(run_scenario(c) == run_scenario(c));
    }
}

TEST_CASE("experiment report round-trips") {
    ScenarioConfig c;
    c.scenario = Scenario::QuantumMc;
    c.n_trials = 50000;
    c.seed = 7;
    const std::string json_text = run_scenario(c);
    const auto r = read_experiment_report_json(json_text);
    CHECK(r.n_trials == 50000);
    CHECK(r.verdict == qmh::mc::Verdict::ViolatesDeterministicBound);
    CHECK(experiment_report_to_json(r, Scenario::QuantumMc) == json_text);

    c.format = Format::Csv;
    const std::string csv_text = run_scenario(c);
    const auto rc = read_experiment_report_csv(csv_text);
    CHECK(rc.n_trials == r.n_trials);
    CHECK(rc.q_hat == doctest::Approx(r.q_hat).epsilon(1e-12));
    CHECK(experiment_report_to_csv(rc, Scenario::QuantumMc) == csv_text);
}

TEST_CASE("noise sweep emits both the computed and formula values") {
    ScenarioConfig c;
    c.scenario = Scenario::NoiseSweep;
    c.format = Format::Csv;
    const std::string csv = run_scenario(c);
    CHECK(csv.find("epsilon,q_computed,q_paper_formula,delta") != std::string::npos);
    // 21 grid points plus header
    int lines = 0;
    for (char ch : csv) lines += (ch == '\n');
    CHECK(lines == 22);
}

TEST_CASE("power plan") {
    ScenarioConfig c;
    c.scenario = Scenario::PowerPlan;
    c.z = 5.0;
    const std::string out = run_scenario(c);
    CHECK(out.find("\"required_trials\": 125") != std::string::npos);
}

TEST_CASE("photonic scenario reproduces the abstract values") {
    ScenarioConfig c;
    c.scenario = Scenario::Photonic;
    const std::string out = run_scenario(c);
    CHECK(out.find("\"discard_probability\": 0.3333333333") != std::string::npos);
    CHECK(out.find("\"overall_A_probability\": 0.1666666667") != std::string::npos);
}

TEST_CASE("config file parsing") {
    SUBCASE("valid file") {
        TempFile f(
            "# comment\n"
            "scenario = quantum_mc\n"
            "trials = 1000\n"
            "seed = 99\n"
            "epsilon = 0.25\n"
            "format = csv\n");
        const auto c = parse_config_file(f.path);
        CHECK(c.scenario == Scenario::QuantumMc);
        CHECK(c.n_trials == 1000);
        CHECK(c.seed == 99);
        CHECK(c.epsilon == 0.25);
        CHECK(c.format == Format::Csv);
    }
    SUBCASE("unknown key is rejected with the line number") {
        TempFile f("scenario = exact\nbogus = 1\n");
        CHECK_THROWS_WITH_AS(parse_config_file(f.path), doctest::Contains("line 2"), ConfigError);
    }
    SUBCASE("bad value names the field") {
        TempFile f("trials = many\n");
        CHECK_THROWS_WITH_AS(parse_config_file(f.path), doctest::Contains("trials"), ConfigError);
    }
}

TEST_CASE("validation rejects out-of-range settings before any work") {
    ScenarioConfig c;
    c.epsilon = 1.5;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.eta = -0.2;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.confidence = 0.3;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.n_trials = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("adversarial report carries the loophole numbers") {
    ScenarioConfig c;
    c.scenario = Scenario::AdversarialMc;
    c.n_trials = 200000;
    c.seed = 11;
    const std::string out = run_scenario(c);
    CHECK(out.find("\"suppression\": 0.4") != std::string::npos);
    CHECK(out.find("\"efficiency_analytic\": 0.8") != std::string::npos);
}
