#ifndef QMH_MONTECARLO_HPP
#define QMH_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qmh/dhv.hpp"
#include "qmh/protocol.hpp"
#include "qmh/rng.hpp"

// Finite-statistics engine: simulated runs of both models, Wilson-interval
// estimation of Q, the verdict against the deterministic 1/3 bound, and
// sample-size planning.

namespace qmh::mc {

enum class ModelTag { Quantum, Dhv, DhvAdversarial, Photonic };
enum class Branch { F1, F2 };
enum class Verdict { ViolatesDeterministicBound, ConsistentWithBound, Inconclusive };

std::string to_string(ModelTag t);
std::string to_string(Verdict v);
ModelTag model_tag_from_string(const std::string& s);
Verdict verdict_from_string(const std::string& s);

struct TrialRecord {
    ModelTag model_tag;
    Branch branch;
    bool second_is_A;
    bool detected_stage1;
    bool detected_stage2;

    bool detected() const { return detected_stage1 && detected_stage2; }
};

struct ExperimentReport {
    std::int64_t n_trials = 0;
    std::int64_t n_detected = 0;
    double q_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double confidence = 0.95;
    Verdict verdict = Verdict::Inconclusive;
    // metadata
    ModelTag model_tag = ModelTag::Quantum;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    double epsilon = 0.0;
    double eta = 1.0;
    // reference values carried for downstream consumers
    double q_quantum_exact = 1.0 / 6.0;
    double q_det_bound = 1.0 / 3.0;
    double epsilon_threshold = 1.0 / 12.0;
};

/// Trials of the quantum protocol on the ε-noisy state with detector
/// efficiency η at each stage. Branches are sampled from the exact analytic
/// probabilities.
std::vector<TrialRecord> simulate_quantum(std::int64_t n, double epsilon, double eta,
                                          rng::RngStream& rng);

std::vector<TrialRecord> simulate_dhv(std::int64_t n, const dhv::HiddenVariableModel& model,
                                      rng::RngStream& rng, ModelTag tag = ModelTag::Dhv);

/// Two-sided normal quantile for the given central confidence level.
double normal_quantile_two_sided(double confidence);

struct Interval {
    double low, high;
};
/// Wilson score interval for k successes out of n.
Interval wilson_interval(std::int64_t successes, std::int64_t n, double z);

/// Detected-conditional A-frequency, Wilson CI and the verdict against the
/// 1/3 bound: violated iff ci_high < 1/3; consistent iff ci_low > 1/6 and
/// the interval contains 1/3; otherwise inconclusive.
ExperimentReport estimate_q(const std::vector<TrialRecord>& trials, double confidence);

/// Smallest n with z·σ(p_true, n) ≤ boundary − p_true.
std::int64_t required_trials(double p_true, double boundary, double z);

}  // namespace qmh::mc

#endif
