#ifndef QMH_DHV_HPP
#define QMH_DHV_HPP

#include <array>
#include <utility>
#include <vector>

#include "qmh/rng.hpp"

// Deterministic hidden-variable models: the Monty-Hall-respecting model with
// Q_det = 1/3 and an adversarial variant that exploits the detection
// loophole. Models are immutable; sampling takes an explicit RNG stream.

namespace qmh::dhv {

enum class Label : int { A = 0, B = 1, C = 2 };
constexpr int index_of(Label l) { return static_cast<int>(l); }

/// Measurement stages at which a detector can fire (or not).
enum class Stage : int { Discard = 0, Second = 1 };

/// Per-λ distribution over which label the discard removes.
struct DiscardRule {
    // rule[λ] = list of (removed label, probability); probabilities sum to 1
    std::array<std::vector<std::pair<Label, double>>, 3> removals;
};

struct HiddenVariableModel {
    std::array<double, 3> prior;  // over λ = A, B, C; sums to 1
    DiscardRule rule;
    // detection probability per (λ, stage); defaults to 1 everywhere
    std::array<std::array<double, 2>, 3> detection = {{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}};
};

struct DhvTrialOutcome {
    Label lambda;
    Label removed;
    bool second_measurement_is_A;
    bool detected_stage1;
    bool detected_stage2;
    bool detected;  // both stages fired
};

/// Uniform prior, the Monty Hall rule (λ=A removes B or C at 1/2 each,
/// λ=B removes C, λ=C removes B), unit detection everywhere.
HiddenVariableModel canonical_model();

/// True iff no positive-probability removal ever targets the value of λ.
bool monty_hall_compliant(const HiddenVariableModel& model);

/// Analytic probability that the second measurement yields A. Equals
/// prior(A) for every compliant rule; refuses non-compliant models.
double q_deterministic(const HiddenVariableModel& model);

/// Canonical model plus a λ=A-suppressing detection policy at the second
/// stage, tuned so the postselected A-frequency equals target_q. Returns the
/// model and the overall detection efficiency of the strategy.
std::pair<HiddenVariableModel, double> adversarial_detection_model(double target_q);

DhvTrialOutcome sample_trial(const HiddenVariableModel& model, rng::RngStream& rng);

}  // namespace qmh::dhv

#endif
