#include "qmh/dhv.hpp"

#include <stdexcept>

namespace qmh::dhv {

HiddenVariableModel canonical_model() {
    HiddenVariableModel m;
    m.prior = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    m.rule.removals[index_of(Label::A)] = {{Label::B, 0.5}, {Label::C, 0.5}};
    m.rule.removals[index_of(Label::B)] = {{Label::C, 1.0}};
    m.rule.removals[index_of(Label::C)] = {{Label::B, 1.0}};
    return m;
}

bool monty_hall_compliant(const HiddenVariableModel& model) {
    for (int l = 0; l < 3; ++l)
        for (const auto& [removed, p] : model.rule.removals[l])
            if (p > 0.0 && index_of(removed) == l) return false;
    return true;
}

double q_deterministic(const HiddenVariableModel& model) {
    if (!monty_hall_compliant(model))
        throw std::invalid_argument(
            "q_deterministic: model violates the Monty Hall condition; use simulation "
            "(sample_trial) for non-compliant rules");
    // a compliant discard never touches λ, so the second measurement reveals it
    return model.prior[index_of(Label::A)];
}

std::pair<HiddenVariableModel, double> adversarial_detection_model(double target_q) {
    HiddenVariableModel m = canonical_model();
    const double prior_a = m.prior[index_of(Label::A)];
    if (target_q <= 0.0 || target_q > prior_a)
        throw std::invalid_argument(
            "adversarial_detection_model: target must lie in (0, prior(A)]");
    // postselected A-frequency with suppression d on λ=A at the second stage:
    //   d·pA / (d·pA + (1 − pA)) = target  =>  d = target(1−pA) / (pA(1−target))
    const double d = target_q * (1.0 - prior_a) / (prior_a * (1.0 - target_q));
    m.detection[index_of(Label::A)][static_cast<int>(Stage::Second)] = d;
    const double efficiency = d * prior_a + (1.0 - prior_a);
    return {m, efficiency};
}

DhvTrialOutcome sample_trial(const HiddenVariableModel& model, rng::RngStream& rng) {
    const int lam = rng.pick(model.prior);
    const auto& removals = model.rule.removals[lam];
    double r = rng.next_double();
    Label removed = removals.back().first;
    for (const auto& [label, p] : removals) {
        r -= p;
        if (r < 0.0) {
            removed = label;
            break;
        }
    }
    DhvTrialOutcome out;
    out.lambda = static_cast<Label>(lam);
    out.removed = removed;
    // a compliant discard leaves λ in place; a rule that removed A cannot
    // yield A afterwards
    out.second_measurement_is_A = (out.lambda == Label::A && out.removed != Label::A);
    out.detected_stage1 = rng.bernoulli(model.detection[lam][static_cast<int>(Stage::Discard)]);
    out.detected_stage2 = rng.bernoulli(model.detection[lam][static_cast<int>(Stage::Second)]);
    out.detected = out.detected_stage1 && out.detected_stage2;
    return out;
}

}  // namespace qmh::dhv
