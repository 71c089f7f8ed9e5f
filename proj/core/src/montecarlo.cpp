#include "qmh/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

namespace qmh::mc {

std::string to_string(ModelTag t) {
    switch (t) {
        case ModelTag::Quantum: return "quantum";
        case ModelTag::Dhv: return "dhv";
        case ModelTag::DhvAdversarial: return "dhv_adversarial";
        case ModelTag::Photonic: return "photonic";
    }
    return "unknown";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::ViolatesDeterministicBound: return "violates_deterministic_bound";
        case Verdict::ConsistentWithBound: return "consistent_with_bound";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

ModelTag model_tag_from_string(const std::string& s) {
    if (s == "quantum") return ModelTag::Quantum;
    if (s == "dhv") return ModelTag::Dhv;
    if (s == "dhv_adversarial") return ModelTag::DhvAdversarial;
    if (s == "photonic") return ModelTag::Photonic;
    throw std::invalid_argument("unknown model tag: " + s);
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "violates_deterministic_bound") return Verdict::ViolatesDeterministicBound;
    if (s == "consistent_with_bound") return Verdict::ConsistentWithBound;
    if (s == "inconclusive") return Verdict::Inconclusive;
    throw std::invalid_argument("unknown verdict: " + s);
}

std::vector<TrialRecord> simulate_quantum(std::int64_t n, double epsilon, double eta,
                                          rng::RngStream& rng) {
    if (n < 1) throw std::invalid_argument("simulate_quantum: need at least one trial");
    if (epsilon < 0.0 || epsilon > 1.0 || eta < 0.0 || eta > 1.0)
        throw std::invalid_argument("simulate_quantum: epsilon and eta must lie in [0,1]");

    const auto model = protocol::build_discard_povm();
    const auto state =
        protocol::apply_white_noise(protocol::DensityMatrix::pure(protocol::prepare_psi0()), epsilon);
    const auto branches = protocol::measure_discard(model, state);

    // exact per-branch sampling parameters, computed once
    std::array<double, 2> p_branch{branches[0].probability, branches[1].probability};
    std::array<double, 2> p_a{0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        if (branches[i].post_state)
            p_a[i] = protocol::projective_prob(*branches[i].post_state,
                                               protocol::index_of(protocol::BasisLabel::A));

    std::vector<TrialRecord> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < n; ++t) {
        const int b = rng.pick(p_branch);
        TrialRecord rec;
        rec.model_tag = ModelTag::Quantum;
        rec.branch = (b == 0) ? Branch::F1 : Branch::F2;
        rec.second_is_A = rng.bernoulli(p_a[b]);
        rec.detected_stage1 = rng.bernoulli(eta);
        rec.detected_stage2 = rng.bernoulli(eta);
        out.push_back(rec);
    }
    return out;
}

std::vector<TrialRecord> simulate_dhv(std::int64_t n, const dhv::HiddenVariableModel& model,
                                      rng::RngStream& rng, ModelTag tag) {
    if (n < 1) throw std::invalid_argument("simulate_dhv: need at least one trial");
    std::vector<TrialRecord> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < n; ++t) {
        const auto trial = dhv::sample_trial(model, rng);
        TrialRecord rec;
        rec.model_tag = tag;
        rec.branch = (trial.removed == dhv::Label::B) ? Branch::F1 : Branch::F2;
        rec.second_is_A = trial.second_measurement_is_A;
        rec.detected_stage1 = trial.detected_stage1;
        rec.detected_stage2 = trial.detected_stage2;
        out.push_back(rec);
    }
    return out;
}

// Acklam's rational approximation to the standard normal quantile; absolute
// error below 1.2e-9, ample for interval z-values.
namespace {
double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("normal_quantile: p outside (0,1)");
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > phigh) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}
}  // namespace

double normal_quantile_two_sided(double confidence) {
    if (confidence <= 0.5 || confidence >= 1.0)
        throw std::invalid_argument("confidence must lie in (0.5, 1)");
    return normal_quantile(0.5 + confidence / 2.0);
}

Interval wilson_interval(std::int64_t successes, std::int64_t n, double z) {
    if (n <= 0) throw std::invalid_argument("wilson_interval: n must be positive");
    if (successes < 0 || successes > n)
        throw std::invalid_argument("wilson_interval: successes outside [0,n]");
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(successes) / nn;
    const double z2n = z * z / nn;
    const double denom = 1.0 + z2n;
    const double center = (phat + z2n / 2.0) / denom;
    const double half = (z / denom) * std::sqrt(phat * (1.0 - phat) / nn + z2n / (4.0 * nn));
    return {center - half, center + half};
}

ExperimentReport estimate_q(const std::vector<TrialRecord>& trials, double confidence) {
    const double z = normal_quantile_two_sided(confidence);
    std::int64_t detected = 0, hits = 0;
    for (const auto& t : trials) {
        if (!t.detected()) continue;
        ++detected;
        if (t.second_is_A) ++hits;
    }
    if (detected == 0) throw std::invalid_argument("estimate_q: no detected trials");

    ExperimentReport r;
    r.n_trials = static_cast<std::int64_t>(trials.size());
    r.n_detected = detected;
    r.q_hat = static_cast<double>(hits) / static_cast<double>(detected);
    const Interval ci = wilson_interval(hits, detected, z);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    r.confidence = confidence;
    r.model_tag = trials.front().model_tag;

    const double bound = 1.0 / 3.0, qm = 1.0 / 6.0;
    if (r.ci_high < bound)
        r.verdict = Verdict::ViolatesDeterministicBound;
    else if (r.ci_low > qm && r.ci_low <= bound && bound <= r.ci_high)
        r.verdict = Verdict::ConsistentWithBound;
    else
        r.verdict = Verdict::Inconclusive;
    return r;
}

std::int64_t required_trials(double p_true, double boundary, double z) {
    if (!(p_true > 0.0 && p_true < boundary && boundary < 1.0))
        throw std::invalid_argument("required_trials: need 0 < p_true < boundary < 1");
    if (z <= 0.0) throw std::invalid_argument("required_trials: z must be positive");
    const double gap = boundary - p_true;
    const double n = z * z * p_true * (1.0 - p_true) / (gap * gap);
    return static_cast<std::int64_t>(std::ceil(n - 1e-9));
}

}  // namespace qmh::mc
