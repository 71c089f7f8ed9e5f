#ifndef QMH_PROTOCOL_HPP
#define QMH_PROTOCOL_HPP

#include <array>
#include <optional>
#include <vector>

#include "qmh/qlinalg.hpp"

// Quantum side of the Monty Hall protocol: the symmetric qutrit state, the
// two-outcome discard POVM with an explicit Kraus/dilation realization,
// sequential measurement probabilities and the white-noise channel.

namespace qmh::protocol {

using qlinalg::cxd;
using qlinalg::Ket;
using qlinalg::Operator;

/// Fixed basis labels A, B, C <-> indices 0, 1, 2.
enum class BasisLabel : int { A = 0, B = 1, C = 2 };
constexpr int index_of(BasisLabel l) { return static_cast<int>(l); }

/// Hermitian, unit-trace, PSD matrix. Validated on construction.
class DensityMatrix {
  public:
    explicit DensityMatrix(Operator entries);
    static DensityMatrix pure(const Ket& psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    const Operator& op() const { return entries_; }
    std::size_t dim() const { return entries_.dim; }

  private:
    Operator entries_;
};

/// POVM {F1, F2} with a fixed Kraus decomposition and its 6x6 dilation
/// unitary. Invariants (Ki†Ki = Fi, F1+F2 = I, dilation consistency) are
/// checked at construction; instances are immutable afterwards.
struct MeasurementModel {
    std::array<Operator, 2> effects;   // F1, F2
    std::array<Operator, 2> kraus;     // K1, K2
    Operator dilation;                 // 6x6, basis index = 2*qutrit + ancilla
    std::array<int, 2> ancilla_outcome_map;  // ancilla state flagging effect i

    MeasurementModel(std::array<Operator, 2> effects_, std::array<Operator, 2> kraus_,
                     Operator dilation_, std::array<int, 2> outcome_map);
};

struct BranchOutcome {
    int effect_index;           // 1 or 2
    double probability;
    std::optional<DensityMatrix> post_state;  // empty when probability < 1e-15
};

/// (1/√3)(|A⟩+|B⟩+|C⟩)
Ket prepare_psi0();

/// The canonical discard instrument: F1 = ½(|A⟩⟨A|+|C⟩⟨C|), F2 = I−F1,
/// K1 = √F1, K2 = V·√F2 with V the rotation pinned so that K2|ψ0⟩ has zero
/// A-component and the maximally mixed state returns A with probability 1/3.
MeasurementModel build_discard_povm();

/// Both branches of the instrument applied to a state; probabilities sum to 1.
std::array<BranchOutcome, 2> measure_discard(const MeasurementModel& model,
                                             const DensityMatrix& state);

/// ⟨i|ρ|i⟩
double projective_prob(const DensityMatrix& state, int basis_index);

/// Probability of finding A in the second measurement, averaged over both
/// discard branches. Equals 1/6 for the canonical model on |ψ0⟩.
double q_quantum(const MeasurementModel& model, const DensityMatrix& state);

/// ρ → (1−ε)ρ + ε·I/dim
DensityMatrix apply_white_noise(const DensityMatrix& state, double epsilon);

struct NoisePoint {
    double epsilon;
    double q_computed;   // density-matrix computation with the canonical Kraus pair
    double q_formula;    // (1+ε)/6
    double delta;        // q_computed − q_formula
};

/// Q(ε) on the white-noise family, with the closed-form value and the
/// discrepancy carried alongside.
std::vector<NoisePoint> q_noise_curve(const MeasurementModel& model,
                                      const std::vector<double>& epsilons);

}  // namespace qmh::protocol

#endif
