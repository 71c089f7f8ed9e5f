#ifndef QMH_PHOTONICS_HPP
#define QMH_PHOTONICS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmh/qlinalg.hpp"

// Single-photon mode simulation of the proposed optical implementation:
// tritter, lossy beamsplitter discard, postselection, projective filter.
// Loss is always an explicit coupling to a vacuum ancilla mode, so every
// circuit's composed matrix is unitary.

namespace qmh::photonics {

using qlinalg::cxd;
using qlinalg::Ket;
using qlinalg::Operator;

/// One photon spread over n modes; Σ|amp|² ≤ 1, the deficit being weight
/// already lost to postselection.
struct ModeState {
    std::vector<cxd> amps;

    std::size_t n_modes() const { return amps.size(); }
    double weight() const;

    static ModeState single_photon(std::size_t n_modes, std::size_t mode);
};

enum class ElementKind { Tritter, Beamsplitter, LossPort, Phase };

struct OpticalElement {
    ElementKind kind;
    std::vector<int> modes;  // 3 for tritter, 2 for beamsplitter/loss, 1 for phase
    double param = 0.0;      // reflectivity or phase angle
};

struct OpticalCircuit {
    int n_signal_modes = 0;
    int n_ancilla_modes = 0;
    std::vector<OpticalElement> elements;
    std::vector<int> postselect_empty;     // ancilla modes required empty
    int filter_mode = -1;                  // signal mode required occupied, -1 = none

    int total_modes() const { return n_signal_modes + n_ancilla_modes; }
};

struct RunResult {
    double postselect_probability;
    std::optional<ModeState> conditional_state;  // empty when probability < 1e-15
};

/// Balanced 3-mode DFT element on modes {0,1,2}.
OpticalElement tritter();

/// 2-mode mixer [[√(1−R), √R], [√R, −√(1−R)]].
OpticalElement beamsplitter(int mode_a, int mode_b, double reflectivity);
/// Full transfer of a mode into a (vacuum) ancilla port.
OpticalElement loss_port(int mode, int dump_mode);
OpticalElement phase_shift(int mode, double angle);

/// The composed unitary over all modes of the circuit.
Operator circuit_unitary(const OpticalCircuit& circuit);

/// Applies the circuit, projects on the postselection pattern and returns the
/// success probability plus the renormalized signal-mode state.
RunResult run_circuit(const OpticalCircuit& circuit, const ModeState& input);

/// Circuit realizing the discard Kraus operator K1 = diag(1/√2, 0, 1/√2):
/// mode B dumped, modes A and C attenuated by 50/50 couplings to vacuum,
/// postselected on the photon staying in the signal modes.
OpticalCircuit design_discard_circuit();

/// Signal-subspace operator of a circuit, column by column from unnormalized
/// conditional outputs on each basis mode.
Operator effective_kraus(const OpticalCircuit& circuit);

/// Aligns the largest-magnitude amplitude to be real positive; used for
/// global-phase-insensitive comparisons.
Ket phase_aligned(const Ket& v);

/// Parses the one-element-per-line circuit text format:
///   signal N / ancilla N / tritter a b c / beamsplitter i j R /
///   loss i j / phase i theta / postselect_empty i [j ...] / filter_mode i
/// '#' starts a comment. Throws std::invalid_argument with a line diagnostic.
OpticalCircuit parse_circuit(std::istream& in);
OpticalCircuit parse_circuit_file(const std::string& path);

}  // namespace qmh::photonics

#endif
