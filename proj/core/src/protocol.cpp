#include "qmh/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace qmh::protocol {

using qlinalg::complete_isometry;
using qlinalg::inner;
using qlinalg::is_positive_semidefinite;
using qlinalg::is_unitary;
using qlinalg::max_abs_diff;
using qlinalg::sqrt_psd;

DensityMatrix::DensityMatrix(Operator entries) : entries_(std::move(entries)) {
    if (!qlinalg::is_hermitian(entries_, 1e-12))
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(entries_.trace() - cxd{1.0}) > 1e-12)
        throw std::invalid_argument("DensityMatrix: trace differs from 1");
    if (!is_positive_semidefinite(entries_, 1e-10))
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const Ket& psi) {
    const Ket n = psi.normalized();
    return DensityMatrix(Operator::outer(n, n));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(cxd{1.0 / static_cast<double>(dim)} * Operator::identity(dim));
}

MeasurementModel::MeasurementModel(std::array<Operator, 2> effects_, std::array<Operator, 2> kraus_,
                                   Operator dilation_, std::array<int, 2> outcome_map)
    : effects(std::move(effects_)),
      kraus(std::move(kraus_)),
      dilation(std::move(dilation_)),
      ancilla_outcome_map(outcome_map) {
    const Operator id = Operator::identity(effects[0].dim);
    if (max_abs_diff(effects[0] + effects[1], id) > 1e-12)
        throw std::invalid_argument("MeasurementModel: effects do not sum to identity");
    for (int i = 0; i < 2; ++i) {
        if (!is_positive_semidefinite(effects[i], 1e-10))
            throw std::invalid_argument("MeasurementModel: effect not PSD");
        if (max_abs_diff(kraus[i].adjoint() * kraus[i], effects[i]) > 1e-10)
            throw std::invalid_argument("MeasurementModel: Kraus/effect mismatch");
    }
    if (!is_unitary(dilation, 1e-10))
        throw std::invalid_argument("MeasurementModel: dilation not unitary");
    // dilation restricted to (.)⊗|0⟩ must reproduce both Kraus branches
    const std::size_t d = effects[0].dim;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t r = 0; r < d; ++r) {
            const cxd want1 = kraus[0].at(r, j);  // ancilla |1⟩ flags F1
            const cxd want2 = kraus[1].at(r, j);  // ancilla |0⟩ flags F2
            if (std::abs(dilation.at(2 * r + 1, 2 * j) - want1) > 1e-10 ||
                std::abs(dilation.at(2 * r + 0, 2 * j) - want2) > 1e-10)
                throw std::invalid_argument("MeasurementModel: dilation/Kraus mismatch");
        }
    }
}

Ket prepare_psi0() {
    const double a = 1.0 / std::sqrt(3.0);
    return Ket{a, a, a};
}

namespace {

// V maps the orthonormal frame {u, x, y} onto {t, e_A, t2}:
//   u  = √F2|ψ0⟩ normalized          = (1/2, 1/√2, 1/2)
//   x  = (e_A − e_C)/√2
//   y  = u × x
//   t  = (0, √2/√3, 1/√3)   (zero A-component, B:C ratio of √F2|ψ0⟩)
//   t2 = (0, 1/√3, −√2/√3)
// With this choice K2 = V√F2 sends |ψ0⟩ to t exactly and ⟨A|K2 K2†|A⟩ = 1/2,
// so the white-noise curve equals (1+ε)/6.
Operator build_k2_rotation() {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    const std::array<double, 3> u = {0.5, 1.0 / s2, 0.5};
    const std::array<double, 3> x = {1.0 / s2, 0.0, -1.0 / s2};
    const std::array<double, 3> y = {u[1] * x[2] - u[2] * x[1], u[2] * x[0] - u[0] * x[2],
                                     u[0] * x[1] - u[1] * x[0]};
    const std::array<double, 3> t = {0.0, s2 / s3, 1.0 / s3};
    const std::array<double, 3> ea = {1.0, 0.0, 0.0};
    const std::array<double, 3> t2 = {0.0, 1.0 / s3, -s2 / s3};

    Operator v(3);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            v.at(r, c) = t[r] * u[c] + ea[r] * x[c] + t2[r] * y[c];
    return v;
}

}  // namespace

MeasurementModel build_discard_povm() {
    Operator f1(3);
    f1.at(0, 0) = 0.5;
    f1.at(2, 2) = 0.5;
    const Operator f2 = Operator::identity(3) - f1;

    Operator k1(3);  // √F1
    k1.at(0, 0) = 1.0 / std::sqrt(2.0);
    k1.at(2, 2) = 1.0 / std::sqrt(2.0);
    const Operator k2 = build_k2_rotation() * sqrt_psd(f2);

    // dilation columns for qutrit basis ⊗ |0⟩, index convention 2*qutrit+ancilla
    std::vector<Ket> columns;
    for (std::size_t j = 0; j < 3; ++j) {
        Ket col(6);
        for (std::size_t r = 0; r < 3; ++r) {
            col[2 * r + 1] = k1.at(r, j);
            col[2 * r + 0] = k2.at(r, j);
        }
        columns.push_back(std::move(col));
    }
    const Operator completed = complete_isometry(columns, 6);
    // reorder so column 2*j carries the image of basis j ⊗ |0⟩
    Operator dilation(6);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t r = 0; r < 6; ++r) {
            dilation.at(r, 2 * j) = completed.at(r, j);
            dilation.at(r, 2 * j + 1) = completed.at(r, j + 3);
        }

    return MeasurementModel({f1, f2}, {k1, k2}, std::move(dilation), {1, 0});
}

std::array<BranchOutcome, 2> measure_discard(const MeasurementModel& model,
                                             const DensityMatrix& state) {
    if (state.dim() != model.effects[0].dim)
        throw qlinalg::DimensionMismatch("measure_discard: dimension mismatch");
    std::array<BranchOutcome, 2> out = {BranchOutcome{1, 0.0, std::nullopt},
                                        BranchOutcome{2, 0.0, std::nullopt}};
    for (int i = 0; i < 2; ++i) {
        const Operator mapped = model.kraus[i] * state.op() * model.kraus[i].adjoint();
        const double p = mapped.trace().real();
        out[i].probability = p;
        if (p >= 1e-15) out[i].post_state = DensityMatrix(cxd{1.0 / p} * mapped);
    }
    return out;
}

double projective_prob(const DensityMatrix& state, int basis_index) {
    if (basis_index < 0 || static_cast<std::size_t>(basis_index) >= state.dim())
        throw std::out_of_range("projective_prob: basis index out of range");
    return state.op().at(basis_index, basis_index).real();
}

double q_quantum(const MeasurementModel& model, const DensityMatrix& state) {
    // Σ_i ⟨A|K_i ρ K_i†|A⟩; summing the unnormalized branch weight avoids the
    // 0/0 of conditioning on a zero-probability branch.
    double q = 0.0;
    for (int i = 0; i < 2; ++i) {
        const Operator mapped = model.kraus[i] * state.op() * model.kraus[i].adjoint();
        q += mapped.at(index_of(BasisLabel::A), index_of(BasisLabel::A)).real();
    }
    return q;
}

DensityMatrix apply_white_noise(const DensityMatrix& state, double epsilon) {
    if (epsilon < 0.0 || epsilon > 1.0)
        throw std::invalid_argument("apply_white_noise: epsilon outside [0,1]");
    const std::size_t d = state.dim();
    const Operator mixed =
        cxd{1.0 - epsilon} * state.op() + cxd{epsilon / static_cast<double>(d)} * Operator::identity(d);
    return DensityMatrix(mixed);
}

std::vector<NoisePoint> q_noise_curve(const MeasurementModel& model,
                                      const std::vector<double>& epsilons) {
    const DensityMatrix psi0 = DensityMatrix::pure(prepare_psi0());
    std::vector<NoisePoint> curve;
    curve.reserve(epsilons.size());
    for (const double eps : epsilons) {
        const double q = q_quantum(model, apply_white_noise(psi0, eps));
        const double formula = (1.0 + eps) / 6.0;
        curve.push_back({eps, q, formula, q - formula});
    }
    return curve;
}

}  // namespace qmh::protocol
