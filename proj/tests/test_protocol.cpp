#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>

#include "qmh/protocol.hpp"
#include "qmh/rng.hpp"

using namespace qmh::protocol;
using qmh::qlinalg::apply;
using qmh::qlinalg::inner;
using qmh::qlinalg::is_unitary;
using qmh::qlinalg::Ket;
using qmh::qlinalg::max_abs_diff;
using qmh::qlinalg::Operator;
using qmh::rng::RngStream;

namespace {

Ket random_ket(std::size_t dim, RngStream& rng) {
    Ket k(dim);
    for (std::size_t i = 0; i < dim; ++i)
        k[i] = cxd{rng.next_double() - 0.5, rng.next_double() - 0.5};
    return k.normalized();
}

DensityMatrix random_state(RngStream& rng) {
    // mixture of two random pure states
    const Ket a = random_ket(3, rng), b = random_ket(3, rng);
    const double w = rng.next_double();
    return DensityMatrix(cxd{w} * Operator::outer(a, a) + cxd{1.0 - w} * Operator::outer(b, b));
}

// Independent density-matrix oracle: builds the canonical Kraus pair from raw
// std::complex arithmetic (no qlinalg types on the construction path) and
// evaluates sum_i |<A|K_i|phi>|^2 weighted pieces directly.
struct OracleKraus {
    std::array<std::array<std::complex<double>, 3>, 3> k1{}, k2{};

    OracleKraus() {
        const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
        // K1 = sqrt(F1) = diag(1/sqrt2, 0, 1/sqrt2)
        k1[0][0] = 1.0 / s2;
        k1[2][2] = 1.0 / s2;
        // rotation frame {u, x, y} -> {t, eA, t2}
        const double u[3] = {0.5, 1.0 / s2, 0.5};
        const double x[3] = {1.0 / s2, 0.0, -1.0 / s2};
        const double y[3] = {u[1] * x[2] - u[2] * x[1], u[2] * x[0] - u[0] * x[2],
                             u[0] * x[1] - u[1] * x[0]};
        const double t[3] = {0.0, s2 / s3, 1.0 / s3};
        const double ea[3] = {1.0, 0.0, 0.0};
        const double t2[3] = {0.0, 1.0 / s3, -s2 / s3};
        const double sf2[3] = {1.0 / s2, 1.0, 1.0 / s2};  // sqrt(F2) diagonal
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                k2[r][c] = (t[r] * u[c] + ea[r] * x[c] + t2[r] * y[c]) * sf2[c];
    }

    // probability of A after the discard, on the density matrix rho
    double q(const std::array<std::array<std::complex<double>, 3>, 3>& rho) const {
        double total = 0.0;
        for (const auto& k : {k1, k2}) {
            // <A| K rho K† |A> = sum_{b,c} K[0][b] rho[b][c] conj(K[0][c])
            std::complex<double> s = 0.0;
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) s += k[0][b] * rho[b][c] * std::conj(k[0][c]);
            total += s.real();
        }
        return total;
    }
};

std::array<std::array<std::complex<double>, 3>, 3> pure_rho(const std::array<std::complex<double>, 3>& v) {
    std::array<std::array<std::complex<double>, 3>, 3> rho{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) rho[r][c] = v[r] * std::conj(v[c]);
    return rho;
}

}  // namespace

TEST_CASE("prepare_psi0") {
    const Ket psi = prepare_psi0();
    for (int i = 0; i < 3; ++i) {
        CHECK(psi[i].real() == doctest::Approx(0.5773502692).epsilon(1e-9));
        CHECK(psi[i].imag() == 0.0);
    }
    CHECK(std::abs(psi.norm() - 1.0) < 1e-15);
    const double overlap_b = std::norm(inner(Ket::basis(3, 1), psi));
    CHECK(overlap_b == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("build_discard_povm invariants") {
    const auto m = build_discard_povm();

    CHECK(max_abs_diff(m.effects[0] + m.effects[1], Operator::identity(3)) <= 1e-12);
    for (int i = 0; i < 2; ++i)
        CHECK(qmh::qlinalg::is_positive_semidefinite(m.effects[i], 1e-10));
    CHECK(max_abs_diff(m.kraus[0].adjoint() * m.kraus[0] + m.kraus[1].adjoint() * m.kraus[1],
                       Operator::identity(3)) <= 1e-10);

    const Ket psi = prepare_psi0();
    const Ket fpsi = apply(m.effects[0], psi);
    CHECK(inner(psi, fpsi).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    // F2 branch of the protocol input never reaches A
    const Ket k2psi = apply(m.kraus[1], psi);
    CHECK(std::norm(k2psi[0]) <= 1e-20);
}

TEST_CASE("dilation reproduces both Kraus branches") {
    const auto m = build_discard_povm();
    CHECK(is_unitary(m.dilation, 1e-10));
    CHECK(m.ancilla_outcome_map[0] == 1);
    CHECK(m.ancilla_outcome_map[1] == 0);

    RngStream rng(21, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const Ket phi = random_ket(3, rng);
        Ket big(6);
        for (int i = 0; i < 3; ++i) big[2 * i] = phi[i];  // phi ⊗ |0>
        const Ket out = apply(m.dilation, big);
        const Ket want1 = apply(m.kraus[0], phi);
        const Ket want2 = apply(m.kraus[1], phi);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(out[2 * i + 1] - want1[i]) < 1e-10);
            CHECK(std::abs(out[2 * i + 0] - want2[i]) < 1e-10);
        }
    }
}

TEST_CASE("measure_discard") {
    const auto m = build_discard_povm();

    SUBCASE("on psi0") {
        const auto branches = measure_discard(m, DensityMatrix::pure(prepare_psi0()));
        CHECK(branches[0].probability == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
        CHECK(branches[0].probability + branches[1].probability == doctest::Approx(1.0).epsilon(1e-13));
        REQUIRE(branches[0].post_state.has_value());
        // conditional state |psi1><psi1| with psi1 = (|A>+|C>)/sqrt2
        const Ket psi1{1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0)};
        CHECK(max_abs_diff(branches[0].post_state->op(), Operator::outer(psi1, psi1)) < 1e-12);
    }

    SUBCASE("F1 annihilates |B>") {
        const auto branches = measure_discard(m, DensityMatrix::pure(Ket::basis(3, 1)));
        CHECK(branches[0].probability == 0.0);
        CHECK_FALSE(branches[0].post_state.has_value());
        CHECK(branches[1].probability == doctest::Approx(1.0).epsilon(1e-13));
    }

    SUBCASE("maximally mixed") {
        const auto branches = measure_discard(m, DensityMatrix::maximally_mixed(3));
        CHECK(branches[0].probability == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    }
}

TEST_CASE("projective_prob") {
    const Ket psi1{1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0)};
    CHECK(projective_prob(DensityMatrix::pure(psi1), 0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(projective_prob(DensityMatrix::pure(Ket::basis(3, 1)), 0) == 0.0);
    CHECK(projective_prob(DensityMatrix::maximally_mixed(3), 0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK_THROWS_AS(projective_prob(DensityMatrix::maximally_mixed(3), 3), std::out_of_range);
}

TEST_CASE("q_quantum") {
    const auto m = build_discard_povm();
    CHECK(q_quantum(m, DensityMatrix::pure(prepare_psi0())) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(q_quantum(m, DensityMatrix::pure(Ket::basis(3, 1))) == doctest::Approx(0.0).epsilon(1e-20));

    // cross-check |A><A| against the independent oracle
    const OracleKraus oracle;
    const double expected = oracle.q(pure_rho({1.0, 0.0, 0.0}));
    // frozen oracle value: |K1[A][A]|^2 + |K2[A][A]|^2 = 1/2 + 1/4
    CHECK(expected == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(q_quantum(m, DensityMatrix::pure(Ket::basis(3, 0))) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(q_quantum(m, DensityMatrix::pure(Ket::basis(3, 0))) ==
          doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("q_quantum agrees with the oracle on random states") {
    const auto m = build_discard_povm();
    const OracleKraus oracle;
    RngStream rng(33, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const Ket phi = random_ket(3, rng);
        std::array<std::complex<double>, 3> v{phi[0], phi[1], phi[2]};
        CHECK(q_quantum(m, DensityMatrix::pure(phi)) ==
              doctest::Approx(oracle.q(pure_rho(v))).epsilon(1e-11));
    }
}

TEST_CASE("Born consistency on random states") {
    const auto m = build_discard_povm();
    RngStream rng(17, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto branches = measure_discard(m, random_state(rng));
        for (const auto& b : branches) {
            CHECK(b.probability >= -1e-15);
            CHECK(b.probability <= 1.0 + 1e-15);
        }
        CHECK(branches[0].probability + branches[1].probability ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("apply_white_noise") {
    const auto psi0 = DensityMatrix::pure(prepare_psi0());
    CHECK(max_abs_diff(apply_white_noise(psi0, 0.0).op(), psi0.op()) < 1e-15);
    CHECK(max_abs_diff(apply_white_noise(psi0, 1.0).op(), DensityMatrix::maximally_mixed(3).op()) <
          1e-15);

    const auto half = apply_white_noise(psi0, 0.5);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const double want = (r == c) ? 1.0 / 3.0 : 1.0 / 6.0;
            CHECK(half.op().at(r, c).real() == doctest::Approx(want).epsilon(1e-13));
            CHECK(half.op().at(r, c).imag() == 0.0);
        }

    CHECK_THROWS_AS(apply_white_noise(psi0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(apply_white_noise(psi0, -0.1), std::invalid_argument);
}

TEST_CASE("q_noise_curve") {
    const auto m = build_discard_povm();
    std::vector<double> eps;
    for (int i = 0; i <= 10; ++i) eps.push_back(i * 0.1);
    const auto curve = q_noise_curve(m, eps);
    REQUIRE(curve.size() == 11);

    CHECK(curve.front().q_computed == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(std::abs(curve.front().delta) < 1e-12);

    // the pinned Kraus choice reproduces the closed form along the whole curve
    for (const auto& p : curve) CHECK(std::abs(p.delta) < 1e-12);
    // monotone in epsilon (reported behavior of this construction)
    for (std::size_t i = 0; i + 1 < curve.size(); ++i)
        CHECK(curve[i].q_computed < curve[i + 1].q_computed);
    // ... and stays below the deterministic bound short of full depolarization
    for (const auto& p : curve)
        if (p.epsilon <= 0.9) CHECK(p.q_computed < 1.0 / 3.0 - 1e-6);
}
