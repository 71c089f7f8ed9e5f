#ifndef QMH_QLINALG_HPP
#define QMH_QLINALG_HPP

#include <complex>
#include <stdexcept>
#include <vector>

// Small dense complex linear algebra for dimensions <= 9.
// Everything is double precision; values are immutable once built and all
// free functions are pure, so concurrent use is safe.

namespace qmh::qlinalg {

using cxd = std::complex<double>;

constexpr double kNormTol = 1e-12;      // state normalization
constexpr double kCheckTol = 1e-10;     // unitarity / positivity checks
constexpr double kGramSkipTol = 1e-6;   // residual cutoff in isometry completion

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Normalized (or soon-to-be-normalized) complex amplitude vector.
struct Ket {
    std::vector<cxd> amps;

    Ket() = default;
    explicit Ket(std::size_t dim) : amps(dim) {}
    Ket(std::initializer_list<cxd> a) : amps(a) {}

    std::size_t dim() const { return amps.size(); }
    cxd& operator[](std::size_t i) { return amps[i]; }
    const cxd& operator[](std::size_t i) const { return amps[i]; }

    double norm() const;
    /// Returns amps scaled to unit norm; throws on (near-)zero vectors.
    Ket normalized() const;

    static Ket basis(std::size_t dim, std::size_t index);
};

/// Dense square matrix, row-major.
struct Operator {
    std::size_t dim = 0;
    std::vector<cxd> entries;  // dim*dim, row-major

    Operator() = default;
    explicit Operator(std::size_t d) : dim(d), entries(d * d) {}

    cxd& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
    const cxd& at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }

    static Operator identity(std::size_t dim);
    /// |a⟩⟨b|
    static Operator outer(const Ket& a, const Ket& b);

    Operator adjoint() const;
    cxd trace() const;
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(cxd scale, const Operator& a);

/// ⟨a|b⟩, conjugating the first argument.
cxd inner(const Ket& a, const Ket& b);

/// Matrix-vector product; result norm is unconstrained.
Ket apply(const Operator& op, const Ket& v);

/// Largest entry magnitude of (a - b).
double max_abs_diff(const Operator& a, const Operator& b);

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Converges when the off-diagonal Frobenius mass drops below
/// 1e-14; fine for dim <= 9.
struct EigenSystem {
    std::vector<double> values;          // ascending
    std::vector<Ket> vectors;            // matching order, orthonormal
};
EigenSystem hermitian_eigensystem(const Operator& hermitian);

bool is_hermitian(const Operator& op, double tol);
bool is_positive_semidefinite(const Operator& op, double tol);
bool is_unitary(const Operator& op, double tol);

/// Principal square root of a PSD Hermitian matrix (negative rounding
/// eigenvalues are clamped to zero).
Operator sqrt_psd(const Operator& op);

struct NonOrthonormalColumns : std::invalid_argument {
    double max_gram_deviation;
    explicit NonOrthonormalColumns(double dev);
};

/// Completes k orthonormal columns to a full target_dim x target_dim unitary.
/// The remaining columns come from twice-applied classical Gram-Schmidt over
/// the canonical basis vectors, skipping candidates whose residual norm falls
/// below 1e-6, so the output is deterministic.
Operator complete_isometry(const std::vector<Ket>& columns, std::size_t target_dim);

}  // namespace qmh::qlinalg

#endif
