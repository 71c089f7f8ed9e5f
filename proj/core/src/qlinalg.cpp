#include "qmh/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qmh::qlinalg {

double Ket::norm() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

Ket Ket::normalized() const {
    const double n = norm();
    if (n < 1e-12) throw std::invalid_argument("cannot normalize a zero vector");
    Ket out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = amps[i] / n;
    return out;
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::out_of_range("basis index out of range");
    Ket k(dim);
    k[index] = 1.0;
    return k;
}

Operator Operator::identity(std::size_t dim) {
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i) op.at(i, i) = 1.0;
    return op;
}

Operator Operator::outer(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("outer: dimension mismatch");
    Operator op(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            op.at(r, c) = a[r] * std::conj(b[c]);
    return op;
}

Operator Operator::adjoint() const {
    Operator out(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            out.at(c, r) = std::conj(at(r, c));
    return out;
}

cxd Operator::trace() const {
    cxd t = 0.0;
    for (std::size_t i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

Operator operator*(const Operator& a, const Operator& b) {
    if (a.dim != b.dim) throw DimensionMismatch("operator product: dimension mismatch");
    Operator out(a.dim);
    for (std::size_t r = 0; r < a.dim; ++r)
        for (std::size_t k = 0; k < a.dim; ++k) {
            const cxd ark = a.at(r, k);
            if (ark == cxd{}) continue;
            for (std::size_t c = 0; c < a.dim; ++c)
                out.at(r, c) += ark * b.at(k, c);
        }
    return out;
}

Operator operator+(const Operator& a, const Operator& b) {
    if (a.dim != b.dim) throw DimensionMismatch("operator sum: dimension mismatch");
    Operator out(a.dim);
    for (std::size_t i = 0; i < a.entries.size(); ++i) out.entries[i] = a.entries[i] + b.entries[i];
    return out;
}

Operator operator-(const Operator& a, const Operator& b) {
    if (a.dim != b.dim) throw DimensionMismatch("operator difference: dimension mismatch");
    Operator out(a.dim);
    for (std::size_t i = 0; i < a.entries.size(); ++i) out.entries[i] = a.entries[i] - b.entries[i];
    return out;
}

Operator operator*(cxd scale, const Operator& a) {
    Operator out(a.dim);
    for (std::size_t i = 0; i < a.entries.size(); ++i) out.entries[i] = scale * a.entries[i];
    return out;
}

cxd inner(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("inner: dimension mismatch");
    cxd s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

Ket apply(const Operator& op, const Ket& v) {
    if (op.dim != v.dim()) throw DimensionMismatch("apply: dimension mismatch");
    Ket out(v.dim());
    for (std::size_t r = 0; r < op.dim; ++r) {
        cxd s = 0.0;
        for (std::size_t c = 0; c < op.dim; ++c) s += op.at(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

double max_abs_diff(const Operator& a, const Operator& b) {
    if (a.dim != b.dim) throw DimensionMismatch("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

bool is_hermitian(const Operator& op, double tol) {
    for (std::size_t r = 0; r < op.dim; ++r)
        for (std::size_t c = 0; c < op.dim; ++c)
            if (std::abs(op.at(r, c) - std::conj(op.at(c, r))) > tol) return false;
    return true;
}

namespace {

double offdiag_mass(const Operator& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.dim; ++r)
        for (std::size_t c = 0; c < a.dim; ++c)
            if (r != c) s += std::norm(a.at(r, c));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q); the rotation is accumulated
// into v so columns of v end up as eigenvectors.
void jacobi_rotate(Operator& a, Operator& v, std::size_t p, std::size_t q) {
    const cxd apq = a.at(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cxd phase = apq / mag;
    const double app = a.at(p, p).real();
    const double aqq = a.at(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // columns: col_p' = c*col_p - s*conj(phase)*col_q ; col_q' = s*phase*col_p + c*col_q
    const std::size_t n = a.dim;
    for (std::size_t r = 0; r < n; ++r) {
        const cxd arp = a.at(r, p), arq = a.at(r, q);
        a.at(r, p) = c * arp - s * std::conj(phase) * arq;
        a.at(r, q) = s * phase * arp + c * arq;
    }
    for (std::size_t col = 0; col < n; ++col) {
        const cxd apc = a.at(p, col), aqc = a.at(q, col);
        a.at(p, col) = c * apc - s * phase * aqc;
        a.at(q, col) = s * std::conj(phase) * apc + c * aqc;
    }
    for (std::size_t r = 0; r < n; ++r) {
        const cxd vrp = v.at(r, p), vrq = v.at(r, q);
        v.at(r, p) = c * vrp - s * std::conj(phase) * vrq;
        v.at(r, q) = s * phase * vrp + c * vrq;
    }
}

}  // namespace

EigenSystem hermitian_eigensystem(const Operator& hermitian) {
    if (!is_hermitian(hermitian, 1e-9))
        throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian");
    Operator a = hermitian;
    // symmetrize away rounding asymmetry
    for (std::size_t r = 0; r < a.dim; ++r)
        for (std::size_t c = 0; c < a.dim; ++c)
            a.at(r, c) = 0.5 * (a.at(r, c) + std::conj(hermitian.at(c, r)));

    Operator v = Operator::identity(a.dim);
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && offdiag_mass(a) > 1e-14; ++sweep)
        for (std::size_t p = 0; p + 1 < a.dim; ++p)
            for (std::size_t q = p + 1; q < a.dim; ++q)
                jacobi_rotate(a, v, p, q);

    EigenSystem es;
    es.values.resize(a.dim);
    std::vector<std::size_t> order(a.dim);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(a.dim);
    for (std::size_t i = 0; i < a.dim; ++i) diag[i] = a.at(i, i).real();
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
    for (std::size_t i = 0; i < a.dim; ++i) {
        es.values[i] = diag[order[i]];
        Ket col(a.dim);
        for (std::size_t r = 0; r < a.dim; ++r) col[r] = v.at(r, order[i]);
        es.vectors.push_back(std::move(col));
    }
    return es;
}

bool is_positive_semidefinite(const Operator& op, double tol) {
    if (op.dim == 0) return true;
    if (!is_hermitian(op, tol)) return false;
    const auto es = hermitian_eigensystem(op);
    return es.values.front() >= -tol;
}

bool is_unitary(const Operator& op, double tol) {
    const Operator gram = op.adjoint() * op;
    return max_abs_diff(gram, Operator::identity(op.dim)) <= tol;
}

Operator sqrt_psd(const Operator& op) {
    const auto es = hermitian_eigensystem(op);
    Operator out(op.dim);
    for (std::size_t k = 0; k < op.dim; ++k) {
        const double lam = std::max(es.values[k], 0.0);
        const double root = std::sqrt(lam);
        for (std::size_t r = 0; r < op.dim; ++r)
            for (std::size_t c = 0; c < op.dim; ++c)
                out.at(r, c) += root * es.vectors[k][r] * std::conj(es.vectors[k][c]);
    }
    return out;
}

NonOrthonormalColumns::NonOrthonormalColumns(double dev)
    : std::invalid_argument("complete_isometry: input columns are not orthonormal (max Gram deviation " +
                            std::to_string(dev) + ")"),
      max_gram_deviation(dev) {}

Operator complete_isometry(const std::vector<Ket>& columns, std::size_t target_dim) {
    if (columns.size() > target_dim)
        throw std::invalid_argument("complete_isometry: more columns than target dimension");
    for (const auto& c : columns)
        if (c.dim() != target_dim)
            throw DimensionMismatch("complete_isometry: column dimension mismatch");

    double gram_dev = 0.0;
    for (std::size_t i = 0; i < columns.size(); ++i)
        for (std::size_t j = 0; j < columns.size(); ++j) {
            const cxd g = inner(columns[i], columns[j]);
            gram_dev = std::max(gram_dev, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    if (gram_dev > 1e-8) throw NonOrthonormalColumns(gram_dev);

    std::vector<Ket> basis = columns;
    for (std::size_t cand = 0; cand < target_dim && basis.size() < target_dim; ++cand) {
        Ket r = Ket::basis(target_dim, cand);
        // classical Gram-Schmidt, applied twice
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                const cxd proj = inner(b, r);
                for (std::size_t i = 0; i < target_dim; ++i) r[i] -= proj * b[i];
            }
        if (r.norm() < kGramSkipTol) continue;
        basis.push_back(r.normalized());
    }
    if (basis.size() != target_dim)
        throw std::runtime_error("complete_isometry: orthonormal completion failed");

    Operator out(target_dim);
    for (std::size_t c = 0; c < target_dim; ++c)
        for (std::size_t r = 0; r < target_dim; ++r)
            out.at(r, c) = basis[c][r];
    return out;
}

}  // namespace qmh::qlinalg
