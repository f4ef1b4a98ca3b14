#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "znlgt/dense.hpp"
#include "znlgt/pauli.hpp"

namespace znlgt {

struct Term {
    Complex coeff;
    GenPauli op;
};

/**
 * A weighted sum of generalized Pauli monomials on a fixed register — the
 * carrier for Hamiltonians in both the physical and logical bases. Terms are
 * kept in construction order; merging like monomials is an explicit step
 * (merged()), not something builders do behind the caller's back.
 */
struct TermList {
    int levels = 2;
    int qudits = 1;
    std::vector<Term> terms;

    TermList() = default;
    TermList(int N, int n) : levels(N), qudits(n) { require_prime(N); }

    void append(Complex c, GenPauli p) {
        if (p.levels != levels || p.qudits() != qudits)
            throw std::invalid_argument("term does not match the register of this TermList");
        terms.push_back({c, std::move(p)});
    }

    /// Identity-monomial convenience (constant shift).
    void append_scalar(Complex c) { append(c, GenPauli::identity(levels, qudits)); }

    size_t size() const { return terms.size(); }

    TermList scaled(Complex s) const {
        TermList r(levels, qudits);
        r.terms.reserve(terms.size());
        for (const auto& t : terms) r.terms.push_back({s * t.coeff, t.op});
        return r;
    }

    /// Hermitian adjoint, term by term.
    TermList adjointed() const {
        TermList r(levels, qudits);
        r.terms.reserve(terms.size());
        for (const auto& t : terms) r.terms.push_back({std::conj(t.coeff), adjoint(t.op)});
        return r;
    }

    void append_all(const TermList& other) {
        if (other.levels != levels || other.qudits != qudits)
            throw std::invalid_argument("TermList register mismatch");
        for (const auto& t : other.terms) terms.push_back(t);
    }

    /// Canonical merged form: the omega^phase of each monomial is folded into
    /// its coefficient, like (x,z) monomials are combined, and coefficients
    /// below drop_tol are discarded.
    TermList merged(double drop_tol = 1e-14) const {
        std::map<std::pair<std::vector<int>, std::vector<int>>, Complex> acc;
        for (const auto& t : terms) {
            const Complex c = t.coeff * omega_pow(levels, t.op.phase);
            acc[{t.op.xexp, t.op.zexp}] += c;
        }
        TermList r(levels, qudits);
        for (const auto& [key, c] : acc) {
            if (std::abs(c) < drop_tol) continue;
            r.terms.push_back({c, GenPauli(levels, 0, key.first, key.second)});
        }
        return r;
    }

    /// Generalized Pauli monomials are Hilbert-Schmidt orthogonal, so two
    /// merged lists are equal iff all matched coefficients agree. Returns the
    /// largest coefficient discrepancy (an exact proxy for the dense
    /// elementwise comparison, scale aside).
    static double max_coeff_diff(const TermList& a, const TermList& b) {
        std::map<std::pair<std::vector<int>, std::vector<int>>, Complex> acc;
        for (const auto& t : a.merged(0.0).terms) acc[{t.op.xexp, t.op.zexp}] += t.coeff;
        for (const auto& t : b.merged(0.0).terms) acc[{t.op.xexp, t.op.zexp}] -= t.coeff;
        double m = 0.0;
        for (const auto& [key, c] : acc) m = std::max(m, std::abs(c));
        return m;
    }

    DenseOperator to_dense(long long cap = kDefaultDenseCapacity) const {
        const long long dim = dim_pow(levels, qudits);
        require_capacity(dim, cap);
        DenseOperator m = DenseOperator::Zero(dim, dim);
        for (const auto& t : terms) {
            for (long long v = 0; v < dim; ++v) {
                const BasisImage im = apply_to_basis(t.op, v);
                m(im.index, v) += t.coeff * im.amp;
            }
        }
        return m;
    }

    /// Sparse application to a basis column: accumulates amplitudes of
    /// (sum_t coeff_t * op_t)|v> into a map keyed by basis index.
    void apply_to_basis_column(long long v, std::map<long long, Complex>& out) const {
        for (const auto& t : terms) {
            const BasisImage im = apply_to_basis(t.op, v);
            out[im.index] += t.coeff * im.amp;
        }
    }

    DenseState apply(const DenseState& psi) const {
        DenseState out = DenseState::Zero(psi.size());
        for (const auto& t : terms) {
            for (long long v = 0; v < psi.size(); ++v) {
                if (psi(v) == Complex(0.0, 0.0)) continue;
                const BasisImage im = apply_to_basis(t.op, v);
                out(im.index) += t.coeff * im.amp * psi(v);
            }
        }
        return out;
    }
};

/// Pairwise operator product (a then b means matrix product a*b).
inline TermList mul(const TermList& a, const TermList& b) {
    if (a.levels != b.levels || a.qudits != b.qudits)
        throw std::invalid_argument("TermList register mismatch");
    TermList r(a.levels, a.qudits);
    r.terms.reserve(a.size() * b.size());
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms)
            r.terms.push_back({ta.coeff * tb.coeff, mul(ta.op, tb.op)});
    return r;
}

/// Embed a single-qudit TermList as acting on qudit q of an n-qudit register.
inline TermList lift(const TermList& local, int q, int n) {
    if (local.qudits != 1)
        throw std::invalid_argument("lift expects a single-qudit TermList");
    TermList r(local.levels, n);
    r.terms.reserve(local.size());
    for (const auto& t : local.terms) {
        GenPauli p(local.levels, n);
        p.phase = t.op.phase;
        p.xexp[static_cast<size_t>(q)] = t.op.xexp[0];
        p.zexp[static_cast<size_t>(q)] = t.op.zexp[0];
        r.terms.push_back({t.coeff, std::move(p)});
    }
    return r;
}

} // namespace znlgt
