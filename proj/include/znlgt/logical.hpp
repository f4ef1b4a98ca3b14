#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "znlgt/dense.hpp"
#include "znlgt/gauss.hpp"
#include "znlgt/stabilizer.hpp"
#include "znlgt/termlist.hpp"

namespace znlgt {

/**
 * Rewrite one gauge-invariant monomial into the logical basis: decompose over
 * generators and logicals, drop the stabilizer exponents (logical identity)
 * and fold the residual omega power into the coefficient. The returned
 * monomial lives on the k logical qudits.
 */
inline std::pair<Complex, GenPauli> rewrite_term(const StabilizerCode& code, Complex coeff,
                                                 const GenPauli& monomial) {
    NormalizerDecomposition d;
    try {
        d = decompose_normalizer(code, monomial);
    } catch (const std::invalid_argument&) {
        std::string syn;
        for (int s : syndrome(code, monomial)) syn += std::to_string(s) + " ";
        throw std::invalid_argument("gauge-variant term: syndrome ( " + syn + ")");
    }
    GenPauli logical(code.levels, 0, d.lx_exps, d.lz_exps);
    return {coeff * omega_pow(code.levels, d.phase), std::move(logical)};
}

/// Term-by-term rewrite of a physical Hamiltonian; like logical monomials are
/// merged by coefficient addition. The first gauge-variant term aborts with
/// its index and syndrome.
inline TermList rewrite_hamiltonian(const StabilizerCode& code, const TermList& physical) {
    if (physical.levels != code.levels || physical.qudits != code.qudits)
        throw std::invalid_argument("Hamiltonian register does not match the code");
    TermList logical(code.levels, code.k());
    for (size_t i = 0; i < physical.terms.size(); ++i) {
        const auto& t = physical.terms[i];
        try {
            auto [c, op] = rewrite_term(code, t.coeff, t.op);
            logical.append(c, std::move(op));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("term " + std::to_string(i) + ": " + e.what());
        }
    }
    return logical.merged();
}

inline TermList rewrite_hamiltonian(const GaussCode& gc, const TermList& physical) {
    return rewrite_hamiltonian(gc.code, physical);
}

/// Dense realization of a logical TermList on the N^k logical space (logical
/// qudits treated as bare qudits).
inline DenseOperator logical_to_dense(const TermList& logical, long long cap = kDefaultDenseCapacity) {
    return logical.to_dense(cap);
}

/// Signed sum of adjacent-link occupation digits at a site (outgoing minus
/// incoming), evaluated on a logical basis index.
inline int link_flux_at(const SiteLinkIndex& idx, int site, const std::vector<int>& link_digits) {
    long long delta = 0;
    for (int l : idx.out_links[static_cast<size_t>(site)]) delta += link_digits[static_cast<size_t>(l)];
    for (int l : idx.in_links[static_cast<size_t>(site)]) delta -= link_digits[static_cast<size_t>(l)];
    return mod_norm(delta, idx.spec.levels);
}

/// Diagonal of the logical-basis image of the residual per-site Z2 generator:
/// -exp(i pi [delta_N(Delta + p - 1) + delta_N(Delta + p)]), a +-1 diagonal
/// whose +1 sector is exactly the image of the two-level site constraint.
inline Eigen::VectorXd residual_symmetry_logical_diag(const GaussCode& gc, int site) {
    const auto& idx = gc.index;
    const int N = idx.spec.levels;
    const int k = idx.n_links();
    const long long dim = dim_pow(N, k);
    const int p = staggered_parity(idx, site);
    Eigen::VectorXd diag(dim);
    std::vector<int> digits;
    for (long long v = 0; v < dim; ++v) {
        digits_of(v, N, k, digits);
        const int arg = mod_norm(link_flux_at(idx, site, digits) + p, N);
        const int exponent = (arg == 1 ? 1 : 0) + (arg == 0 ? 1 : 0);
        diag(v) = -(exponent % 2 == 0 ? 1.0 : -1.0);
    }
    return diag;
}

inline DenseOperator residual_symmetry_logical(const GaussCode& gc, int site,
                                               long long cap = kDefaultDenseCapacity) {
    const long long dim = dim_pow(gc.index.spec.levels, gc.index.n_links());
    require_capacity(dim, cap);
    return residual_symmetry_logical_diag(gc, site).cast<Complex>().asDiagonal();
}

} // namespace znlgt
