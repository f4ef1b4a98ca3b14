#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "znlgt/dense.hpp"
#include "znlgt/encoding.hpp"
#include "znlgt/gauss.hpp"
#include "znlgt/lattice.hpp"
#include "znlgt/logical.hpp"

namespace znlgt {

/**
 * Truncated boson operators on one N-level space: creation/annihilation with
 * the hard cutoff phi^dagger |N-1> = 0, the number operator, and rho, the
 * Fourier conjugate of the number operator. rho is oriented so that
 * exp(i 2 pi rho / N) is exactly the cyclic increment X.
 */
struct BosonOps {
    int levels;
    DenseOperator create;
    DenseOperator annihilate;
    DenseOperator number;
    DenseOperator rho;
};

inline BosonOps boson_ops(int N) {
    if (N < 2) throw std::invalid_argument("boson operators need N >= 2");
    BosonOps b;
    b.levels = N;
    b.create = DenseOperator::Zero(N, N);
    for (int n = 0; n + 1 < N; ++n) b.create(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
    b.annihilate = b.create.adjoint();
    // phi^dagger phi in exact integer form
    b.number = DenseOperator::Zero(N, N);
    for (int n = 0; n < N; ++n) b.number(n, n) = static_cast<double>(n);
    const DenseOperator f = qft_dense(N);
    b.rho = f.adjoint() * b.number * f;
    return b;
}

/// delta_N(Delta_site + p_site - 1) on the logical space, built from the
/// exact N-term Fourier sum and rounded to a crisp 0/1 diagonal.
inline Eigen::VectorXd pi_projector_diag(const GaussCode& gc, int site) {
    const auto& idx = gc.index;
    const int N = idx.spec.levels;
    const int k = idx.n_links();
    const long long dim = dim_pow(N, k);
    const int p = staggered_parity(idx, site);
    Eigen::VectorXd diag(dim);
    std::vector<int> digits;
    for (long long v = 0; v < dim; ++v) {
        digits_of(v, N, k, digits);
        const int arg = mod_norm(link_flux_at(idx, site, digits) + p - 1, N);
        Complex s = 0.0;
        for (int j = 0; j < N; ++j) s += omega_pow(N, static_cast<long long>(j) * arg);
        s /= static_cast<double>(N);
        const double rounded = std::round(s.real());
        if (std::abs(s - Complex(rounded, 0.0)) > 1e-12)
            throw std::logic_error("Fourier delta failed to round to an integer diagonal");
        diag(v) = rounded;
    }
    return diag;
}

inline DenseOperator pi_projector(const GaussCode& gc, int site,
                                  long long cap = kDefaultDenseCapacity) {
    require_capacity(dim_pow(gc.index.spec.levels, gc.index.n_links()), cap);
    return pi_projector_diag(gc, site).cast<Complex>().asDiagonal();
}

// ---------------------------------------------------------------------------
// Bosonic-dual Hamiltonians on the logical space. Terms are kept in a
// structured form (diagonal factors sandwiching a digit shift) so the dual
// can be applied column-by-column at dimensions where a dense matrix would
// not fit.
// ---------------------------------------------------------------------------

struct DualTerm {
    Complex coeff{1.0, 0.0};
    std::vector<int> shift;      // per logical qudit, applied after diag_right
    Eigen::VectorXd diag_right;  // evaluated on the input index (empty = 1)
    Eigen::VectorXd diag_left;   // evaluated on the shifted index (empty = 1)
};

struct DualOperator {
    int levels = 3;
    int qudits = 1; // logical qudits
    long long dim = 1;
    Eigen::VectorXd diagonal;    // accumulated purely diagonal part
    std::vector<DualTerm> terms; // shift terms

    DualOperator(int N, int k) : levels(N), qudits(k), dim(dim_pow(N, k)) {
        diagonal = Eigen::VectorXd::Zero(dim);
    }

    long long shifted_index(long long v, const std::vector<int>& shift) const {
        std::vector<int> digits;
        digits_of(v, levels, qudits, digits);
        for (int q = 0; q < qudits; ++q)
            digits[static_cast<size_t>(q)] =
                mod_add(digits[static_cast<size_t>(q)], shift[static_cast<size_t>(q)], levels);
        return index_of(digits, levels);
    }

    void apply_to_basis_column(long long v, std::map<long long, Complex>& out) const {
        if (diagonal(v) != 0.0) out[v] += diagonal(v);
        for (const auto& t : terms) {
            Complex a = t.coeff;
            if (t.diag_right.size() > 0) {
                a *= t.diag_right(v);
                if (a == Complex(0.0, 0.0)) continue;
            }
            const long long w = shifted_index(v, t.shift);
            if (t.diag_left.size() > 0) a *= t.diag_left(w);
            if (a != Complex(0.0, 0.0)) out[w] += a;
        }
    }

    DenseOperator to_dense(long long cap = kDefaultDenseCapacity) const {
        require_capacity(dim, cap);
        DenseOperator m = DenseOperator::Zero(dim, dim);
        std::map<long long, Complex> col;
        for (long long v = 0; v < dim; ++v) {
            col.clear();
            apply_to_basis_column(v, col);
            for (const auto& [w, a] : col) m(w, v) += a;
        }
        return m;
    }
};

namespace detail_dual {

/// (-1)^{sum_string (1 - pi_k)}: the Jordan-Wigner phase string of a y-link,
/// realized as a +-1 diagonal.
inline Eigen::VectorXd string_phase_diag(const GaussCode& gc, const std::vector<int>& sites) {
    const long long dim = dim_pow(gc.index.spec.levels, gc.index.n_links());
    Eigen::VectorXd d = Eigen::VectorXd::Ones(dim);
    for (int s : sites) {
        const Eigen::VectorXd pi = pi_projector_diag(gc, s);
        for (long long v = 0; v < dim; ++v) d(v) *= (pi(v) > 0.5 ? 1.0 : -1.0);
    }
    return d;
}

} // namespace detail_dual

/**
 * Bosonic dual of the gauge Hamiltonian on the logical link space:
 * on-site cosine electric terms, staggered-delta mass terms, projected
 * incrementer hopping (with the +-1 string phases on y-links) and, in two
 * dimensions, cosine plaquette terms. Built from the operator formulas
 * directly; the duality checks assert it equals the mechanical logical
 * rewrite of the physical Hamiltonian.
 */
inline DualOperator build_dual(const GaussCode& gc, const HamiltonianParams& p) {
    const auto& idx = gc.index;
    const int N = idx.spec.levels;
    const int k = idx.n_links();
    DualOperator h(N, k);

    // electric: -2 lambda_E sum_links cos(2 pi n / N)
    std::vector<int> digits;
    for (long long v = 0; v < h.dim; ++v) {
        digits_of(v, N, k, digits);
        double d = 0.0;
        for (int l = 0; l < k; ++l)
            d += -2.0 * p.lambda_e *
                 std::cos(2.0 * M_PI * digits[static_cast<size_t>(l)] / static_cast<double>(N));
        h.diagonal(v) += d;
    }

    // mass: m sum_sites (-1)^{|x|} pi_site
    for (int s = 0; s < idx.n_sites; ++s) {
        const double sign = staggered_parity(idx, s) == 0 ? 1.0 : -1.0;
        h.diagonal += (p.m * sign) * pi_projector_diag(gc, s);
    }

    // hopping: -eps sum_links P_link (pi_from e^{i 2 pi rho / N} pi_to + h.c.)
    for (int l = 0; l < k; ++l) {
        const auto& link = idx.links[static_cast<size_t>(l)];
        const Eigen::VectorXd pi_from = pi_projector_diag(gc, link.from);
        const Eigen::VectorXd pi_to = pi_projector_diag(gc, link.to);
        Eigen::VectorXd phase = Eigen::VectorXd::Ones(h.dim);
        if (!link.string_sites.empty())
            phase = detail_dual::string_phase_diag(gc, link.string_sites);

        DualTerm fwd;
        fwd.coeff = -p.eps;
        fwd.shift.assign(static_cast<size_t>(k), 0);
        fwd.shift[static_cast<size_t>(l)] = 1;
        fwd.diag_right = pi_to.cwiseProduct(phase);
        fwd.diag_left = pi_from;
        h.terms.push_back(std::move(fwd));

        DualTerm bwd;
        bwd.coeff = -p.eps;
        bwd.shift.assign(static_cast<size_t>(k), 0);
        bwd.shift[static_cast<size_t>(l)] = N - 1;
        bwd.diag_right = pi_from.cwiseProduct(phase);
        bwd.diag_left = pi_to;
        h.terms.push_back(std::move(bwd));
    }

    // plaquette: -2 lambda_P cos(2 pi (rho_{n,x} + rho_{n+x,y} - rho_{n,y} - rho_{n+y,x}) / N)
    if (idx.spec.dims == 2 && p.lambda_p != 0.0) {
        for (int s = 0; s < idx.n_sites; ++s) {
            const int lx = idx.link_from(s, 0);
            const int ly = idx.link_from(s, 1);
            if (lx < 0 || ly < 0) continue;
            const int sx = idx.links[static_cast<size_t>(lx)].to;
            const int sy = idx.links[static_cast<size_t>(ly)].to;
            const int l_up_x = idx.link_from(sy, 0);
            const int l_right_y = idx.link_from(sx, 1);
            if (l_up_x < 0 || l_right_y < 0) continue;
            DualTerm fwd;
            fwd.coeff = -p.lambda_p;
            fwd.shift.assign(static_cast<size_t>(k), 0);
            fwd.shift[static_cast<size_t>(ly)] = mod_add(fwd.shift[static_cast<size_t>(ly)], 1, N);
            fwd.shift[static_cast<size_t>(l_up_x)] =
                mod_add(fwd.shift[static_cast<size_t>(l_up_x)], 1, N);
            fwd.shift[static_cast<size_t>(l_right_y)] =
                mod_sub(fwd.shift[static_cast<size_t>(l_right_y)], 1, N);
            fwd.shift[static_cast<size_t>(lx)] = mod_sub(fwd.shift[static_cast<size_t>(lx)], 1, N);
            DualTerm bwd = fwd;
            for (auto& d : bwd.shift) d = mod_norm(-d, N);
            h.terms.push_back(std::move(fwd));
            h.terms.push_back(std::move(bwd));
        }
    }
    return h;
}

inline DenseOperator build_dual_1d(const GaussCode& gc, const HamiltonianParams& p,
                                   long long cap = kDefaultDenseCapacity) {
    if (gc.index.spec.dims != 1) throw std::invalid_argument("build_dual_1d needs a 1D lattice");
    return build_dual(gc, p).to_dense(cap);
}

inline DenseOperator build_dual_2d(const GaussCode& gc, const HamiltonianParams& p,
                                   long long cap = kDefaultDenseCapacity) {
    if (gc.index.spec.dims != 2) throw std::invalid_argument("build_dual_2d needs a 2D lattice");
    return build_dual(gc, p).to_dense(cap);
}

// ---------------------------------------------------------------------------
// Residual-symmetry energy penalties, both variants, per site.
// ---------------------------------------------------------------------------

/// Lambda (1 - G^pi_site) on the logical space: eigenvalues {0, 2 Lambda}
/// with kernel the per-site physical sector.
inline Eigen::VectorXd penalty_residual_diag(const GaussCode& gc, int site, double lambda) {
    const Eigen::VectorXd g = residual_symmetry_logical_diag(gc, site);
    return lambda * (Eigen::VectorXd::Ones(g.size()) - g);
}

/// Lambda (1 - delta_N(Delta+p-1)) (1 - delta_N(Delta+p)): same kernel,
/// eigenvalues {0, Lambda}.
inline Eigen::VectorXd penalty_delta_diag(const GaussCode& gc, int site, double lambda) {
    const auto& idx = gc.index;
    const int N = idx.spec.levels;
    const long long dim = dim_pow(N, idx.n_links());
    const int p = staggered_parity(idx, site);
    Eigen::VectorXd d(dim);
    std::vector<int> digits;
    for (long long v = 0; v < dim; ++v) {
        digits_of(v, N, idx.n_links(), digits);
        const int arg = mod_norm(link_flux_at(idx, site, digits) + p, N);
        d(v) = (arg == 0 || arg == 1) ? 0.0 : lambda;
    }
    return d;
}

enum class PenaltyKind { residual_symmetry, delta_pair };

inline DenseOperator penalty_terms(const GaussCode& gc, int site, double lambda, PenaltyKind kind,
                                   long long cap = kDefaultDenseCapacity) {
    if (lambda < 0.0) throw std::invalid_argument("penalty coupling must be nonnegative");
    require_capacity(dim_pow(gc.index.spec.levels, gc.index.n_links()), cap);
    const Eigen::VectorXd d = kind == PenaltyKind::residual_symmetry
                                  ? penalty_residual_diag(gc, site, lambda)
                                  : penalty_delta_diag(gc, site, lambda);
    return d.cast<Complex>().asDiagonal();
}

} // namespace znlgt
