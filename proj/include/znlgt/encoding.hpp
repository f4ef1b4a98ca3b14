#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "znlgt/dense.hpp"
#include "znlgt/gauss.hpp"
#include "znlgt/lattice.hpp"
#include "znlgt/termlist.hpp"

namespace znlgt {

enum class FermionEncoding { projector_jw, compact_jw };

struct HamiltonianParams {
    double m = 0.0;
    double eps = 0.0;
    double lambda_e = 0.0;
    double lambda_p = 0.0;
    FermionEncoding encoding = FermionEncoding::projector_jw;
};

// ---------------------------------------------------------------------------
// Single-site operator primitives as exact Pauli expansions.
// ---------------------------------------------------------------------------
namespace site_ops {

inline TermList identity(int N) {
    TermList t(N, 1);
    t.append_scalar(1.0);
    return t;
}

/// |i><i| = (1/N) sum_j omega^{-ij} Z^j.
inline TermList projector(int N, int level) {
    TermList t(N, 1);
    for (int j = 0; j < N; ++j)
        t.append(omega_pow(N, -static_cast<long long>(level) * j) / static_cast<double>(N),
                 GenPauli::z_op(N, 1, 0, j));
    return t;
}

inline TermList x_power(int N, int p = 1) {
    TermList t(N, 1);
    t.append(1.0, GenPauli::x_op(N, 1, 0, p));
    return t;
}

inline TermList z_power(int N, int p = 1) {
    TermList t(N, 1);
    t.append(1.0, GenPauli::z_op(N, 1, 0, p));
    return t;
}

/// Hard-core raising operator b^dagger = |1><0| (N Pauli monomials).
inline TermList raise_hardcore(int N) { return mul(projector(N, 1), x_power(N)); }

/// b = |0><1|.
inline TermList lower_hardcore(int N) { return raise_hardcore(N).adjointed(); }

/// The embedded two-level Z: |0><0| - |1><1|, zero on the other levels.
inline TermList ztilde(int N) {
    TermList t(N, 1);
    for (int j = 0; j < N; ++j)
        t.append((1.0 - omega_pow(N, -j)) / static_cast<double>(N), GenPauli::z_op(N, 1, 0, j));
    return t;
}

/// Unitarized string factor: 2|1><1| - 1 = diag(-1, +1, -1, ..., -1). Agrees
/// with -ztilde (and with the compact bold string operator) on the two
/// fermionic levels while staying unitary on the rest, so Jordan-Wigner
/// strings remain invertible on the whole qudit space.
inline TermList string_sign(int N) {
    TermList t = projector(N, 1).scaled(2.0);
    t.append_scalar(-1.0);
    return t;
}

/// Bold two-level string operator [(1+omega) - 2Z] / (1-omega): eigenvalues
/// -1 on |0> and +1 on |1>, generic phases elsewhere.
inline TermList zbold(int N) {
    const Complex w = omega_pow(N, 1);
    TermList t(N, 1);
    t.append_scalar((1.0 + w) / (1.0 - w));
    t.append(-2.0 / (1.0 - w), GenPauli::z_op(N, 1, 0, 1));
    return t;
}

/// Compact raising operator c^dagger = (1 - Z) X (Z - omega) / (1 - omega)^2.
inline TermList raise_compact(int N) {
    const Complex w = omega_pow(N, 1);
    TermList left(N, 1), right(N, 1);
    left.append_scalar(1.0);
    left.append(-1.0, GenPauli::z_op(N, 1, 0, 1));
    right.append(1.0, GenPauli::z_op(N, 1, 0, 1));
    right.append_scalar(-w);
    const Complex denom = (1.0 - w) * (1.0 - w);
    return mul(mul(left, x_power(N)), right).scaled(1.0 / denom);
}

inline TermList lower_compact(int N) { return raise_compact(N).adjointed(); }

/// Compact on-site density c^dagger c — equal to the 16-monomial product
/// (1-Z)(Z-w^2)(Z^dag-w^{-2})(1-Z^dag)/|1-w|^4 after the X factors cancel.
inline TermList density_compact(int N) {
    return mul(raise_compact(N), lower_compact(N));
}

/// Projector-encoding on-site density |1><1| = b^dagger b.
inline TermList density_hardcore(int N) { return projector(N, 1); }

} // namespace site_ops

// ---------------------------------------------------------------------------
// Dense fermion operators with their full Jordan-Wigner strings. These are
// the operators whose (projected) anticommutators are checked; the
// Hamiltonian builders below use the string-simplified forms instead.
// ---------------------------------------------------------------------------

/// Dense creation/annihilation pair for site l of an L-site register,
/// including the string over all sites preceding l in the fixed ordering.
inline std::pair<DenseOperator, DenseOperator> fermion_ops(FermionEncoding enc, int l, int L,
                                                           int N,
                                                           long long cap = kDefaultDenseCapacity) {
    if (l < 0 || l >= L) throw std::invalid_argument("site index out of range");
    require_capacity(dim_pow(N, L), cap);

    TermList creator(N, L);
    creator.append_scalar(1.0);
    for (int i = 0; i < l; ++i) {
        const TermList s = enc == FermionEncoding::projector_jw
                               ? site_ops::ztilde(N).scaled(-1.0)
                               : site_ops::zbold(N).adjointed();
        creator = mul(creator, lift(s, i, L));
    }
    const TermList raise_local = enc == FermionEncoding::projector_jw
                                     ? site_ops::raise_hardcore(N)
                                     : site_ops::raise_compact(N);
    creator = mul(creator, lift(raise_local, l, L));
    DenseOperator cd = creator.to_dense(cap);
    DenseOperator c = cd.adjoint();
    return {cd, c};
}

/// The manifestly unitary phase operator exp(i pi (Z - Z^dagger)/(omega -
/// omega^{-1})): diagonal entries exp(i pi sin(2 pi j / N) / sin(2 pi / N)).
inline DenseOperator zeta_dense(int N) {
    if (N < 3) throw std::invalid_argument("zeta is well defined for N > 2 only");
    DenseOperator m = DenseOperator::Zero(N, N);
    const double s1 = std::sin(2.0 * M_PI / N);
    for (int j = 0; j < N; ++j)
        m(j, j) = std::polar(1.0, M_PI * std::sin(2.0 * M_PI * j / N) / s1);
    return m;
}

// ---------------------------------------------------------------------------
// Hamiltonian builders.
// ---------------------------------------------------------------------------
namespace detail_h {

/// Hopping contribution of one link: -eps * [ A_from (prod_string sigma) B_to
/// X_link + h.c. ], where (A, B) is the raising/lowering pair of the chosen
/// encoding and sigma the unitarized string factor. The -eps prefactor
/// absorbs the Jordan-Wigner sign of the adjacent-site product.
inline void append_hopping(TermList& h, const SiteLinkIndex& idx, int link_id, double eps,
                           FermionEncoding enc) {
    const int N = idx.spec.levels;
    const int n = idx.n_qudits();
    const auto& link = idx.links[static_cast<size_t>(link_id)];

    const TermList raise_local =
        enc == FermionEncoding::projector_jw ? site_ops::raise_hardcore(N) : site_ops::raise_compact(N);
    const TermList lower_local =
        enc == FermionEncoding::projector_jw ? site_ops::lower_hardcore(N) : site_ops::lower_compact(N);

    TermList term = lift(raise_local, idx.site_qudit(link.from), n);
    for (int s : link.string_sites)
        term = mul(term, lift(site_ops::string_sign(N), idx.site_qudit(s), n));
    term = mul(term, lift(lower_local, idx.site_qudit(link.to), n));
    term = mul(term, lift(site_ops::x_power(N), idx.link_qudit(link_id), n));

    h.append_all(term.scaled(-eps));
    h.append_all(term.adjointed().scaled(-eps));
}

inline void append_mass(TermList& h, const SiteLinkIndex& idx, double m, FermionEncoding enc) {
    const int N = idx.spec.levels;
    const int n = idx.n_qudits();
    const TermList density =
        enc == FermionEncoding::projector_jw ? site_ops::density_hardcore(N) : site_ops::density_compact(N);
    for (int s = 0; s < idx.n_sites; ++s) {
        const double sign = staggered_parity(idx, s) == 0 ? 1.0 : -1.0;
        h.append_all(lift(density, idx.site_qudit(s), n).scaled(m * sign));
    }
}

inline void append_electric(TermList& h, const SiteLinkIndex& idx, double lambda_e) {
    const int N = idx.spec.levels;
    const int n = idx.n_qudits();
    for (int l = 0; l < idx.n_links(); ++l) {
        h.append(-lambda_e, GenPauli::z_op(N, n, idx.link_qudit(l), 1));
        h.append(-lambda_e, GenPauli::z_op(N, n, idx.link_qudit(l), N - 1));
    }
}

inline void append_plaquettes(TermList& h, const SiteLinkIndex& idx, double lambda_p) {
    const int N = idx.spec.levels;
    const int n = idx.n_qudits();
    for (int s = 0; s < idx.n_sites; ++s) {
        const int lx = idx.link_from(s, 0);
        const int ly = idx.link_from(s, 1);
        if (lx < 0 || ly < 0) continue;
        const int sx = idx.links[static_cast<size_t>(lx)].to;
        const int sy = idx.links[static_cast<size_t>(ly)].to;
        const int l_up_x = idx.link_from(sy, 0);   // x-link shifted by y
        const int l_right_y = idx.link_from(sx, 1); // y-link shifted by x
        if (l_up_x < 0 || l_right_y < 0) continue;
        GenPauli p(N, n);
        p.xexp[static_cast<size_t>(idx.link_qudit(ly))] = 1;
        p.xexp[static_cast<size_t>(idx.link_qudit(l_up_x))] = 1;
        p.xexp[static_cast<size_t>(idx.link_qudit(l_right_y))] = N - 1;
        p.xexp[static_cast<size_t>(idx.link_qudit(lx))] = N - 1;
        h.append(-lambda_p, p);
        h.append(-lambda_p, adjoint(p));
    }
}

} // namespace detail_h

/// 1D gauge Hamiltonian: staggered mass, gauge-invariant hopping and electric
/// terms over the sites-then-links register of the lattice.
inline TermList build_h_1d(const GaussCode& gc, const HamiltonianParams& p) {
    const auto& idx = gc.index;
    if (idx.spec.dims != 1) throw std::invalid_argument("build_h_1d needs a 1D lattice");
    if (p.lambda_p != 0.0)
        throw std::invalid_argument("plaquette coupling is meaningless in one dimension");
    TermList h(idx.spec.levels, idx.n_qudits());
    detail_h::append_mass(h, idx, p.m, p.encoding);
    for (int l = 0; l < idx.n_links(); ++l) detail_h::append_hopping(h, idx, l, p.eps, p.encoding);
    detail_h::append_electric(h, idx, p.lambda_e);
    return h;
}

/// 2D gauge Hamiltonian: mass, x/y hopping (y-links carry the Jordan-Wigner
/// string factors over the row-ordered intermediate sites), electric and
/// plaquette families.
inline TermList build_h_2d(const GaussCode& gc, const HamiltonianParams& p) {
    const auto& idx = gc.index;
    if (idx.spec.dims != 2) throw std::invalid_argument("build_h_2d needs a 2D lattice");
    TermList h(idx.spec.levels, idx.n_qudits());
    detail_h::append_mass(h, idx, p.m, p.encoding);
    for (int l = 0; l < idx.n_links(); ++l) detail_h::append_hopping(h, idx, l, p.eps, p.encoding);
    detail_h::append_electric(h, idx, p.lambda_e);
    detail_h::append_plaquettes(h, idx, p.lambda_p);
    return h;
}

inline TermList build_hamiltonian(const GaussCode& gc, const HamiltonianParams& p) {
    return gc.index.spec.dims == 1 ? build_h_1d(gc, p) : build_h_2d(gc, p);
}

} // namespace znlgt
