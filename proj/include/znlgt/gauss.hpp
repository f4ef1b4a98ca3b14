#pragma once

#include <string>
#include <vector>

#include "znlgt/dense.hpp"
#include "znlgt/lattice.hpp"
#include "znlgt/pauli.hpp"
#include "znlgt/stabilizer.hpp"

namespace znlgt {

/// A Gauss-law stabilizer code together with the lattice indexing it was
/// built from (the Hamiltonian builders and the logical-space operators all
/// need the geometry, not just the code).
struct GaussCode {
    SiteLinkIndex index;
    StabilizerCode code;

    explicit GaussCode(SiteLinkIndex idx, StabilizerCode c)
        : index(std::move(idx)), code(std::move(c)) {}
};

/**
 * One stabilizer per site,
 *
 *   G_s = omega^{-p_s} Z_s * prod_{in} Z_link * prod_{out} Z_link^dagger,
 *
 * and one logical pair per link: Zbar = Z_link and Xbar = X_from X_link
 * X_to^dagger. The dagger pattern is forced by requiring every Xbar to
 * commute with every stabilizer; the constructor validation re-checks all of
 * it symplectically.
 */
inline GaussCode build_code(const LatticeSpec& spec) {
    SiteLinkIndex idx(spec);
    const int N = spec.levels;
    const int n = idx.n_qudits();

    std::vector<GenPauli> gens;
    gens.reserve(static_cast<size_t>(idx.n_sites));
    for (int s = 0; s < idx.n_sites; ++s) {
        GenPauli g(N, n);
        g.phase = mod_norm(-staggered_parity(idx, s), N);
        g.zexp[static_cast<size_t>(idx.site_qudit(s))] = 1;
        for (int l : idx.in_links[static_cast<size_t>(s)])
            g.zexp[static_cast<size_t>(idx.link_qudit(l))] =
                mod_add(g.zexp[static_cast<size_t>(idx.link_qudit(l))], 1, N);
        for (int l : idx.out_links[static_cast<size_t>(s)])
            g.zexp[static_cast<size_t>(idx.link_qudit(l))] =
                mod_sub(g.zexp[static_cast<size_t>(idx.link_qudit(l))], 1, N);
        gens.push_back(std::move(g));
    }

    std::vector<GenPauli> lx, lz;
    lx.reserve(static_cast<size_t>(idx.n_links()));
    lz.reserve(static_cast<size_t>(idx.n_links()));
    for (int l = 0; l < idx.n_links(); ++l) {
        const auto& link = idx.links[static_cast<size_t>(l)];
        GenPauli x(N, n);
        x.xexp[static_cast<size_t>(idx.site_qudit(link.from))] =
            mod_add(x.xexp[static_cast<size_t>(idx.site_qudit(link.from))], 1, N);
        x.xexp[static_cast<size_t>(idx.link_qudit(l))] = 1;
        x.xexp[static_cast<size_t>(idx.site_qudit(link.to))] =
            mod_sub(x.xexp[static_cast<size_t>(idx.site_qudit(link.to))], 1, N);
        lx.push_back(std::move(x));
        lz.push_back(GenPauli::z_op(N, n, idx.link_qudit(l)));
    }

    StabilizerCode code = new_code(N, n, std::move(gens), std::move(lx), std::move(lz));
    return GaussCode(std::move(idx), std::move(code));
}

/// The residual per-site Z2 generator: -exp(i pi (|0><0| + |1><1|)), i.e.
/// diag(+1, +1, -1, ..., -1) on an N-level site.
inline DenseOperator residual_symmetry_site(int N) {
    if (N < 3)
        throw std::invalid_argument("residual site symmetry needs N >= 3 "
                                    "(no levels outside the fermionic pair otherwise)");
    DenseOperator m = DenseOperator::Zero(N, N);
    for (int j = 0; j < N; ++j) m(j, j) = (j < 2) ? 1.0 : -1.0;
    return m;
}

struct SiteZRewrite {
    int phase_exp = 0;        // p_site
    int stabilizer_index = 0; // the site's own Gauss generator
    GenPauli logical_monomial; // pure-Z monomial on the k logical qudits
};

/// Closed-form decomposition Z_site = omega^{p} G_site * prod_in Zbar^dagger
/// * prod_out Zbar; re-multiplying reproduces Z_site exactly.
inline SiteZRewrite site_z_rewrite(const GaussCode& gc, int site) {
    const auto& idx = gc.index;
    const int N = idx.spec.levels;
    SiteZRewrite r{staggered_parity(idx, site), site,
                   GenPauli::identity(N, idx.n_links())};
    for (int l : idx.in_links[static_cast<size_t>(site)])
        r.logical_monomial.zexp[static_cast<size_t>(l)] =
            mod_sub(r.logical_monomial.zexp[static_cast<size_t>(l)], 1, N);
    for (int l : idx.out_links[static_cast<size_t>(site)])
        r.logical_monomial.zexp[static_cast<size_t>(l)] =
            mod_add(r.logical_monomial.zexp[static_cast<size_t>(l)], 1, N);
    return r;
}

} // namespace znlgt
