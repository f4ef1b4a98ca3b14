#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "znlgt/bosonic.hpp"
#include "znlgt/dense.hpp"
#include "znlgt/encoding.hpp"
#include "znlgt/gauss.hpp"
#include "znlgt/logical.hpp"
#include "znlgt/stabilizer.hpp"
#include "znlgt/termlist.hpp"

namespace znlgt {

/**
 * A projector onto a stabilizer/constraint sector. Gauss-law stabilizers are
 * diagonal in the computational basis, so the projectors used here reduce to
 * 0/1 masks over basis states; a dense realization is available on demand.
 */
struct SectorProjector {
    long long dim = 0;
    std::vector<char> mask; // 0/1 per basis state
    std::string description;

    long long rank() const {
        long long r = 0;
        for (char c : mask) r += c;
        return r;
    }

    std::vector<long long> selected() const {
        std::vector<long long> s;
        s.reserve(static_cast<size_t>(rank()));
        for (long long v = 0; v < dim; ++v)
            if (mask[static_cast<size_t>(v)]) s.push_back(v);
        return s;
    }

    DenseOperator to_dense(long long cap = kDefaultDenseCapacity) const {
        require_capacity(dim, cap);
        DenseOperator m = DenseOperator::Zero(dim, dim);
        for (long long v = 0; v < dim; ++v)
            if (mask[static_cast<size_t>(v)]) m(v, v) = 1.0;
        return m;
    }
};

/// Eigenvalue exponent of a diagonal (pure-Z) monomial on a basis state.
inline int diagonal_eigen_exponent(const GenPauli& g, const std::vector<int>& digits) {
    long long e = g.phase;
    for (int q = 0; q < g.qudits(); ++q)
        e += static_cast<long long>(g.zexp[static_cast<size_t>(q)]) * digits[static_cast<size_t>(q)];
    return mod_norm(e, g.levels);
}

/// Projector onto the joint +1 eigenspace of all stabilizers, equal to
/// prod_sites (1/N) sum_j G^j. Requires diagonal (pure-Z) generators, which
/// covers every Gauss-law code.
inline SectorProjector gauge_projector(const StabilizerCode& code) {
    for (const auto& g : code.generators)
        for (int x : g.xexp)
            if (x != 0)
                throw std::invalid_argument("gauge_projector expects diagonal stabilizers");
    SectorProjector p;
    p.dim = dim_pow(code.levels, code.qudits);
    p.description = "joint +1 eigenspace of " + std::to_string(code.generators.size()) +
                    " Gauss-law stabilizers";
    p.mask.assign(static_cast<size_t>(p.dim), 1);
    std::vector<int> digits;
    for (long long v = 0; v < p.dim; ++v) {
        digits_of(v, code.levels, code.qudits, digits);
        for (const auto& g : code.generators)
            if (diagonal_eigen_exponent(g, digits) != 0) {
                p.mask[static_cast<size_t>(v)] = 0;
                break;
            }
    }
    return p;
}

inline SectorProjector gauge_projector(const GaussCode& gc) { return gauge_projector(gc.code); }

/// Gauge projector further restricted to the two fermionic levels on every
/// site (the +1 sector of the residual Z2 symmetry at each site).
inline SectorProjector physical_projector(const GaussCode& gc) {
    SectorProjector p = gauge_projector(gc.code);
    const auto& idx = gc.index;
    std::vector<int> digits;
    for (long long v = 0; v < p.dim; ++v) {
        if (!p.mask[static_cast<size_t>(v)]) continue;
        digits_of(v, idx.spec.levels, idx.n_qudits(), digits);
        for (int s = 0; s < idx.n_sites; ++s)
            if (digits[static_cast<size_t>(idx.site_qudit(s))] > 1) {
                p.mask[static_cast<size_t>(v)] = 0;
                break;
            }
    }
    p.description = "gauge sector restricted to two-level sites";
    return p;
}

/// Mask over the logical space selecting the joint +1 sector of the residual
/// Z2 generators at every site.
inline SectorProjector residual_sector(const GaussCode& gc) {
    SectorProjector p;
    p.dim = dim_pow(gc.index.spec.levels, gc.index.n_links());
    p.description = "joint +1 sector of the residual site symmetries (logical basis)";
    p.mask.assign(static_cast<size_t>(p.dim), 1);
    for (int s = 0; s < gc.index.n_sites; ++s) {
        const Eigen::VectorXd d = residual_symmetry_logical_diag(gc, s);
        for (long long v = 0; v < p.dim; ++v)
            if (d(v) < 0.0) p.mask[static_cast<size_t>(v)] = 0;
    }
    return p;
}

namespace detail_verify {

/// Submatrix of an operator (given by a column applier) over the selected
/// basis states. Leakage outside the sector must cancel to tolerance; it is
/// asserted, not silently dropped.
template <typename Applier>
DenseOperator sector_submatrix(const Applier& apply, const SectorProjector& sector,
                               double leak_tol = 1e-10) {
    const auto sel = sector.selected();
    std::map<long long, long long> pos;
    for (size_t i = 0; i < sel.size(); ++i) pos[sel[static_cast<size_t>(i)]] = static_cast<long long>(i);
    DenseOperator m = DenseOperator::Zero(static_cast<long long>(sel.size()),
                                          static_cast<long long>(sel.size()));
    std::map<long long, Complex> col;
    for (size_t j = 0; j < sel.size(); ++j) {
        col.clear();
        apply(sel[j], col);
        for (const auto& [w, a] : col) {
            auto it = pos.find(w);
            if (it == pos.end()) {
                if (std::abs(a) > leak_tol)
                    throw std::runtime_error("operator leaves sector: leakage amplitude " +
                                             std::to_string(std::abs(a)));
                continue;
            }
            m(it->second, static_cast<long long>(j)) += a;
        }
    }
    return m;
}

inline std::vector<double> hermitian_eigenvalues(const DenseOperator& m, double herm_tol = 1e-9) {
    if (m.rows() == 0) return {};
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw std::runtime_error("sector submatrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(m);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace detail_verify

inline std::vector<double> sector_spectrum(const TermList& h, const SectorProjector& sector) {
    return detail_verify::hermitian_eigenvalues(detail_verify::sector_submatrix(
        [&](long long v, std::map<long long, Complex>& col) { h.apply_to_basis_column(v, col); },
        sector));
}

inline std::vector<double> sector_spectrum(const DualOperator& h, const SectorProjector& sector) {
    return detail_verify::hermitian_eigenvalues(detail_verify::sector_submatrix(
        [&](long long v, std::map<long long, Complex>& col) { h.apply_to_basis_column(v, col); },
        sector));
}

/// Eigenvalues of H restricted to range(P), ascending. H must commute with P
/// to commute_tol (checked; "operator leaves sector" otherwise).
inline std::vector<double> restricted_spectrum(const DenseOperator& h, const SectorProjector& p,
                                               double commute_tol = 1e-10) {
    if (h.rows() != p.dim || h.cols() != p.dim)
        throw std::invalid_argument("operator and projector dimensions differ");
    const auto sel = p.selected();
    if (sel.empty()) return {};
    // commutation check [H, P] via mask structure: off-sector blocks must vanish
    double leak = 0.0;
    for (long long v : sel)
        for (long long w = 0; w < p.dim; ++w)
            if (!p.mask[static_cast<size_t>(w)]) leak = std::max(leak, std::abs(h(w, v)));
    if (leak > commute_tol)
        throw std::runtime_error("operator leaves sector: [H, P] norm " + std::to_string(leak));
    DenseOperator sub(static_cast<long long>(sel.size()), static_cast<long long>(sel.size()));
    for (size_t i = 0; i < sel.size(); ++i)
        for (size_t j = 0; j < sel.size(); ++j)
            sub(static_cast<long long>(i), static_cast<long long>(j)) = h(sel[i], sel[j]);
    return detail_verify::hermitian_eigenvalues(sub);
}

/// Elementwise max difference between a logical TermList and a dual operator,
/// computed by a full column sweep (O(dim) memory regardless of dimension).
inline double max_columnwise_diff(const TermList& a, const DualOperator& b) {
    if (dim_pow(a.levels, a.qudits) != b.dim)
        throw std::invalid_argument("operator dimensions differ");
    double m = 0.0;
    std::map<long long, Complex> ca, cb;
    for (long long v = 0; v < b.dim; ++v) {
        ca.clear();
        cb.clear();
        a.apply_to_basis_column(v, ca);
        b.apply_to_basis_column(v, cb);
        for (const auto& [w, amp] : cb) ca[w] -= amp;
        for (const auto& [w, amp] : ca) m = std::max(m, std::abs(amp));
    }
    return m;
}

struct DualityOptions {
    double matrix_tol = 1e-10;
    double spectrum_tol = 1e-9;
    bool spectra_2d = false; // full 2D physical-space spectral comparison
};

struct DualityReport {
    long long physical_sector_dim = 0;
    long long residual_sector_dim = 0;
    bool sector_dims_match = false;
    bool gauge_invariant = true;
    double max_matrix_diff = 0.0;
    double max_spectrum_diff = 0.0;
    bool spectra_compared = false;
    bool pass = false;
};

/**
 * The end-to-end duality check: build the physical Hamiltonian, verify every
 * monomial is gauge invariant, rewrite it mechanically into the logical
 * basis, compare elementwise against the independently built bosonic dual,
 * and (1D, or 2D on request) compare the physical-sector spectrum against the
 * residual-sector spectrum of the logical Hamiltonian.
 */
inline DualityReport duality_check(const LatticeSpec& spec, const HamiltonianParams& params,
                                   const DualityOptions& opts = {}) {
    DualityReport rep;
    const GaussCode gc = build_code(spec);
    const TermList h_phys = build_hamiltonian(gc, params);

    for (const auto& t : h_phys.terms)
        if (!in_normalizer(gc.code, t.op)) {
            rep.gauge_invariant = false;
            break;
        }

    const TermList h_log = rewrite_hamiltonian(gc, h_phys);
    const DualOperator h_dual = build_dual(gc, params);
    rep.max_matrix_diff = max_columnwise_diff(h_log, h_dual);

    const SectorProjector phys = physical_projector(gc);
    const SectorProjector res = residual_sector(gc);
    rep.physical_sector_dim = phys.rank();
    rep.residual_sector_dim = res.rank();
    rep.sector_dims_match = rep.physical_sector_dim == rep.residual_sector_dim;

    const bool want_spectra = spec.dims == 1 || opts.spectra_2d;
    if (want_spectra) {
        rep.spectra_compared = true;
        const std::vector<double> sp_phys = sector_spectrum(h_phys, phys);
        const std::vector<double> sp_log = sector_spectrum(h_log, res);
        if (sp_phys.size() != sp_log.size()) {
            rep.max_spectrum_diff = std::numeric_limits<double>::infinity();
        } else {
            for (size_t i = 0; i < sp_phys.size(); ++i)
                rep.max_spectrum_diff = std::max(rep.max_spectrum_diff,
                                                 std::abs(sp_phys[i] - sp_log[i]));
        }
    }

    rep.pass = rep.gauge_invariant && rep.sector_dims_match &&
               rep.max_matrix_diff < opts.matrix_tol &&
               (!rep.spectra_compared || rep.max_spectrum_diff < opts.spectrum_tol);
    return rep;
}

} // namespace znlgt
