#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "znlgt/pauli.hpp"
#include "znlgt/zn.hpp"

namespace znlgt {
namespace detail {

/// Row-echelon elimination over the field Z_N (N prime). Rows are length-m
/// integer vectors; used for symplectic ranks, span membership and solving.
class ZnEchelon {
  public:
    ZnEchelon(int N, int cols) : N_(N), cols_(cols) {}

    /// Reduce a vector against the current echelon rows (in place).
    void reduce(std::vector<int>& v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const int piv = pivots_[r];
            if (v[static_cast<size_t>(piv)] == 0) continue;
            const int f = v[static_cast<size_t>(piv)];
            for (int c = 0; c < cols_; ++c)
                v[static_cast<size_t>(c)] =
                    mod_sub(v[static_cast<size_t>(c)],
                            mod_mul(f, rows_[r][static_cast<size_t>(c)], N_), N_);
        }
    }

    /// Try to insert a vector; returns false if it was already in the span.
    bool insert(std::vector<int> v) {
        reduce(v);
        int piv = -1;
        for (int c = 0; c < cols_; ++c)
            if (v[static_cast<size_t>(c)] != 0) { piv = c; break; }
        if (piv < 0) return false;
        const int inv = mod_inverse(v[static_cast<size_t>(piv)], N_);
        for (int c = 0; c < cols_; ++c)
            v[static_cast<size_t>(c)] = mod_mul(v[static_cast<size_t>(c)], inv, N_);
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }

    bool in_span(std::vector<int> v) const {
        reduce(v);
        return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
    }

    int rank() const { return static_cast<int>(rows_.size()); }

  private:
    int N_;
    int cols_;
    std::vector<std::vector<int>> rows_;
    std::vector<int> pivots_;
};

/// Solve A e = t over Z_N for the exponent vector e (A given by columns).
/// Returns nullopt when inconsistent; requires A to have full column rank,
/// which holds for the independent normalizer bases built here.
inline std::optional<std::vector<int>> solve_columns(const std::vector<std::vector<int>>& cols,
                                                     std::vector<int> target, int N) {
    const int n_rows = static_cast<int>(target.size());
    const int n_cols = static_cast<int>(cols.size());
    // augmented matrix rows: [A | t]
    std::vector<std::vector<int>> m(static_cast<size_t>(n_rows),
                                    std::vector<int>(static_cast<size_t>(n_cols) + 1, 0));
    for (int c = 0; c < n_cols; ++c)
        for (int r = 0; r < n_rows; ++r)
            m[static_cast<size_t>(r)][static_cast<size_t>(c)] = cols[static_cast<size_t>(c)][static_cast<size_t>(r)];
    for (int r = 0; r < n_rows; ++r)
        m[static_cast<size_t>(r)][static_cast<size_t>(n_cols)] = target[static_cast<size_t>(r)];

    int row = 0;
    std::vector<int> pivot_col_of_row;
    for (int c = 0; c < n_cols && row < n_rows; ++c) {
        int sel = -1;
        for (int r = row; r < n_rows; ++r)
            if (m[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(m[static_cast<size_t>(sel)], m[static_cast<size_t>(row)]);
        const int inv = mod_inverse(m[static_cast<size_t>(row)][static_cast<size_t>(c)], N);
        for (int cc = c; cc <= n_cols; ++cc)
            m[static_cast<size_t>(row)][static_cast<size_t>(cc)] =
                mod_mul(m[static_cast<size_t>(row)][static_cast<size_t>(cc)], inv, N);
        for (int r = 0; r < n_rows; ++r) {
            if (r == row) continue;
            const int f = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (f == 0) continue;
            for (int cc = c; cc <= n_cols; ++cc)
                m[static_cast<size_t>(r)][static_cast<size_t>(cc)] =
                    mod_sub(m[static_cast<size_t>(r)][static_cast<size_t>(cc)],
                            mod_mul(f, m[static_cast<size_t>(row)][static_cast<size_t>(cc)], N), N);
        }
        pivot_col_of_row.push_back(c);
        ++row;
    }
    // consistency: no row of the form [0 ... 0 | nonzero]
    for (int r = row; r < n_rows; ++r)
        if (m[static_cast<size_t>(r)][static_cast<size_t>(n_cols)] != 0) return std::nullopt;

    std::vector<int> e(static_cast<size_t>(n_cols), 0);
    for (int r = 0; r < row; ++r)
        e[static_cast<size_t>(pivot_col_of_row[static_cast<size_t>(r)])] =
            m[static_cast<size_t>(r)][static_cast<size_t>(n_cols)];
    return e;
}

/// The 2n-component symplectic vector (x || z) of a monomial.
inline std::vector<int> symplectic_vector(const GenPauli& p) {
    std::vector<int> v;
    v.reserve(2 * static_cast<size_t>(p.qudits()));
    v.insert(v.end(), p.xexp.begin(), p.xexp.end());
    v.insert(v.end(), p.zexp.begin(), p.zexp.end());
    return v;
}

} // namespace detail

/// Rank over Z_N of the symplectic vectors of a set of monomials.
inline int symplectic_rank(const std::vector<GenPauli>& ops) {
    if (ops.empty()) return 0;
    detail::ZnEchelon ech(ops.front().levels, 2 * ops.front().qudits());
    for (const auto& p : ops) ech.insert(detail::symplectic_vector(p));
    return ech.rank();
}

/**
 * A validated [[n, k]]_N stabilizer code: commuting independent generators
 * plus a chosen symplectic basis of logical X/Z pairs.
 */
struct StabilizerCode {
    int levels = 3;
    int qudits = 1;
    std::vector<GenPauli> generators;
    std::vector<GenPauli> logical_x;
    std::vector<GenPauli> logical_z;

    int k() const { return static_cast<int>(logical_x.size()); }
};

inline StabilizerCode new_code(int N, int n, std::vector<GenPauli> generators,
                               std::vector<GenPauli> logical_x,
                               std::vector<GenPauli> logical_z) {
    require_prime(N);
    StabilizerCode code;
    code.levels = N;
    code.qudits = n;
    code.generators = std::move(generators);
    code.logical_x = std::move(logical_x);
    code.logical_z = std::move(logical_z);

    auto check_space = [&](const GenPauli& p, const std::string& what, size_t i) {
        if (p.levels != N || p.qudits() != n)
            throw std::invalid_argument(what + "[" + std::to_string(i) +
                                        "] does not act on " + std::to_string(n) +
                                        " qudits of dimension " + std::to_string(N));
    };
    for (size_t i = 0; i < code.generators.size(); ++i) check_space(code.generators[i], "generator", i);
    for (size_t i = 0; i < code.logical_x.size(); ++i) check_space(code.logical_x[i], "logical_x", i);
    for (size_t i = 0; i < code.logical_z.size(); ++i) check_space(code.logical_z[i], "logical_z", i);

    const size_t g = code.generators.size();
    for (size_t i = 0; i < g; ++i)
        for (size_t j = i + 1; j < g; ++j) {
            const int c = commutation_exponent(code.generators[i], code.generators[j]);
            if (c != 0)
                throw std::invalid_argument("non-commuting generators " + std::to_string(i) +
                                            " and " + std::to_string(j) +
                                            ": commutation exponent " + std::to_string(c));
        }
    if (symplectic_rank(code.generators) != static_cast<int>(g))
        throw std::invalid_argument("dependent generators: symplectic rank " +
                                    std::to_string(symplectic_rank(code.generators)) +
                                    " < " + std::to_string(g));

    const size_t k = static_cast<size_t>(n) - g;
    if (code.logical_x.size() != k || code.logical_z.size() != k)
        throw std::invalid_argument("expected " + std::to_string(k) +
                                    " logical X/Z pairs, got " +
                                    std::to_string(code.logical_x.size()) + "/" +
                                    std::to_string(code.logical_z.size()));

    for (size_t i = 0; i < k; ++i)
        for (size_t s = 0; s < g; ++s) {
            if (commutation_exponent(code.logical_x[i], code.generators[s]) != 0)
                throw std::invalid_argument("logical_x[" + std::to_string(i) +
                                            "] fails to commute with generator " + std::to_string(s));
            if (commutation_exponent(code.logical_z[i], code.generators[s]) != 0)
                throw std::invalid_argument("logical_z[" + std::to_string(i) +
                                            "] fails to commute with generator " + std::to_string(s));
        }
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            const int c = commutation_exponent(code.logical_x[i], code.logical_z[j]);
            const int want = (i == j) ? N - 1 : 0;
            if (c != want)
                throw std::invalid_argument("wrong logical pairing phase between X[" +
                                            std::to_string(i) + "] and Z[" + std::to_string(j) +
                                            "]: exponent " + std::to_string(c) + ", expected " +
                                            std::to_string(want));
            if (commutation_exponent(code.logical_x[i], code.logical_x[j]) != 0 ||
                commutation_exponent(code.logical_z[i], code.logical_z[j]) != 0)
                throw std::invalid_argument("logical operators of like type must commute (pair " +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return code;
}

/// Syndrome component g is the commutation exponent of generator g with the
/// error; all-zero iff the error commutes with the whole stabilizer group.
inline std::vector<int> syndrome(const StabilizerCode& code, const GenPauli& error) {
    std::vector<int> s;
    s.reserve(code.generators.size());
    for (const auto& g : code.generators) s.push_back(commutation_exponent(g, error));
    return s;
}

inline bool in_normalizer(const StabilizerCode& code, const GenPauli& p) {
    for (const auto& g : code.generators)
        if (commutation_exponent(g, p) != 0) return false;
    return true;
}

struct NormalizerDecomposition {
    std::vector<int> stab_exps;
    std::vector<int> lx_exps;
    std::vector<int> lz_exps;
    int phase = 0;
};

/// Recompose omega^phase * prod G^stab * prod Lx^lx * prod Lz^lz in that fixed
/// order; exact inverse of decompose_normalizer.
inline GenPauli recompose(const StabilizerCode& code, const NormalizerDecomposition& d) {
    GenPauli r = GenPauli::identity(code.levels, code.qudits);
    for (size_t i = 0; i < code.generators.size(); ++i)
        r = mul(r, pow(code.generators[i], d.stab_exps[i]));
    for (size_t i = 0; i < code.logical_x.size(); ++i)
        r = mul(r, pow(code.logical_x[i], d.lx_exps[i]));
    for (size_t i = 0; i < code.logical_z.size(); ++i)
        r = mul(r, pow(code.logical_z[i], d.lz_exps[i]));
    r.phase = mod_add(r.phase, d.phase, code.levels);
    return r;
}

/// Solve the symplectic linear system expressing p over the generator and
/// logical basis, then pin the leftover omega power by one exact canonical
/// multiplication.
inline NormalizerDecomposition decompose_normalizer(const StabilizerCode& code, const GenPauli& p) {
    if (p.levels != code.levels || p.qudits() != code.qudits)
        throw std::invalid_argument("operand does not act on the code's register");
    if (!in_normalizer(code, p)) {
        std::string syn;
        for (int s : syndrome(code, p)) syn += std::to_string(s) + " ";
        throw std::invalid_argument("detectable error, not decomposable: syndrome ( " + syn + ")");
    }
    std::vector<std::vector<int>> cols;
    for (const auto& g : code.generators) cols.push_back(detail::symplectic_vector(g));
    for (const auto& g : code.logical_x) cols.push_back(detail::symplectic_vector(g));
    for (const auto& g : code.logical_z) cols.push_back(detail::symplectic_vector(g));
    auto sol = detail::solve_columns(cols, detail::symplectic_vector(p), code.levels);
    if (!sol)
        throw std::logic_error("internal invariant violation: normalizer element has no "
                               "decomposition over the generator/logical basis");
    NormalizerDecomposition d;
    const size_t g = code.generators.size();
    const size_t k = code.logical_x.size();
    d.stab_exps.assign(sol->begin(), sol->begin() + static_cast<long>(g));
    d.lx_exps.assign(sol->begin() + static_cast<long>(g), sol->begin() + static_cast<long>(g + k));
    d.lz_exps.assign(sol->begin() + static_cast<long>(g + k), sol->end());
    d.phase = 0;
    const GenPauli r = recompose(code, d);
    d.phase = mod_sub(p.phase, r.phase, code.levels);
    return d;
}

enum class DistanceKind { x_type, z_type, quantum };

/**
 * Brute-force code distance: the minimum Hamming weight of an operator in
 * N(S) \ S of the requested flavour, scanning supports by increasing weight
 * and short-circuiting on the first hit. Returns nullopt when nothing is
 * found up to w_max. Throws when the enumeration would exceed the budget.
 */
inline std::optional<int> distance(const StabilizerCode& code, DistanceKind kind, int w_max,
                                   long long budget = 20'000'000) {
    const int n = code.qudits;
    const int N = code.levels;
    if (w_max < 1) throw std::invalid_argument("w_max must be at least 1");

    // alphabet of per-qudit (x,z) exponent pairs, identity excluded
    std::vector<std::pair<int, int>> alphabet;
    for (int x = 0; x < N; ++x)
        for (int z = 0; z < N; ++z) {
            if (x == 0 && z == 0) continue;
            if (kind == DistanceKind::x_type && z != 0) continue;
            if (kind == DistanceKind::z_type && x != 0) continue;
            alphabet.push_back({x, z});
        }
    const long long a = static_cast<long long>(alphabet.size());

    detail::ZnEchelon stab_span(N, 2 * n);
    for (const auto& g : code.generators) stab_span.insert(detail::symplectic_vector(g));

    // total enumeration size check
    long long total = 0;
    for (int w = 1; w <= w_max; ++w) {
        long long combos = 1;
        for (int i = 0; i < w; ++i) combos = combos * (n - i) / (i + 1);
        long long assigns = 1;
        for (int i = 0; i < w; ++i) {
            assigns *= a;
            if (assigns > budget) break;
        }
        total += combos * assigns;
        if (total > budget)
            throw std::runtime_error("enumeration-limit error: distance scan of weight " +
                                     std::to_string(w_max) + " needs more than " +
                                     std::to_string(budget) + " candidates");
    }

    std::vector<int> support(static_cast<size_t>(w_max));
    std::vector<int> letter(static_cast<size_t>(w_max));

    for (int w = 1; w <= w_max; ++w) {
        // iterate over supports (combinations) then exponent assignments
        for (int i = 0; i < w; ++i) support[static_cast<size_t>(i)] = i;
        while (true) {
            std::fill(letter.begin(), letter.begin() + w, 0);
            while (true) {
                GenPauli cand(N, n);
                for (int i = 0; i < w; ++i) {
                    const auto& [x, z] = alphabet[static_cast<size_t>(letter[static_cast<size_t>(i)])];
                    cand.xexp[static_cast<size_t>(support[static_cast<size_t>(i)])] = x;
                    cand.zexp[static_cast<size_t>(support[static_cast<size_t>(i)])] = z;
                }
                if (in_normalizer(code, cand) &&
                    !stab_span.in_span(detail::symplectic_vector(cand)))
                    return w;
                int pos = w - 1;
                while (pos >= 0 && letter[static_cast<size_t>(pos)] + 1 == a) {
                    letter[static_cast<size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++letter[static_cast<size_t>(pos)];
            }
            int pos = w - 1;
            while (pos >= 0 && support[static_cast<size_t>(pos)] == n - w + pos) --pos;
            if (pos < 0) break;
            ++support[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < w; ++i)
                support[static_cast<size_t>(i)] = support[static_cast<size_t>(i - 1)] + 1;
        }
    }
    return std::nullopt;
}

} // namespace znlgt
