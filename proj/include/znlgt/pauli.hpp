#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "znlgt/zn.hpp"

namespace znlgt {

/**
 * A generalized Pauli monomial on n qudits of prime dimension N:
 *
 *     omega^phase * prod_i X_i^{x[i]} Z_i^{z[i]},    omega = exp(i 2 pi / N)
 *
 * with the canonical per-qudit ordering "all X factors to the left of all Z
 * factors". X is the cyclic increment X|j> = |j+1 mod N>, Z the clock
 * Z|j> = omega^j |j>, so ZX = omega XZ. All exponents are stored reduced to
 * [0, N). Values are immutable in spirit: every operation returns a fresh
 * canonical monomial, so equal fields imply equal dense matrices.
 *
 * The omega-power phase group is closed under products for every prime N
 * (crossings only ever produce omega^{s*t} factors); no i-phases are tracked.
 */
struct GenPauli {
    int levels = 2;            // N (prime)
    int phase = 0;             // exponent of omega
    std::vector<int> xexp;     // length n_qudits
    std::vector<int> zexp;     // length n_qudits

    GenPauli() = default;

    GenPauli(int n_levels, int n_qudits)
        : levels(n_levels), phase(0),
          xexp(static_cast<size_t>(n_qudits), 0),
          zexp(static_cast<size_t>(n_qudits), 0) {
        require_prime(levels);
        if (n_qudits <= 0) throw std::invalid_argument("GenPauli needs at least one qudit");
    }

    GenPauli(int n_levels, int phase_exp, std::vector<int> x, std::vector<int> z)
        : levels(n_levels), phase(0), xexp(std::move(x)), zexp(std::move(z)) {
        require_prime(levels);
        if (xexp.size() != zexp.size() || xexp.empty())
            throw std::invalid_argument("GenPauli exponent vectors must have equal nonzero length");
        phase = mod_norm(phase_exp, levels);
        for (auto& e : xexp) e = mod_norm(e, levels);
        for (auto& e : zexp) e = mod_norm(e, levels);
    }

    int qudits() const { return static_cast<int>(xexp.size()); }

    /// Single-qudit X^p on qudit q of an n-qudit register.
    static GenPauli x_op(int N, int n, int q, int p = 1) {
        GenPauli g(N, n);
        g.xexp[static_cast<size_t>(q)] = mod_norm(p, N);
        return g;
    }

    /// Single-qudit Z^p on qudit q.
    static GenPauli z_op(int N, int n, int q, int p = 1) {
        GenPauli g(N, n);
        g.zexp[static_cast<size_t>(q)] = mod_norm(p, N);
        return g;
    }

    static GenPauli identity(int N, int n) { return GenPauli(N, n); }

    bool trivial_exponents() const {
        for (int e : xexp) if (e != 0) return false;
        for (int e : zexp) if (e != 0) return false;
        return true;
    }

    bool is_identity() const { return phase == 0 && trivial_exponents(); }

    friend bool operator==(const GenPauli& a, const GenPauli& b) {
        return a.levels == b.levels && a.phase == b.phase && a.xexp == b.xexp &&
               a.zexp == b.zexp;
    }
};

inline void require_same_space(const GenPauli& a, const GenPauli& b) {
    if (a.levels != b.levels || a.qudits() != b.qudits())
        throw std::invalid_argument("dimension error: operands live on different qudit registers (" +
                                    std::to_string(a.qudits()) + " qudits mod " + std::to_string(a.levels) +
                                    " vs " + std::to_string(b.qudits()) + " qudits mod " +
                                    std::to_string(b.levels) + ")");
}

/// Canonical product a*b. Reordering b's X factors past a's Z factors on each
/// qudit contributes omega^{a.z[i] * b.x[i]}.
inline GenPauli mul(const GenPauli& a, const GenPauli& b) {
    require_same_space(a, b);
    const int N = a.levels;
    GenPauli r(N, a.qudits());
    long long ph = a.phase + b.phase;
    for (int i = 0; i < a.qudits(); ++i) {
        const auto u = static_cast<size_t>(i);
        ph += static_cast<long long>(a.zexp[u]) * b.xexp[u];
        r.xexp[u] = mod_add(a.xexp[u], b.xexp[u], N);
        r.zexp[u] = mod_add(a.zexp[u], b.zexp[u], N);
    }
    r.phase = mod_norm(ph, N);
    return r;
}

/// Exponent c with a*b = omega^c b*a; zero iff the monomials commute.
inline int commutation_exponent(const GenPauli& a, const GenPauli& b) {
    require_same_space(a, b);
    long long c = 0;
    for (int i = 0; i < a.qudits(); ++i) {
        const auto u = static_cast<size_t>(i);
        c += static_cast<long long>(a.zexp[u]) * b.xexp[u] -
             static_cast<long long>(a.xexp[u]) * b.zexp[u];
    }
    return mod_norm(c, a.levels);
}

/// p^k for any integer k (negative powers via unitarity). The crossing phase
/// accumulates k(k-1)/2 copies of sum_i x[i] z[i]; k(k-1) is always even so
/// the formula is exact integer arithmetic for every prime N, including 2.
inline GenPauli pow(const GenPauli& p, long long k) {
    const int N = p.levels;
    GenPauli r(N, p.qudits());
    long long cross = 0;
    for (int i = 0; i < p.qudits(); ++i) {
        const auto u = static_cast<size_t>(i);
        cross += static_cast<long long>(p.xexp[u]) * p.zexp[u];
        r.xexp[u] = mod_norm(k * p.xexp[u], N);
        r.zexp[u] = mod_norm(k * p.zexp[u], N);
    }
    // k(k-1)/2 mod N is periodic in k with period 2N, so reduce k there first.
    const long long period = 2LL * N;
    const long long km = ((k % period) + period) % period;
    const long long half = (km * (km - 1) / 2) % N;
    r.phase = mod_norm((km % N) * p.phase + half * (cross % N), N);
    return r;
}

/// Hermitian adjoint: omega^{-a + sum x z} X^{-x} Z^{-z}.
inline GenPauli adjoint(const GenPauli& p) {
    const int N = p.levels;
    GenPauli r(N, p.qudits());
    long long ph = -p.phase;
    for (int i = 0; i < p.qudits(); ++i) {
        const auto u = static_cast<size_t>(i);
        ph += static_cast<long long>(p.xexp[u]) * p.zexp[u];
        r.xexp[u] = mod_norm(-p.xexp[u], N);
        r.zexp[u] = mod_norm(-p.zexp[u], N);
    }
    r.phase = mod_norm(ph, N);
    return r;
}

/// Hamming weight: number of qudits acted on nontrivially.
inline int weight(const GenPauli& p) {
    int w = 0;
    for (int i = 0; i < p.qudits(); ++i)
        if (p.xexp[static_cast<size_t>(i)] != 0 || p.zexp[static_cast<size_t>(i)] != 0) ++w;
    return w;
}

} // namespace znlgt
