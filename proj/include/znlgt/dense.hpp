#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "znlgt/pauli.hpp"

namespace znlgt {

using DenseOperator = Eigen::MatrixXcd;
using DenseState = Eigen::VectorXcd;
using Complex = std::complex<double>;

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Default guard for dense realizations; large enough for every desk-scale
/// check in the suite (3^8 = 6561) and refused beyond.
inline constexpr long long kDefaultDenseCapacity = 1 << 14;

/// N^n with overflow protection against absurd requests.
inline long long dim_pow(int N, int n) {
    long long d = 1;
    for (int i = 0; i < n; ++i) {
        if (d > (1LL << 40) / N)
            throw capacity_error("size overflow: " + std::to_string(N) + "^" +
                                 std::to_string(n) + " exceeds addressable dense space");
        d *= N;
    }
    return d;
}

inline void require_capacity(long long dim, long long cap) {
    if (dim > cap)
        throw capacity_error("capacity error: dense dimension " + std::to_string(dim) +
                             " exceeds limit " + std::to_string(cap) +
                             " (reduce extent or N, or raise the capacity limit)");
}

/// omega_N^k as a complex double.
inline Complex omega_pow(int N, long long k) {
    const int r = mod_norm(k, N);
    if (r == 0) return {1.0, 0.0};
    return std::polar(1.0, 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(N));
}

/// Mixed-radix digits of a basis index, qudit 0 the most significant digit
/// (matching the tensor order of kron with qudit 0 leftmost).
inline void digits_of(long long idx, int N, int n, std::vector<int>& out) {
    out.resize(static_cast<size_t>(n));
    for (int q = n - 1; q >= 0; --q) {
        out[static_cast<size_t>(q)] = static_cast<int>(idx % N);
        idx /= N;
    }
}

inline long long index_of(const std::vector<int>& digits, int N) {
    long long idx = 0;
    for (int d : digits) idx = idx * N + d;
    return idx;
}

/// Image of a computational basis state under a Pauli monomial: the canonical
/// form applies all Z factors first (a phase) and then the X shifts.
struct BasisImage {
    long long index;
    Complex amp;
};

inline BasisImage apply_to_basis(const GenPauli& p, long long idx) {
    const int N = p.levels;
    const int n = p.qudits();
    long long phase = p.phase;
    long long out = 0;
    long long rem = idx;
    // walk digits most-significant first
    std::vector<long long> place(static_cast<size_t>(n));
    long long pw = 1;
    for (int q = n - 1; q >= 0; --q) {
        place[static_cast<size_t>(q)] = pw;
        pw *= N;
    }
    for (int q = 0; q < n; ++q) {
        const auto u = static_cast<size_t>(q);
        const int digit = static_cast<int>(rem / place[u]);
        rem %= place[u];
        phase += static_cast<long long>(p.zexp[u]) * digit;
        out += place[u] * mod_add(digit, p.xexp[u], N);
    }
    return {out, omega_pow(N, phase)};
}

/// Dense matrix of a Pauli monomial (a phased permutation).
inline DenseOperator to_dense(const GenPauli& p, long long cap = kDefaultDenseCapacity) {
    const long long dim = dim_pow(p.levels, p.qudits());
    require_capacity(dim, cap);
    DenseOperator m = DenseOperator::Zero(dim, dim);
    for (long long v = 0; v < dim; ++v) {
        const BasisImage im = apply_to_basis(p, v);
        m(im.index, v) = im.amp;
    }
    return m;
}

inline DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
    DenseOperator r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

/// Apply a dense gate acting on a subset of qudits (given in tensor order) to
/// a full-register state. Standard strided statevector update.
inline DenseState apply_gate(const DenseState& state, const DenseOperator& gate,
                             const std::vector<int>& targets, int N, int n_qudits) {
    const long long dim = state.size();
    const int t = static_cast<int>(targets.size());
    long long gdim = 1;
    for (int i = 0; i < t; ++i) gdim *= N;
    if (gate.rows() != gdim || gate.cols() != gdim)
        throw std::invalid_argument("gate dimension does not match target count");

    std::vector<long long> place(static_cast<size_t>(n_qudits));
    long long pw = 1;
    for (int q = n_qudits - 1; q >= 0; --q) {
        place[static_cast<size_t>(q)] = pw;
        pw *= N;
    }

    DenseState out = DenseState::Zero(dim);
    std::vector<int> dig;
    std::vector<int> sub(static_cast<size_t>(t));
    for (long long v = 0; v < dim; ++v) {
        if (state(v) == Complex(0.0, 0.0)) continue;
        digits_of(v, N, n_qudits, dig);
        long long sub_idx = 0;
        for (int i = 0; i < t; ++i)
            sub_idx = sub_idx * N + dig[static_cast<size_t>(targets[static_cast<size_t>(i)])];
        long long base = v;
        for (int i = 0; i < t; ++i)
            base -= dig[static_cast<size_t>(targets[static_cast<size_t>(i)])] *
                    place[static_cast<size_t>(targets[static_cast<size_t>(i)])];
        for (long long g = 0; g < gdim; ++g) {
            const Complex a = gate(g, sub_idx);
            if (a == Complex(0.0, 0.0)) continue;
            long long gg = g;
            long long w = base;
            for (int i = t - 1; i >= 0; --i) {
                w += (gg % N) * place[static_cast<size_t>(targets[static_cast<size_t>(i)])];
                gg /= N;
            }
            out(w) += a * state(v);
        }
    }
    return out;
}

/// |<a|b>| — fidelity between pure states quotiented by global phase.
inline double fidelity(const DenseState& a, const DenseState& b) {
    return std::abs(a.dot(b));
}

/// Single-qudit quantum Fourier transform (1/sqrt(N)) sum omega^{jk} |k><j|.
inline DenseOperator qft_dense(int N) {
    DenseOperator m(N, N);
    const double s = 1.0 / std::sqrt(static_cast<double>(N));
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j)
            m(k, j) = s * omega_pow(N, static_cast<long long>(j) * k);
    return m;
}

} // namespace znlgt
