#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "znlgt/dense.hpp"
#include "znlgt/pauli.hpp"
#include "znlgt/stabilizer.hpp"
#include "znlgt/termlist.hpp"
#include "znlgt/zn.hpp"

namespace znlgt {

// ---------------------------------------------------------------------------
// Gate library.
// ---------------------------------------------------------------------------

enum class GateName { qft, s, t, t3, cz, sum, cx_tilde, k };

inline DenseOperator gate(GateName name, int N) {
    require_prime(N);
    switch (name) {
        case GateName::qft:
            return qft_dense(N);
        case GateName::s: {
            const int half = mod_inverse(2, N); // throws for N = 2
            DenseOperator m = DenseOperator::Zero(N, N);
            for (int j = 0; j < N; ++j)
                m(j, j) = omega_pow(N, static_cast<long long>(j) * (j + 1) * half);
            return m;
        }
        case GateName::t: {
            if (N < 5)
                throw std::invalid_argument("[6^{-1}] undefined: the cubic-phase T gate needs "
                                            "a prime N >= 5");
            const int sixth = mod_inverse(6, N);
            DenseOperator m = DenseOperator::Zero(N, N);
            for (int j = 0; j < N; ++j)
                m(j, j) = omega_pow(N, static_cast<long long>(j) * j * j % N * sixth);
            return m;
        }
        case GateName::t3: {
            if (N != 3) throw std::invalid_argument("the qutrit T gate is defined for N = 3 only");
            DenseOperator m = DenseOperator::Zero(3, 3);
            m(0, 0) = std::polar(1.0, 2.0 * M_PI / 9.0);
            m(1, 1) = 1.0;
            m(2, 2) = std::polar(1.0, -2.0 * M_PI / 9.0);
            return m;
        }
        case GateName::cz: {
            const int d = N * N;
            DenseOperator m = DenseOperator::Zero(d, d);
            for (int j = 0; j < N; ++j)
                for (int k = 0; k < N; ++k)
                    m(j * N + k, j * N + k) = omega_pow(N, static_cast<long long>(j) * k);
            return m;
        }
        case GateName::sum: {
            // SUM |j>|k> = |j>|j+k mod N>
            const int d = N * N;
            DenseOperator m = DenseOperator::Zero(d, d);
            for (int j = 0; j < N; ++j)
                for (int k = 0; k < N; ++k)
                    m(j * N + mod_add(j, k, N), j * N + k) = 1.0;
            return m;
        }
        case GateName::cx_tilde: {
            // CX~ |j>|k> = |j>|-k-j mod N>; self-adjoint
            const int d = N * N;
            DenseOperator m = DenseOperator::Zero(d, d);
            for (int j = 0; j < N; ++j)
                for (int k = 0; k < N; ++k)
                    m(j * N + mod_norm(-k - j, N), j * N + k) = 1.0;
            return m;
        }
        case GateName::k: {
            DenseOperator m = DenseOperator::Zero(N, N);
            for (int j = 0; j < N; ++j) m(mod_norm(-j, N), j) = 1.0;
            return m;
        }
    }
    throw std::invalid_argument("unknown gate");
}

// ---------------------------------------------------------------------------
// Clifford verification by structural Pauli matching.
// ---------------------------------------------------------------------------

struct PauliMatch {
    Complex scalar; // residual unit-modulus factor in front of the canonical monomial
    GenPauli pauli;
};

/**
 * Match U p U^dagger against a generalized Pauli monomial up to a scalar.
 * A Pauli is a phased uniform digit shift, so the conjugate is accepted iff
 * every column is a single basis vector, the permutation is a constant shift
 * r, and the column phases follow omega^{a + s.v} for integer exponent
 * vectors s. The returned GenPauli absorbs as much of the phase as an
 * omega power can; `scalar` is whatever unit-modulus factor remains.
 */
inline std::optional<PauliMatch> conjugate_to_pauli(const DenseOperator& U, const GenPauli& p,
                                                    double tol = 1e-10) {
    const int N = p.levels;
    const int n = p.qudits();
    const long long dim = dim_pow(N, n);
    if (U.rows() != dim || U.cols() != dim) throw std::invalid_argument("gate/operand dimension mismatch");
    if ((U * U.adjoint() - DenseOperator::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("non-unitary input");

    const DenseOperator V = U * to_dense(p) * U.adjoint();

    // column structure: V|v> = amp(v) |v + r>
    std::vector<int> shift_digits(static_cast<size_t>(n), -1);
    std::vector<Complex> amp(static_cast<size_t>(dim));
    std::vector<int> vd, wd;
    std::vector<int> rexp(static_cast<size_t>(n), 0);
    for (long long v = 0; v < dim; ++v) {
        long long row = -1;
        for (long long w = 0; w < dim; ++w) {
            if (std::abs(V(w, v)) > tol) {
                if (row >= 0) return std::nullopt; // more than one entry in this column
                row = w;
            }
        }
        if (row < 0) return std::nullopt;
        if (std::abs(std::abs(V(row, v)) - 1.0) > tol) return std::nullopt;
        digits_of(v, N, n, vd);
        digits_of(row, N, n, wd);
        for (int q = 0; q < n; ++q) {
            const int d = mod_sub(wd[static_cast<size_t>(q)], vd[static_cast<size_t>(q)], N);
            if (v == 0)
                rexp[static_cast<size_t>(q)] = d;
            else if (rexp[static_cast<size_t>(q)] != d)
                return std::nullopt; // not a uniform shift
        }
        amp[static_cast<size_t>(v)] = V(row, v);
    }

    // phase structure: amp(v) = amp(0) * omega^{s . v} for integer s
    std::vector<int> sexp(static_cast<size_t>(n), 0);
    long long place = dim;
    for (int q = 0; q < n; ++q) {
        place /= N;
        const Complex ratio = amp[static_cast<size_t>(place)] / amp[0];
        int found = -1;
        for (int c = 0; c < N; ++c)
            if (std::abs(ratio - omega_pow(N, c)) < tol) {
                found = c;
                break;
            }
        if (found < 0) return std::nullopt;
        sexp[static_cast<size_t>(q)] = found;
    }
    // verify the full phase pattern
    for (long long v = 0; v < dim; ++v) {
        digits_of(v, N, n, vd);
        long long e = 0;
        for (int q = 0; q < n; ++q)
            e += static_cast<long long>(sexp[static_cast<size_t>(q)]) * vd[static_cast<size_t>(q)];
        if (std::abs(amp[static_cast<size_t>(v)] - amp[0] * omega_pow(N, e)) > tol)
            return std::nullopt;
    }

    // absorb an omega power of amp(0) into the monomial phase when possible
    PauliMatch match;
    int phase_exp = 0;
    Complex scalar = amp[0];
    for (int c = 0; c < N; ++c)
        if (std::abs(amp[0] - omega_pow(N, c)) < tol) {
            phase_exp = c;
            scalar = amp[0] / omega_pow(N, c);
            break;
        }
    match.pauli = GenPauli(N, phase_exp, rexp, sexp);
    match.scalar = scalar;
    return match;
}

/// Clifford membership per the omega^k-scalar definition: U X_i U^dag and
/// U Z_i U^dag must be Pauli monomials with pure omega-power prefactors for
/// every qudit i.
inline bool is_clifford(const DenseOperator& U, int N, int n_qudits, double tol = 1e-10) {
    for (int q = 0; q < n_qudits; ++q) {
        for (const GenPauli& gen : {GenPauli::x_op(N, n_qudits, q), GenPauli::z_op(N, n_qudits, q)}) {
            const auto m = conjugate_to_pauli(U, gen, tol);
            if (!m) return false;
            if (std::abs(m->scalar - Complex(1.0, 0.0)) > tol) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Qutrit no-go enumeration.
// ---------------------------------------------------------------------------

struct NogoReport {
    int total = 0;
    int consistent = 0;            // triples satisfying the asserted equivalences
    int pauli_conjugate_count = 0; // triples with T X T^dag an omega_3 Pauli
    int gate_clifford_count = 0;   // triples with T X T^dag Clifford as a gate (wider class)
    bool pass = false;
};

/**
 * Enumerate all 729 omega_9-diagonal phase gates T = diag(w9^a, w9^b, w9^c)
 * and verify: T X T^dagger reduces to an omega_3 Pauli monomial iff
 * a = b = c (mod 3), and exactly in those cases T itself is Clifford. The
 * report also counts the strictly larger class where T X T^dagger is merely
 * a Clifford gate.
 */
inline NogoReport qutrit_t_nogo() {
    const int N = 3;
    const GenPauli x = GenPauli::x_op(N, 1, 0);
    NogoReport rep;
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
            for (int c = 0; c < 9; ++c) {
                ++rep.total;
                DenseOperator t = DenseOperator::Zero(3, 3);
                t(0, 0) = std::polar(1.0, 2.0 * M_PI * a / 9.0);
                t(1, 1) = std::polar(1.0, 2.0 * M_PI * b / 9.0);
                t(2, 2) = std::polar(1.0, 2.0 * M_PI * c / 9.0);

                const auto match = conjugate_to_pauli(t, x);
                const bool conj_is_pauli =
                    match.has_value() && std::abs(match->scalar - Complex(1.0, 0.0)) < 1e-10;
                const bool congruent = (a % 3 == b % 3) && (b % 3 == c % 3);
                const bool t_clifford = is_clifford(t, N, 1);

                const DenseOperator txt = t * to_dense(x) * t.adjoint();
                if (is_clifford(txt, N, 1)) ++rep.gate_clifford_count;

                if (conj_is_pauli) ++rep.pauli_conjugate_count;
                if (conj_is_pauli == congruent && congruent == t_clifford) ++rep.consistent;
            }
    rep.pass = rep.consistent == rep.total;
    return rep;
}

// ---------------------------------------------------------------------------
// State injection.
// ---------------------------------------------------------------------------

struct MeasurementRecord {
    int outcome = 0;
    double probability = 0.0;
    DenseState post_state; // corrected single-qudit output state
};

namespace detail_circ {

/// Measure qudit `target` of an n-qudit register in the computational basis.
/// Returns outcome probabilities and, for a chosen outcome, the collapsed
/// register state (normalized).
inline std::vector<double> outcome_probabilities(const DenseState& psi, int target, int N,
                                                 int n_qudits) {
    std::vector<double> probs(static_cast<size_t>(N), 0.0);
    std::vector<int> digits;
    for (long long v = 0; v < psi.size(); ++v) {
        if (psi(v) == Complex(0.0, 0.0)) continue;
        digits_of(v, N, n_qudits, digits);
        probs[static_cast<size_t>(digits[static_cast<size_t>(target)])] += std::norm(psi(v));
    }
    return probs;
}

inline DenseState collapse(const DenseState& psi, int target, int N, int n_qudits, int outcome,
                           double prob) {
    DenseState out = DenseState::Zero(psi.size());
    std::vector<int> digits;
    for (long long v = 0; v < psi.size(); ++v) {
        if (psi(v) == Complex(0.0, 0.0)) continue;
        digits_of(v, N, n_qudits, digits);
        if (digits[static_cast<size_t>(target)] == outcome) out(v) = psi(v);
    }
    return out / std::sqrt(prob);
}

/// Extract the state of one qudit from a product state where the other qudit
/// of a 2-qudit register is collapsed onto |fixed>.
inline DenseState extract_single(const DenseState& psi, int keep, int fixed_qudit, int fixed_value,
                                 int N) {
    DenseState out(N);
    for (int j = 0; j < N; ++j) {
        const long long idx = keep == 0 ? static_cast<long long>(j) * N + fixed_value
                                        : static_cast<long long>(fixed_value) * N + j;
        out(j) = psi(idx);
        (void)fixed_qudit;
    }
    return out;
}

inline int sample_outcome(const std::vector<double>& probs, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    double r = dist(rng);
    for (size_t i = 0; i < probs.size(); ++i) {
        r -= probs[i];
        if (r <= 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
}

} // namespace detail_circ

/**
 * Teleported QFT: ancilla QFT, CZ, a SWAP compiled into SUM gates whose
 * leftover K gate is absorbed into the trailing ancilla Fourier transform
 * (QFT^dagger K = QFT), ancilla measurement, and the classically controlled
 * X^{-L} correction. The output equals QFT|psi> up to a global phase for
 * every outcome L.
 */
inline MeasurementRecord inject_qft(const DenseState& psi, std::optional<int> forced_outcome,
                                    std::mt19937_64* rng = nullptr) {
    const int N = static_cast<int>(psi.size());
    require_prime(N);
    if (std::abs(psi.norm() - 1.0) > 1e-12) throw std::invalid_argument("unnormalized input state");

    const DenseOperator f = qft_dense(N);
    const DenseOperator cz = gate(GateName::cz, N);
    const DenseOperator add = gate(GateName::sum, N);

    // register: qudit 0 = system, qudit 1 = ancilla |0>
    DenseState reg = DenseState::Zero(static_cast<long long>(N) * N);
    for (int j = 0; j < N; ++j) reg(static_cast<long long>(j) * N + 0) = psi(j);

    reg = apply_gate(reg, f, {1}, N, 2);
    reg = apply_gate(reg, cz, {0, 1}, N, 2);
    // SWAP = K_a . SUM_{a->s} . SUM^dag_{s->a} . SUM_{a->s}; the K merges with
    // the final ancilla QFT^dagger into a plain QFT.
    reg = apply_gate(reg, add, {1, 0}, N, 2);
    reg = apply_gate(reg, DenseOperator(add.adjoint()), {0, 1}, N, 2);
    reg = apply_gate(reg, add, {1, 0}, N, 2);
    reg = apply_gate(reg, f, {1}, N, 2);

    const auto probs = detail_circ::outcome_probabilities(reg, 1, N, 2);
    int outcome;
    if (forced_outcome) {
        if (*forced_outcome < 0 || *forced_outcome >= N)
            throw std::invalid_argument("forced outcome out of range");
        outcome = *forced_outcome;
    } else {
        std::mt19937_64 fallback(0);
        outcome = detail_circ::sample_outcome(probs, rng ? *rng : fallback);
    }

    MeasurementRecord rec;
    rec.outcome = outcome;
    rec.probability = probs[static_cast<size_t>(outcome)];
    DenseState collapsed = detail_circ::collapse(reg, 1, N, 2, outcome, rec.probability);
    DenseState sys = detail_circ::extract_single(collapsed, 0, 1, outcome, N);
    const DenseOperator xcorr = to_dense(GenPauli::x_op(N, 1, 0, mod_norm(-outcome, N)));
    rec.post_state = xcorr * sys;
    return rec;
}

/**
 * Diagonal-gate injection: ancilla prepared as U QFT|0>, SUM^dagger
 * controlled by the ancilla, SWAP, measurement, and the U X^L U^dagger
 * correction. For U = T (N >= 5) every correction is Clifford.
 */
inline MeasurementRecord inject_diagonal(const DenseOperator& U, const DenseState& psi,
                                         std::optional<int> forced_outcome,
                                         std::mt19937_64* rng = nullptr) {
    const int N = static_cast<int>(psi.size());
    require_prime(N);
    if (U.rows() != N || U.cols() != N) throw std::invalid_argument("gate/state dimension mismatch");
    for (long long i = 0; i < N; ++i)
        for (long long j = 0; j < N; ++j)
            if (i != j && std::abs(U(i, j)) > 1e-12)
                throw std::invalid_argument("injection gate must be diagonal");
    if (std::abs(psi.norm() - 1.0) > 1e-12) throw std::invalid_argument("unnormalized input state");

    const DenseOperator f = qft_dense(N);
    const DenseOperator add = gate(GateName::sum, N);

    DenseState anc = DenseState::Zero(N);
    anc(0) = 1.0;
    anc = U * (f * anc);

    DenseState reg = DenseState::Zero(static_cast<long long>(N) * N);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) reg(static_cast<long long>(j) * N + k) = psi(j) * anc(k);

    reg = apply_gate(reg, DenseOperator(add.adjoint()), {1, 0}, N, 2); // ancilla-controlled SUM^dag
    // SWAP
    {
        DenseState swapped = DenseState::Zero(reg.size());
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                swapped(static_cast<long long>(k) * N + j) = reg(static_cast<long long>(j) * N + k);
        reg = swapped;
    }

    const auto probs = detail_circ::outcome_probabilities(reg, 1, N, 2);
    int outcome;
    if (forced_outcome) {
        if (*forced_outcome < 0 || *forced_outcome >= N)
            throw std::invalid_argument("forced outcome out of range");
        outcome = *forced_outcome;
    } else {
        std::mt19937_64 fallback(0);
        outcome = detail_circ::sample_outcome(probs, rng ? *rng : fallback);
    }

    MeasurementRecord rec;
    rec.outcome = outcome;
    rec.probability = probs[static_cast<size_t>(outcome)];
    DenseState collapsed = detail_circ::collapse(reg, 1, N, 2, outcome, rec.probability);
    DenseState sys = detail_circ::extract_single(collapsed, 0, 1, outcome, N);
    const DenseOperator xl = to_dense(GenPauli::x_op(N, 1, 0, outcome));
    rec.post_state = U * xl * U.adjoint() * sys;
    return rec;
}

// ---------------------------------------------------------------------------
// Qudit phase-flip repetition code.
// ---------------------------------------------------------------------------

/// The [[3,1]]_Nphase-flip code: S1 = X1 X2^{-1}, S2 = X2 X3^{-1}, with
/// logical Zbar = Z1 Z2 Z3 and Xbar = X1.
inline StabilizerCode phase_flip_code(int N) {
    require_prime(N);
    std::vector<GenPauli> gens;
    GenPauli s1(N, 3), s2(N, 3);
    s1.xexp = {1, N - 1, 0};
    s2.xexp = {0, 1, N - 1};
    gens.push_back(s1);
    gens.push_back(s2);
    GenPauli lz(N, 3);
    lz.zexp = {1, 1, 1};
    return new_code(N, 3, gens, {GenPauli::x_op(N, 3, 0)}, {lz});
}

/// Codewords via the normalized stabilizer average: |0>_L ~ prod_i sum_j
/// S_i^j |000>, then |n>_L = Xbar^n |0>_L.
inline std::vector<DenseState> phase_flip_codewords(int N) {
    const StabilizerCode code = phase_flip_code(N);
    const long long dim = dim_pow(N, 3);
    DenseState zero = DenseState::Zero(dim);
    zero(0) = 1.0;
    for (const auto& g : code.generators) {
        DenseState acc = DenseState::Zero(dim);
        for (int j = 0; j < N; ++j) {
            const GenPauli gj = pow(g, j);
            for (long long v = 0; v < dim; ++v) {
                if (zero(v) == Complex(0.0, 0.0)) continue;
                const BasisImage im = apply_to_basis(gj, v);
                acc(im.index) += im.amp * zero(v);
            }
        }
        zero = acc;
    }
    zero.normalize();
    std::vector<DenseState> words;
    words.push_back(zero);
    const DenseOperator xbar = to_dense(code.logical_x[0]);
    for (int n = 1; n < N; ++n) words.push_back(xbar * words.back());
    return words;
}

/// Map a syndrome to the correcting operator for the unique single-qudit
/// Z^j error consistent with it (apply Z^{N-j} to undo Z^j).
inline GenPauli phase_flip_decode(const std::vector<int>& syn, int N) {
    const StabilizerCode code = phase_flip_code(N);
    if (syn.size() != code.generators.size())
        throw std::invalid_argument("syndrome length must match the generator count");
    if (syn[0] == 0 && syn[1] == 0) return GenPauli::identity(N, 3);
    for (int qudit = 0; qudit < 3; ++qudit)
        for (int j = 1; j < N; ++j) {
            const GenPauli err = GenPauli::z_op(N, 3, qudit, j);
            if (syndrome(code, err) == syn) return GenPauli::z_op(N, 3, qudit, N - j);
        }
    throw std::invalid_argument("uncorrectable under code assumptions: syndrome matches no "
                                "single-qudit Z error");
}

/**
 * Syndrome extraction by circuit: rotate the three data qudits by QFT so the
 * X-type stabilizers become diagonal differences, accumulate those onto |0>
 * ancillas with SUM/SUM^dagger pairs, and measure. On any state of the form
 * (Z-error x codeword) both outcomes are deterministic and reproduce the
 * algebraic syndrome exactly.
 */
inline std::vector<MeasurementRecord> parity_check_circuit(const StabilizerCode& code,
                                                           const GenPauli& error,
                                                           const DenseState& encoded) {
    const int N = code.levels;
    const long long data_dim = dim_pow(N, 3);
    if (encoded.size() != data_dim) throw std::invalid_argument("encoded state must live on 3 qudits");

    // register: data 0,1,2; ancillas 3,4
    const int n = 5;
    const long long dim = dim_pow(N, n);
    DenseState reg = DenseState::Zero(dim);
    {
        DenseState data = DenseState::Zero(data_dim);
        for (long long v = 0; v < data_dim; ++v) {
            if (encoded(v) == Complex(0.0, 0.0)) continue;
            const BasisImage im = apply_to_basis(error, v);
            data(im.index) += im.amp * encoded(v);
        }
        for (long long v = 0; v < data_dim; ++v) reg(v * N * N) = data(v);
    }

    const DenseOperator f = qft_dense(N);
    const DenseOperator add = gate(GateName::sum, N);
    for (int q = 0; q < 3; ++q) reg = apply_gate(reg, f, {q}, N, n);
    reg = apply_gate(reg, add, {0, 3}, N, n);
    reg = apply_gate(reg, DenseOperator(add.adjoint()), {1, 3}, N, n);
    reg = apply_gate(reg, add, {1, 4}, N, n);
    reg = apply_gate(reg, DenseOperator(add.adjoint()), {2, 4}, N, n);
    for (int q = 0; q < 3; ++q) reg = apply_gate(reg, DenseOperator(f.adjoint()), {q}, N, n);

    std::vector<MeasurementRecord> records;
    for (int anc = 3; anc <= 4; ++anc) {
        const auto probs = detail_circ::outcome_probabilities(reg, anc, N, n);
        int outcome = 0;
        double best = -1.0;
        for (int j = 0; j < N; ++j)
            if (probs[static_cast<size_t>(j)] > best) {
                best = probs[static_cast<size_t>(j)];
                outcome = j;
            }
        if (std::abs(best - 1.0) > 1e-9)
            throw std::logic_error("syndrome extraction was not deterministic");
        reg = detail_circ::collapse(reg, anc, N, n, outcome, best);
        MeasurementRecord rec;
        rec.outcome = outcome;
        rec.probability = best;
        rec.post_state = reg;
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace znlgt
