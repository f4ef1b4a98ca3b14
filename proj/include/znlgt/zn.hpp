#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace znlgt {

/// Deterministic primality test by trial division. Intended for the small
/// qudit dimensions used throughout (N < 10^6 is instant).
inline bool is_prime(long long n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (long long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline void require_prime(int n) {
    if (!is_prime(n))
        throw std::invalid_argument("composite modulus: N = " + std::to_string(n) +
                                    " is not prime");
}

/// Normalize an integer to the canonical representative in [0, n).
inline int mod_norm(long long a, int n) {
    long long r = a % n;
    if (r < 0) r += n;
    return static_cast<int>(r);
}

inline int mod_add(int a, int b, int n) { return mod_norm(static_cast<long long>(a) + b, n); }
inline int mod_sub(int a, int b, int n) { return mod_norm(static_cast<long long>(a) - b, n); }
inline int mod_mul(int a, int b, int n) { return mod_norm(static_cast<long long>(a) * b, n); }

/// Multiplicative inverse in the field Z_N, N prime. Computed by Fermat
/// exponentiation; a must be nonzero mod N.
inline int mod_inverse(int a, int n) {
    require_prime(n);
    a = mod_norm(a, n);
    if (a == 0)
        throw std::domain_error("no inverse: 0 has no multiplicative inverse mod " +
                                std::to_string(n));
    long long base = a, result = 1;
    long long e = n - 2;
    while (e > 0) {
        if (e & 1) result = (result * base) % n;
        base = (base * base) % n;
        e >>= 1;
    }
    return static_cast<int>(result);
}

} // namespace znlgt
