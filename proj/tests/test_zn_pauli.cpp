#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "znlgt/dense.hpp"
#include "znlgt/pauli.hpp"
#include "znlgt/zn.hpp"

using namespace znlgt;

namespace {

GenPauli random_pauli(int N, int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(0, N - 1);
    GenPauli p(N, n);
    p.phase = d(rng);
    for (int q = 0; q < n; ++q) {
        p.xexp[static_cast<size_t>(q)] = d(rng);
        p.zexp[static_cast<size_t>(q)] = d(rng);
    }
    return p;
}

double max_abs_diff(const DenseOperator& a, const DenseOperator& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("modular inverse") {
    CHECK(mod_inverse(2, 5) == 3);
    CHECK(mod_inverse(1, 7) == 1);
    // exhaustive oracle over Z_7
    int expected = -1;
    for (int b = 1; b < 7; ++b)
        if ((6 * b) % 7 == 1) expected = b;
    CHECK(mod_inverse(6, 7) == expected);
    CHECK(expected == 6);

    CHECK_THROWS(mod_inverse(0, 5));
    CHECK_THROWS(mod_inverse(3, 6));
    CHECK_THROWS(require_prime(9));
}

TEST_CASE("canonical products") {
    SECTION("mul(X, Z) is already canonical") {
        const auto p = mul(GenPauli::x_op(3, 1, 0), GenPauli::z_op(3, 1, 0));
        CHECK(p.phase == 0);
        CHECK(p.xexp[0] == 1);
        CHECK(p.zexp[0] == 1);
    }
    SECTION("mul(Z, X) picks up one crossing phase") {
        const auto p = mul(GenPauli::z_op(3, 1, 0), GenPauli::x_op(3, 1, 0));
        CHECK(p.phase == 1);
        CHECK(p.xexp[0] == 1);
        CHECK(p.zexp[0] == 1);
        CHECK(max_abs_diff(to_dense(p),
                           to_dense(GenPauli::z_op(3, 1, 0)) * to_dense(GenPauli::x_op(3, 1, 0))) <
              1e-12);
    }
    SECTION("X^2 Z times X Z^3 at N = 5, against the dense oracle") {
        GenPauli a(5, 1);
        a.xexp[0] = 2;
        a.zexp[0] = 1;
        GenPauli b(5, 1);
        b.xexp[0] = 1;
        b.zexp[0] = 3;
        const auto p = mul(a, b);
        CHECK(p.xexp[0] == 3);
        CHECK(p.zexp[0] == 4);
        CHECK(p.phase == 1);
        CHECK(max_abs_diff(to_dense(p), to_dense(a) * to_dense(b)) < 1e-12);
    }
    SECTION("mismatched registers are an error") {
        CHECK_THROWS(mul(GenPauli::x_op(3, 1, 0), GenPauli::x_op(3, 2, 0)));
        CHECK_THROWS(mul(GenPauli::x_op(3, 1, 0), GenPauli::x_op(5, 1, 0)));
    }
}

TEST_CASE("commutation exponents") {
    CHECK(commutation_exponent(GenPauli::x_op(5, 1, 0), GenPauli::z_op(5, 1, 0)) == 4);
    CHECK(commutation_exponent(GenPauli::x_op(5, 1, 0), GenPauli::x_op(5, 1, 0)) == 0);
    GenPauli a(5, 1), b(5, 1);
    a.xexp[0] = 2;
    a.zexp[0] = 1;
    b.xexp[0] = 1;
    b.zexp[0] = 3;
    CHECK(commutation_exponent(a, b) == 0);
    // dense oracle: the two products agree since the exponent is zero
    CHECK(max_abs_diff(to_dense(a) * to_dense(b), to_dense(b) * to_dense(a)) < 1e-12);
}

TEST_CASE("powers, adjoints, weight") {
    CHECK(pow(GenPauli::x_op(5, 1, 0), 5).is_identity());
    CHECK(pow(GenPauli::z_op(7, 1, 0), 7).is_identity());
    const auto zdag = adjoint(GenPauli::z_op(5, 1, 0));
    CHECK(zdag.phase == 0);
    CHECK(zdag.zexp[0] == 4);

    GenPauli p(3, 4);
    p.xexp[1] = 1;
    p.zexp[3] = 2;
    CHECK(weight(p) == 2);
    CHECK(weight(GenPauli::identity(3, 4)) == 0);
}

TEST_CASE("algebra matches dense realization", "[property]") {
    std::mt19937_64 rng(20260810);
    for (int N : {2, 3, 5}) {
        for (int trial = 0; trial < 30; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 2);
            const auto a = random_pauli(N, n, rng);
            const auto b = random_pauli(N, n, rng);
            const auto da = to_dense(a);
            const auto db = to_dense(b);

            CHECK(max_abs_diff(to_dense(mul(a, b)), da * db) < 1e-12);

            const int c = commutation_exponent(a, b);
            CHECK(max_abs_diff(da * db, omega_pow(N, c) * (db * da)) < 1e-12);

            CHECK(mul(a, adjoint(a)).is_identity());
            CHECK(pow(a, N).trivial_exponents());

            const int k = static_cast<int>(rng() % 7) - 3;
            DenseOperator dk = DenseOperator::Identity(da.rows(), da.cols());
            const DenseOperator base = k >= 0 ? da : DenseOperator(da.adjoint());
            for (int i = 0; i < std::abs(k); ++i) dk = dk * base;
            CHECK(max_abs_diff(to_dense(pow(a, k)), dk) < 1e-12);
        }
    }
}

TEST_CASE("single-qudit non-identity monomials are traceless") {
    for (int N : {3, 5}) {
        for (int x = 0; x < N; ++x)
            for (int z = 0; z < N; ++z) {
                if (x == 0 && z == 0) continue;
                GenPauli p(N, 1);
                p.xexp[0] = x;
                p.zexp[0] = z;
                CHECK(std::abs(to_dense(p).trace()) < 1e-12);
            }
    }
}

TEST_CASE("dense matrices of the generators") {
    // Z at N=3 is diag(1, w, w^2); X the displayed cyclic permutation
    const auto z = to_dense(GenPauli::z_op(3, 1, 0));
    CHECK(std::abs(z(0, 0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(z(1, 1) - omega_pow(3, 1)) < 1e-15);
    CHECK(std::abs(z(2, 2) - omega_pow(3, 2)) < 1e-15);

    const auto x = to_dense(GenPauli::x_op(3, 1, 0));
    DenseOperator expect = DenseOperator::Zero(3, 3);
    expect(1, 0) = expect(2, 1) = expect(0, 2) = 1.0;
    CHECK(max_abs_diff(x, expect) < 1e-15);

    CHECK(max_abs_diff(to_dense(GenPauli::identity(3, 2)), DenseOperator::Identity(9, 9)) < 1e-15);
    CHECK_THROWS_AS(to_dense(GenPauli::identity(3, 30)), capacity_error);
}
