#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "znlgt/circuits.hpp"
#include "znlgt/gauss.hpp"
#include "znlgt/stabilizer.hpp"

using namespace znlgt;

TEST_CASE("phase-flip code validates") {
    const auto code = phase_flip_code(3);
    CHECK(code.qudits == 3);
    CHECK(code.k() == 1);
    CHECK(code.generators.size() == 2);
}

TEST_CASE("invalid codes are rejected with the offending pair") {
    const int N = 3;
    SECTION("anticommuting generators") {
        CHECK_THROWS_WITH(new_code(N, 1, {GenPauli::x_op(N, 1, 0), GenPauli::z_op(N, 1, 0)}, {}, {}),
                          Catch::Matchers::ContainsSubstring("non-commuting generators"));
    }
    SECTION("duplicate generator") {
        GenPauli g(N, 3);
        g.zexp = {1, 2, 0};
        CHECK_THROWS_WITH(new_code(N, 3, {g, g}, {GenPauli::x_op(N, 3, 2)}, {GenPauli::z_op(N, 3, 2)}),
                          Catch::Matchers::ContainsSubstring("dependent generators"));
    }
    SECTION("wrong logical pairing phase") {
        // Xbar paired with Zbar^2 gives exponent -2 instead of -1
        GenPauli lz(N, 1);
        lz.zexp = {2};
        CHECK_THROWS_WITH(new_code(N, 1, {}, {GenPauli::x_op(N, 1, 0)}, {lz}),
                          Catch::Matchers::ContainsSubstring("pairing phase"));
    }
}

TEST_CASE("symplectic rank") {
    SECTION("empty list") { CHECK(symplectic_rank({}) == 0); }
    SECTION("scalar multiple rows collapse") {
        GenPauli p(5, 2);
        p.zexp = {1, 3};
        CHECK(symplectic_rank({p, pow(p, 2)}) == 1);
    }
    SECTION("Gauss generators of the 1D M=4 N=3 code are independent") {
        LatticeSpec spec;
        spec.dims = 1;
        spec.extent = {4, 1};
        spec.levels = 3;
        const auto gc = build_code(spec);
        CHECK(symplectic_rank(gc.code.generators) == 4);
        CHECK(gc.code.k() == 4); // k = DM
    }
}

TEST_CASE("syndromes of the phase-flip code match the displayed table") {
    const auto code = phase_flip_code(3);
    CHECK(syndrome(code, GenPauli::z_op(3, 3, 0, 1)) == std::vector<int>{2, 0});
    CHECK(syndrome(code, GenPauli::z_op(3, 3, 0, 2)) == std::vector<int>{1, 0});
    CHECK(syndrome(code, GenPauli::z_op(3, 3, 1, 1)) == std::vector<int>{1, 2});
    CHECK(syndrome(code, GenPauli::z_op(3, 3, 1, 2)) == std::vector<int>{2, 1});
    CHECK(syndrome(code, GenPauli::z_op(3, 3, 2, 1)) == std::vector<int>{0, 1});
    CHECK(syndrome(code, GenPauli::z_op(3, 3, 2, 2)) == std::vector<int>{0, 2});
    CHECK(syndrome(code, GenPauli::identity(3, 3)) == std::vector<int>{0, 0});
}

TEST_CASE("normalizer membership") {
    const auto code = phase_flip_code(3);
    CHECK(in_normalizer(code, code.logical_z[0]));
    CHECK(in_normalizer(code, code.logical_x[0]));
    CHECK_FALSE(in_normalizer(code, GenPauli::z_op(3, 3, 0)));
    for (const auto& g : code.generators) CHECK(in_normalizer(code, g));
}

TEST_CASE("normalizer decomposition") {
    const auto code = phase_flip_code(5);

    SECTION("identity decomposes trivially") {
        const auto d = decompose_normalizer(code, GenPauli::identity(5, 3));
        CHECK(d.stab_exps == std::vector<int>{0, 0});
        CHECK(d.lx_exps == std::vector<int>{0});
        CHECK(d.lz_exps == std::vector<int>{0});
        CHECK(d.phase == 0);
    }
    SECTION("generators decompose with zero logical exponents") {
        for (size_t i = 0; i < code.generators.size(); ++i) {
            const auto d = decompose_normalizer(code, code.generators[i]);
            CHECK(d.lx_exps == std::vector<int>{0});
            CHECK(d.lz_exps == std::vector<int>{0});
            CHECK(syndrome(code, code.generators[i]) == std::vector<int>{0, 0});
        }
    }
    SECTION("round trip over random normalizer elements") {
        std::mt19937_64 rng(42);
        std::uniform_int_distribution<int> d5(0, 4);
        for (int trial = 0; trial < 100; ++trial) {
            NormalizerDecomposition want;
            want.stab_exps = {d5(rng), d5(rng)};
            want.lx_exps = {d5(rng)};
            want.lz_exps = {d5(rng)};
            want.phase = d5(rng);
            const GenPauli p = recompose(code, want);
            const auto got = decompose_normalizer(code, p);
            CHECK(got.stab_exps == want.stab_exps);
            CHECK(got.lx_exps == want.lx_exps);
            CHECK(got.lz_exps == want.lz_exps);
            CHECK(got.phase == want.phase);
            CHECK(recompose(code, got) == p);
        }
    }
    SECTION("detectable errors are refused") {
        CHECK_THROWS_WITH(decompose_normalizer(code, GenPauli::z_op(5, 3, 0)),
                          Catch::Matchers::ContainsSubstring("detectable error"));
    }
}

TEST_CASE("distance scans") {
    SECTION("phase-flip code: pure-Z distance 3, pure-X distance 1") {
        const auto code = phase_flip_code(3);
        CHECK(distance(code, DistanceKind::z_type, 3) == 3);
        CHECK(distance(code, DistanceKind::x_type, 3) == 1);
        CHECK_FALSE(distance(code, DistanceKind::z_type, 2).has_value());
    }
    SECTION("scan over the full error alphabet") {
        const auto code = phase_flip_code(3);
        CHECK(distance(code, DistanceKind::quantum, 3) == 1);
    }
    SECTION("budget enforcement") {
        const auto code = phase_flip_code(5);
        CHECK_THROWS_WITH(distance(code, DistanceKind::quantum, 3, 10),
                          Catch::Matchers::ContainsSubstring("enumeration-limit"));
    }
}
