#include "vsec/field_tower.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace vsec;

TEST_CASE("field axioms hold on sampled elements") {
    struct Case { std::uint32_t p; std::vector<int> degs; };
    for (auto& [p, degs] : {Case{2, {1, 2, 3}}, Case{3, {1, 2}}, Case{2, {2, 2}}}) {
        FieldTower T(p, degs);
        std::mt19937 rng(7);
        for (int lvl = 0; lvl < T.num_levels(); ++lvl) {
            std::uint32_t n = T.size(lvl);
            for (int trial = 0; trial < 200; ++trial) {
                elem a = rng() % n, b = rng() % n, c = rng() % n;
                CHECK(T.add(lvl, a, b) == T.add(lvl, b, a));
                CHECK(T.mul(lvl, a, b) == T.mul(lvl, b, a));
                CHECK(T.add(lvl, T.add(lvl, a, b), c) == T.add(lvl, a, T.add(lvl, b, c)));
                CHECK(T.mul(lvl, T.mul(lvl, a, b), c) == T.mul(lvl, a, T.mul(lvl, b, c)));
                CHECK(T.mul(lvl, a, T.add(lvl, b, c)) ==
                      T.add(lvl, T.mul(lvl, a, b), T.mul(lvl, a, c)));
                CHECK(T.add(lvl, a, T.neg(lvl, a)) == 0);
                if (a != 0) CHECK(T.mul(lvl, a, T.inv(lvl, a)) == 1);
            }
        }
    }
}

TEST_CASE("subfield embedding is the identity on element indices") {
    FieldTower T(2, {1, 2, 3});
    // F4 sits inside F64 as the elements fixed by x -> x^4
    int fixed = 0;
    for (elem a = 0; a < 64; ++a) {
        bool in4 = T.in_subfield(2, a, 4);
        CHECK(in4 == (T.frobenius(2, a, 4) == a));
        if (in4) ++fixed;
    }
    CHECK(fixed == 4);
    // arithmetic restricted to the subfield agrees with the subfield's own tables
    for (elem a = 0; a < 4; ++a)
        for (elem b = 0; b < 4; ++b) {
            CHECK(T.add(2, a, b) == T.add(1, a, b));
            CHECK(T.mul(2, a, b) == T.mul(1, a, b));
        }
}

TEST_CASE("absolute trace of F8 over F2 is balanced") {
    FieldTower T(2, {1, 3});
    int ones = 0;
    for (elem a = 0; a < 8; ++a) {
        elem t = T.trace(1, a, 2);
        CHECK(t < 2);
        if (t == 1) ++ones;
    }
    CHECK(ones == 4);
}

TEST_CASE("quadratic parameter t^2 + a t + 1") {
    SECTION("q = 2: a = 1 and xi is a cube root of unity") {
        FieldTower T(2, {1, 2, 3});
        auto P = find_quadratic_param(T, 0);
        CHECK(P.a == 1);
        CHECK(P.xi == 2);
        // xi^2 + xi + 1 = 0
        CHECK(T.add(1, T.add(1, T.mul(1, P.xi, P.xi), P.xi), 1) == 0);
        // a = 0 would give t^2 + 1 = (t + 1)^2, so it must not be chosen
        for (elem t = 0; t < 2; ++t)
            CHECK(T.add(0, T.mul(0, t, t), 1) == (t == 1 ? 0u : 1u));
    }
    SECTION("q = 4: a = 2") {
        FieldTower T(2, {2, 2});
        auto P = find_quadratic_param(T, 0);
        CHECK(P.a == 2);
        CHECK(T.add(1, T.add(1, T.mul(1, P.xi, P.xi), T.mul(1, P.a, P.xi)), 1) == 0);
    }
    SECTION("split and join are mutually inverse") {
        FieldTower T(2, {2, 2});
        auto P = find_quadratic_param(T, 0);
        for (elem u = 0; u < 16; ++u) {
            auto [u1, u2] = P.split(T, u);
            CHECK(u1 < 4);
            CHECK(u2 < 4);
            CHECK(P.join(T, u1, u2) == u);
        }
    }
}

TEST_CASE("Moore-determinant independence") {
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);

    SECTION("examples") {
        CHECK(moore_independence(T, 1, {1, P.xi}, 2));
        CHECK_FALSE(moore_independence(T, 2, {1, P.xi}, 4)); // both lie in F4
        elem x = 5, y = 23;
        CHECK_FALSE(moore_independence(T, 2, {x, y, T.add(2, x, y)}, 4));
        CHECK_THROWS_AS(moore_independence(T, 2, {}, 4), std::invalid_argument);
        CHECK_THROWS_AS(moore_independence(T, 2, {1, 2, 3, 5}, 4), std::invalid_argument);
    }
    SECTION("counts every ordered basis triple of F64 over F4") {
        // (64 - 1)(64 - 4)(64 - 16) = 181440
        std::uint64_t bases = 0;
        for (elem x = 1; x < 64; ++x)
            for (elem y = 1; y < 64; ++y)
                for (elem z = 1; z < 64; ++z)
                    if (moore_independence(T, 2, {x, y, z}, 4)) ++bases;
        CHECK(bases == 181440);
    }
    SECTION("determinant and rank routes agree on random samples") {
        // moore_independence itself throws if its two routes disagree
        std::mt19937 rng(42);
        for (int trial = 0; trial < 10000; ++trial) {
            std::vector<elem> xs(1 + rng() % 3);
            for (auto& v : xs) v = rng() % 64;
            CHECK_NOTHROW(moore_independence(T, 2, xs, 4));
        }
    }
}

TEST_CASE("tower constructor rejects bad input") {
    CHECK_THROWS_AS(FieldTower(4, {1}), std::invalid_argument);
    CHECK_THROWS_AS(FieldTower(2, {}), std::invalid_argument);
    FieldTower T(2, {1, 2, 3});
    CHECK(T.level_of_size(8) == -1);
    CHECK(T.level_of_size(64) == 2);
}
