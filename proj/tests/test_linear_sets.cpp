#include "vsec/linear_set.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace vsec;

namespace {

LinearSetSpec random_spec(const FieldTower& T, const QuadraticParam& P, std::mt19937& rng) {
    LinearSetSpec sp{P, Mat(6, 6)};
    std::uint32_t q = T.size(P.q_level);
    for (auto& v : sp.forms.a) v = rng() % q;
    return sp;
}

} // namespace

TEST_CASE("the zero spec gives the standard plane") {
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);
    LinearSetSpec zero{P, Mat(6, 6)};
    auto pts = linset_points(T, zero);
    CHECK(pts.size() == 21);
    for (auto& wp : pts) {
        CHECK(wp.weight == 2);
        // the plane {t3 = t4 = t5 = 0}
        CHECK(wp.point.c[3] == 0);
        CHECK(wp.point.c[4] == 0);
        CHECK(wp.point.c[5] == 0);
    }
    CHECK(linset_is_plane(T, zero, pts));
    CHECK(linset_cardinality_identity(T, zero, pts));
    // it meets the secant variety, witnessed on a rank-1 point
    auto v = disjoint_from_secant(T, zero);
    CHECK_FALSE(v.disjoint_direct);
    CHECK(v.consistent());
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->c == std::vector<elem>{1, 0, 0, 0, 0, 0});
}

TEST_CASE("cardinality identity holds for random specs") {
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);
    std::mt19937 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        auto sp = random_spec(T, P, rng);
        auto pts = linset_points(T, sp);
        CHECK(linset_cardinality_identity(T, sp, pts));
        for (auto& wp : pts) CHECK((wp.weight == 1 || wp.weight == 2));
    }
}

TEST_CASE("the (f,g) system reproduces the secant value") {
    SECTION("q = 2, many specs, every parameter point") {
        FieldTower T(2, {1, 2, 3});
        auto P = find_quadratic_param(T, 0);
        std::mt19937 rng(12345);
        for (int trial = 0; trial < 300; ++trial) {
            auto sp = random_spec(T, P, rng);
            auto sys = derive_fg(T, sp);
            for_each_pg_point(T, 0, 5, [&](const std::vector<elem>& v) {
                auto w = linset_vector(T, sp, v);
                SymPoint t{w[0], w[1], w[2], w[3], w[4], w[5]};
                elem direct = secant_value(T, 1, t);
                elem viafg = P.join(T, mp_eval(T, 0, sys.f, v), mp_eval(T, 0, sys.g, v));
                CHECK(direct == viafg);
            });
        }
    }
    SECTION("q = 4") {
        FieldTower T(2, {2, 2});
        auto P = find_quadratic_param(T, 0);
        std::mt19937 rng(999);
        for (int trial = 0; trial < 5; ++trial) {
            auto sp = random_spec(T, P, rng);
            auto sys = derive_fg(T, sp);
            for_each_pg_point(T, 0, 5, [&](const std::vector<elem>& v) {
                auto w = linset_vector(T, sp, v);
                SymPoint t{w[0], w[1], w[2], w[3], w[4], w[5]};
                elem direct = secant_value(T, 1, t);
                elem viafg = P.join(T, mp_eval(T, 0, sys.f, v), mp_eval(T, 0, sys.g, v));
                CHECK(direct == viafg);
            });
        }
    }
}

TEST_CASE("shape of the derived cubics") {
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto sp = random_spec(T, P, rng);
        auto sys = derive_fg(T, sp);
        CHECK(sys.f != sys.g);
        for (auto* poly : {&sys.f, &sys.g}) {
            for (auto& [m, c] : *poly) {
                CHECK(c != 0);
                int deg = 0;
                for (int e : m) deg += e;
                CHECK(deg == 3); // homogeneous cubics
            }
            // variables are (x1,x2,y1,y2,z1,z2); monomials mixing both halves of
            // one coordinate with one half of another never appear
            CHECK_FALSE(poly->count({1, 1, 1, 0, 0, 0}));
            CHECK_FALSE(poly->count({1, 1, 0, 1, 0, 0}));
            CHECK_FALSE(poly->count({1, 1, 0, 0, 1, 0}));
            CHECK_FALSE(poly->count({1, 1, 0, 0, 0, 1}));
        }
    }
}

TEST_CASE("disjointness oracles agree") {
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);
    std::mt19937 rng(2024);
    int disjoint = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto sp = random_spec(T, P, rng);
        auto v = disjoint_from_secant(T, sp);
        CHECK(v.consistent());
        CHECK(v.disjoint_direct == v.disjoint_fg);
        if (v.disjoint_direct) {
            ++disjoint;
            CHECK(fg_zeros(T, derive_fg(T, sp)).empty());
        } else {
            CHECK(v.witness.has_value());
        }
    }
    INFO("random specs are rarely disjoint; found " << disjoint);
}

TEST_CASE("two low-degree forms over F2 always share a nontrivial zero") {
    // Chevalley-Warning: a linear form and a cubic in six variables have total
    // degree 4 < 6, so their common zero locus cannot be just the origin
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);
    std::mt19937 rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<elem> h(6);
        for (auto& v : h) v = rng() & 1;
        auto sys = derive_fg(T, random_spec(T, P, rng));
        bool found = false;
        for_each_pg_point(T, 0, 5, [&](const std::vector<elem>& v) {
            if (found) return;
            elem hv = 0;
            for (int i = 0; i < 6; ++i) hv ^= h[std::size_t(i)] & v[std::size_t(i)];
            if (hv == 0 && mp_eval(T, 0, sys.g, v) == 0) found = true;
        });
        CHECK(found);
    }
}
