#include "vsec/veronese.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace vsec;

TEST_CASE("quadric Veronese map") {
    FieldTower T(2, {1, 2, 3});
    CHECK(v2(T, 0, {1, 1, 1}) == SymPoint{1, 1, 1, 1, 1, 1});
    CHECK(v2(T, 0, {1, 0, 0}) == SymPoint{1, 0, 0, 0, 0, 0});
    CHECK(v2(T, 0, {0, 1, 1}) == SymPoint{0, 1, 1, 0, 0, 1});
    // image points have symmetric-matrix rank 1 and known preimage
    for_each_pg_point(T, 1, 2, [&](const std::vector<elem>& p) {
        auto t = v2(T, 1, p);
        CHECK(on_veronese(T, 1, t));
        CHECK(sym_rank(T, 1, t) == 1);
        CHECK(v2_preimage(T, 1, t) == normalize_point(T, 1, p));
    });
}

TEST_CASE("secant cubic agrees with the symmetric determinant") {
    struct Case { std::uint32_t p; std::vector<int> degs; int lvl; };
    for (auto& [p, degs, lvl] : {Case{2, {1}, 0}, Case{3, {1}, 0}, Case{2, {2}, 0}}) {
        FieldTower T(p, degs);
        for_each_pg_point(T, lvl, 5, [&](const std::vector<elem>& v) {
            SymPoint t{v[0], v[1], v[2], v[3], v[4], v[5]};
            CHECK(secant_value(T, lvl, t) == det_cofactor(T, lvl, sym_matrix_view(t)));
        });
    }
}

TEST_CASE("35 points of PG(5,2) lie on the secant variety") {
    FieldTower T(2, {1});
    int on = 0;
    for_each_pg_point(T, 0, 5, [&](const std::vector<elem>& v) {
        if (on_secant(T, 0, SymPoint{v[0], v[1], v[2], v[3], v[4], v[5]})) ++on;
    });
    CHECK(on == 35);
}

TEST_CASE("special planes lie inside the secant variety") {
    FieldTower T(2, {1, 2, 3});
    for (int lvl : {0, 1}) {
        auto c = conic_plane(T, lvl, {0, 0, 1});
        auto t = tangent_plane(T, lvl, normalize_point(T, lvl, {1, 0, 0}));
        auto n = nucleus_plane(T, lvl);
        for (auto* sp : {&c, &t, &n}) {
            CHECK(sp->plane.proj_dim() == 2);
            CHECK(secant_contains(T, sp->plane));
            CHECK(classify_contained_plane(T, sp->plane).kind == sp->kind);
        }
        // the classifier recovers the witnesses
        auto cc = classify_contained_plane(T, c.plane);
        REQUIRE(cc.line.has_value());
        CHECK(normalize_point(T, lvl, *cc.line).c == std::vector<elem>{0, 0, 1});
        auto tc = classify_contained_plane(T, t.plane);
        REQUIRE(tc.point.has_value());
        CHECK(tc.point->c == std::vector<elem>{1, 0, 0});
    }
}

TEST_CASE("nucleus plane exists only in characteristic 2") {
    FieldTower T3(3, {1});
    CHECK_THROWS_AS(nucleus_plane(T3, 0), std::invalid_argument);
}

TEST_CASE("algebraic containment is stricter than pointwise containment at q=2") {
    FieldTower T(2, {1});
    SubspaceEnum E(T, 0, 5, 2);
    int pointwise = 0, algebraic = 0;
    for (std::uint64_t i = 0; i < E.total(); ++i) {
        auto pi = E.get(i);
        bool pw = true;
        for_each_pg_point(T, 0, 2, [&](const std::vector<elem>& u) {
            auto amb = param_to_ambient(T, pi, u);
            if (!on_secant(T, 0, SymPoint{amb[0], amb[1], amb[2], amb[3], amb[4], amb[5]}))
                pw = false;
        });
        if (pw) ++pointwise;
        if (secant_contains(T, pi)) {
            ++algebraic;
            CHECK(pw); // algebraic containment implies pointwise
        }
    }
    CHECK(pointwise == 22);
    CHECK(algebraic == 15);
}

TEST_CASE("meets of special planes") {
    // conic and nucleus planes share one point; tangent and nucleus share q+1
    for (auto [p, degs] : {std::pair<std::uint32_t, std::vector<int>>{2, {1}},
                           std::pair<std::uint32_t, std::vector<int>>{2, {2}}}) {
        FieldTower T(p, degs);
        std::uint64_t q = T.size(0);
        auto n = nucleus_plane(T, 0);
        auto c = conic_plane(T, 0, {1, 1, 1});
        auto t = tangent_plane(T, 0, normalize_point(T, 0, {0, 1, 0}));
        CHECK(meet(T, c.plane, n.plane).proj_dim() == 0);
        auto tn = meet(T, t.plane, n.plane);
        CHECK(tn.proj_dim() == 1);
        CHECK(pg_num_points(tn.proj_dim(), q) == q + 1);
    }
}

TEST_CASE("lifted collineations") {
    FieldTower T(2, {1, 2, 3});
    int lvl = 2;
    std::mt19937 rng(17);
    auto random_invertible = [&] {
        for (;;) {
            Mat M(3, 3);
            for (auto& v : M.a) v = rng() % 64;
            if (det_rank_kernel(T, lvl, M).det != 0) return M;
        }
    };
    SECTION("lift intertwines the Veronese map: v2(p M) = v2(p) L") {
        for (int trial = 0; trial < 100; ++trial) {
            Mat M = random_invertible();
            Mat L = lift_collineation(T, lvl, M);
            for (int rep = 0; rep < 10; ++rep) {
                std::vector<elem> p{elem(rng() % 64), elem(rng() % 64), elem(rng() % 64)};
                if (p == std::vector<elem>{0, 0, 0}) continue;
                auto lhs = apply_lift(T, lvl, L, v2(T, lvl, p));
                auto rhs = v2(T, lvl, vec_mat(T, lvl, p, M));
                CHECK(lhs == rhs);
            }
        }
    }
    SECTION("lift is multiplicative") {
        for (int trial = 0; trial < 20; ++trial) {
            Mat A = random_invertible(), B = random_invertible();
            auto lhs = lift_collineation(T, lvl, mat_mul(T, lvl, A, B));
            auto rhs = mat_mul(T, lvl, lift_collineation(T, lvl, A), lift_collineation(T, lvl, B));
            CHECK(lhs == rhs);
        }
    }
    SECTION("lift preserves the secant variety and the nucleus plane") {
        auto n = nucleus_plane(T, lvl);
        for (int trial = 0; trial < 20; ++trial) {
            Mat L = lift_collineation(T, lvl, random_invertible());
            CHECK(apply_lift(T, L, n.plane) == n.plane);
            for (int rep = 0; rep < 20; ++rep) {
                SymPoint t{};
                for (auto& v : t) v = rng() % 64;
                if (t == SymPoint{}) continue;
                CHECK(on_secant(T, lvl, t) == on_secant(T, lvl, apply_lift(T, lvl, L, t)));
            }
        }
    }
    SECTION("singular matrices are rejected") {
        CHECK_THROWS_AS(lift_collineation(T, lvl, Mat(3, 3)), std::invalid_argument);
    }
}
