#include "vsec/spread.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace vsec;

namespace {

Mat identity(int n) {
    Mat I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

// zero-diagonal symmetric 4x4 over F2 from six off-diagonal bits in the order
// (0,1), (0,2), (0,3), (1,2), (1,3), (2,3)
Mat sym_from_bits(unsigned bits) {
    static const std::pair<int, int> off[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    Mat M(4, 4);
    for (int k = 0; k < 6; ++k)
        if (bits >> k & 1) {
            M.at(off[k].first, off[k].second) = 1;
            M.at(off[k].second, off[k].first) = 1;
        }
    return M;
}

} // namespace

TEST_CASE("trace self-dual basis of F64 over F4") {
    FieldTower T(2, {1, 2, 3});
    auto b = trace_self_dual_basis(T, 2, 1);
    CHECK(b == std::vector<elem>{5, 49, 53});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(T.trace(2, T.mul(2, b[std::size_t(i)], b[std::size_t(j)]), 4) ==
                  (i == j ? 1u : 0u));
}

TEST_CASE("Desarguesian spread set of F64 over F4") {
    FieldTower T(2, {1, 2, 3});
    auto b = trace_self_dual_basis(T, 2, 1);
    auto C = desarguesian_spread_set(T, 2, 1);
    REQUIRE(C.mats.size() == 64);
    CHECK(C.mats[0] == Mat(3, 3));
    CHECK(C.mats[1] == identity(3));

    SECTION("matrices transport field multiplication") {
        for (elem e = 0; e < 64; ++e)
            for (elem x0 = 0; x0 < 4; ++x0)
                for (elem x1 = 0; x1 < 4; ++x1) {
                    std::vector<elem> x{x0, x1, 2};
                    elem xf = 0, yf = 0;
                    auto y = vec_mat(T, 1, x, C.mats[e]);
                    for (int i = 0; i < 3; ++i) {
                        xf = T.add(2, xf, T.mul(2, x[std::size_t(i)], b[std::size_t(i)]));
                        yf = T.add(2, yf, T.mul(2, y[std::size_t(i)], b[std::size_t(i)]));
                    }
                    CHECK(yf == T.mul(2, xf, e));
                }
    }
    SECTION("flags") {
        auto fl = validate_spread_set(T, C);
        CHECK(fl.spread);
        CHECK(fl.full);
        CHECK(fl.semifield);
        CHECK(fl.symplectic);
        CHECK_FALSE(fl.kerdock); // odd-characteristic-style skew condition fails
        CHECK_FALSE(symplectic_isotropy_witness(T, C).has_value());
    }
    SECTION("line cover partitions the point set") {
        auto cover = spread_cover(T, C);
        CHECK(cover.partition);
        CHECK_FALSE(cover.axioms_checked); // 4^6 points exceed the affine-axiom budget
    }
    SECTION("flags and partition stay consistent under corruption") {
        auto bad = C;
        bad.mats[7] = bad.mats[9]; // duplicate member: differences become singular
        auto fl = validate_spread_set(T, bad);
        CHECK_FALSE(fl.spread);
        CHECK_FALSE(spread_cover(T, bad).partition);
    }
    SECTION("isotropy witness appears when symmetry is broken") {
        auto bad = C;
        bad.mats[2].at(0, 1) = T.add(1, bad.mats[2].at(0, 1), 1);
        auto w = symplectic_isotropy_witness(T, bad);
        REQUIRE(w.has_value());
        auto [m, i, j] = *w;
        CHECK(m == 2);
        CHECK(bad.mats[2].at(i, j) != bad.mats[2].at(j, i));
    }
}

TEST_CASE("small Desarguesian cover satisfies the affine-plane axioms") {
    FieldTower T(2, {1, 2, 3});
    auto C2 = desarguesian_spread_set(T, 1, 0); // F4 over F2, 2x2 matrices
    auto cover = spread_cover(T, C2);
    CHECK(cover.partition);
    CHECK(cover.axioms_checked);
    CHECK(cover.axioms_ok);
    CHECK(cover.num_lines == 20);
    CHECK(cover.parallel_classes == 5);
}

TEST_CASE("flag definitions on two-element sets") {
    FieldTower T(2, {1});
    Mat J(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) J.at(i, j) = i == j ? 0 : 1;
    REQUIRE(det_rank_kernel(T, 0, J).det == 1);

    SpreadSet SJ{0, 4, {Mat(4, 4), J}};
    auto fj = validate_spread_set(T, SJ);
    CHECK(fj.spread);
    CHECK_FALSE(fj.full);
    CHECK_FALSE(fj.semifield);
    CHECK(fj.symplectic);
    CHECK(fj.kerdock); // skew with zero diagonal, even size

    SpreadSet SI{0, 4, {Mat(4, 4), identity(4)}};
    auto fi = validate_spread_set(T, SI);
    CHECK(fi.spread);
    CHECK(fi.symplectic);
    CHECK_FALSE(fi.kerdock); // nonzero diagonal
}

TEST_CASE("an eight-element Kerdock-style set") {
    // zero-diagonal symmetric 4x4 over F2 with every nonzero member invertible;
    // found by exhaustive clique search over the 64-element coefficient cube
    FieldTower T(2, {1});
    SpreadSet K{0, 4, {}};
    for (unsigned bits : {0u, 12u, 22u, 27u, 39u, 41u, 53u, 58u})
        K.mats.push_back(sym_from_bits(bits));
    auto fl = validate_spread_set(T, K);
    CHECK(fl.spread);
    CHECK_FALSE(fl.full);
    CHECK(fl.symplectic);
    CHECK(fl.kerdock);
    // it cannot be enlarged to an F2-linear space: no 3-dimensional subspace of
    // zero-diagonal symmetric matrices is entirely invertible (a quadratic form
    // in three variables over F2 always has a nontrivial zero), so additive
    // closure must fail somewhere
    bool closed = true;
    for (auto& A : K.mats)
        for (auto& B : K.mats) {
            Mat S(4, 4);
            for (std::size_t i = 0; i < S.a.size(); ++i) S.a[i] = A.a[i] ^ B.a[i];
            if (std::find(K.mats.begin(), K.mats.end(), S) == K.mats.end()) closed = false;
        }
    CHECK_FALSE(closed);
}

TEST_CASE("spread set transported to a linear set") {
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);
    auto C = desarguesian_spread_set(T, 2, 1);
    auto lfs = spread_to_linset(T, C, P);
    CHECK(lfs.points.size() == 21);
    REQUIRE(lfs.spec.has_value());
    CHECK(lfs.spec->forms.row(0) == std::vector<elem>{0, 1, 1, 1, 1, 0});
    CHECK(lfs.spec->forms.row(1) == std::vector<elem>{1, 1, 1, 0, 0, 1});
    auto pts = linset_points(T, *lfs.spec);
    CHECK(linset_is_plane(T, *lfs.spec, pts));
    auto verdict = disjoint_from_secant(T, *lfs.spec);
    CHECK(verdict.disjoint_direct);
    CHECK(verdict.disjoint_fg);
    CHECK_FALSE(verdict.meets_nucleus);
    std::vector<ProjPoint> sp;
    for (auto& wp : pts) sp.push_back(wp.point);
    std::sort(sp.begin(), sp.end());
    CHECK(sp == lfs.points);
}

TEST_CASE("presemifield from a spread set") {
    SECTION("F64 over F4 Desarguesian is the field") {
        FieldTower T(2, {1, 2, 3});
        auto info = presemifield_ops(T, desarguesian_spread_set(T, 2, 1));
        CHECK(info.order == 64);
        CHECK(info.distributive);
        CHECK(info.no_zero_divisors);
        CHECK(info.commutative);
        CHECK(info.has_identity);
        CHECK(info.left_nucleus == 64);
        CHECK(info.middle_nucleus == 64);
        CHECK(info.right_nucleus == 64);
        CHECK(info.center == 64);
    }
    SECTION("F8 over F2 Desarguesian is the field") {
        FieldTower T(2, {1, 3});
        auto info = presemifield_ops(T, desarguesian_spread_set(T, 1, 0));
        CHECK(info.order == 8);
        CHECK(info.commutative);
        CHECK(info.has_identity);
        CHECK(info.center == 8);
    }
}
