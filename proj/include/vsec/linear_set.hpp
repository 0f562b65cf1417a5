#pragma once

// F_q-linear sets of rank 6 in PG(5,q^2) in the parametrized form
// (x,y,z) -> (x,y,z,F1,F2,F3), F_i = (first form) + xi (second form), the
// expansion of the secant condition into the cubic pair (f,g) over F_q, and
// disjointness from the secant variety with the two routes (direct point
// checks vs. emptiness of the (f,g) zero locus) kept side by side.

#include "vsec/veronese.hpp"

#include <optional>

namespace vsec {

// six F_q-linear forms l1,l2,m1,m2,n1,n2 acting on (x1,x2,y1,y2,z1,z2)
struct LinearSetSpec {
    QuadraticParam param;
    Mat forms; // 6x6 over F_q; rows in the order l1,l2,m1,m2,n1,n2

    int q_level() const { return param.q_level; }
    int q2_level() const { return param.q2_level; }
};

// evaluate one form row on the parameter vector v over F_q
inline elem form_eval(const FieldTower& T, const LinearSetSpec& sp, int row,
                      const std::vector<elem>& v) {
    int ql = sp.q_level();
    elem s = 0;
    for (int j = 0; j < 6; ++j)
        s = T.add(ql, s, T.mul(ql, sp.forms.at(row, j), v[std::size_t(j)]));
    return s;
}

// the ambient PG(5,q^2) coordinates of the linear-set vector with parameter v
inline std::vector<elem> linset_vector(const FieldTower& T, const LinearSetSpec& sp,
                                       const std::vector<elem>& v) {
    int q2 = sp.q2_level();
    std::vector<elem> out(6, 0);
    // x = x1 + x2 xi, etc.
    out[0] = sp.param.join(T, v[0], v[1]);
    out[1] = sp.param.join(T, v[2], v[3]);
    out[2] = sp.param.join(T, v[4], v[5]);
    for (int i = 0; i < 3; ++i) {
        elem a1 = form_eval(T, sp, 2 * i, v);
        elem a2 = form_eval(T, sp, 2 * i + 1, v);
        out[std::size_t(3 + i)] = sp.param.join(T, a1, a2);
    }
    (void)q2;
    return out;
}

struct WeightedPoint {
    ProjPoint point;
    int weight; // 1 or 2
};

// parameter coordinates over F_q of the F_{q^2} triple (x,y,z)
inline std::vector<elem> xyz_to_param(const FieldTower& T, const QuadraticParam& P, elem x,
                                      elem y, elem z) {
    auto [x1, x2] = P.split(T, x);
    auto [y1, y2] = P.split(T, y);
    auto [z1, z2] = P.split(T, z);
    return {x1, x2, y1, y2, z1, z2};
}

// whether the vector with parameter v stays in the defining space after
// multiplying the preimage (x,y,z) by xi; this is the weight-2 criterion
inline bool weight_two(const FieldTower& T, const LinearSetSpec& sp, const std::vector<elem>& v) {
    int q2 = sp.q2_level();
    auto w = linset_vector(T, sp, v);
    std::vector<elem> sv =
        xyz_to_param(T, sp.param, T.mul(q2, sp.param.xi, w[0]), T.mul(q2, sp.param.xi, w[1]),
                     T.mul(q2, sp.param.xi, w[2]));
    auto ws = linset_vector(T, sp, sv);
    for (int i = 3; i < 6; ++i)
        if (ws[std::size_t(i)] != T.mul(q2, sp.param.xi, w[std::size_t(i)])) return false;
    return true;
}

// all points of the linear set with weights; the sum q^w(P) - 1 over the
// points equals q^6 - 1
inline std::vector<WeightedPoint> linset_points(const FieldTower& T, const LinearSetSpec& sp) {
    int ql = sp.q_level(), q2 = sp.q2_level();
    std::uint32_t q = T.size(ql);
    if (q > 4) throw std::invalid_argument("linset_points: q > 4 enumeration budget");
    std::map<ProjPoint, int> pts;
    for_each_pg_point(T, ql, 5, [&](const std::vector<elem>& v) {
        auto w = linset_vector(T, sp, v);
        auto P = normalize_point(T, q2, w);
        int wt = weight_two(T, sp, v) ? 2 : 1;
        auto it = pts.find(P);
        if (it == pts.end()) pts.emplace(std::move(P), wt);
        else if (it->second != wt)
            throw std::logic_error("linset_points: inconsistent weight for a point");
    });
    std::vector<WeightedPoint> out;
    out.reserve(pts.size());
    for (auto& [P, wt] : pts) out.push_back({P, wt});
    return out;
}

inline bool linset_cardinality_identity(const FieldTower& T, const LinearSetSpec& sp,
                                        const std::vector<WeightedPoint>& pts) {
    std::uint64_t q = T.size(sp.q_level());
    std::uint64_t sum = 0;
    for (auto& wp : pts) sum += (wp.weight == 2 ? q * q - 1 : q - 1);
    std::uint64_t q6 = 1;
    for (int i = 0; i < 6; ++i) q6 *= q;
    return sum == q6 - 1;
}

// ---- the (f,g) system ----

struct FGSystem {
    MultiPoly f, g; // exponent vectors of length 6, coefficients over F_q
    int q_level = 0;
};

inline MultiPoly mp_var(int i) {
    std::vector<int> m(6, 0);
    m[std::size_t(i)] = 1;
    return {{m, 1}};
}

// monomial v_a * v_b * v_c
inline void add_triple(const FieldTower& T, int lvl, MultiPoly& p, int a, int b, int c, elem coef) {
    std::vector<int> m(6, 0);
    ++m[std::size_t(a)];
    ++m[std::size_t(b)];
    ++m[std::size_t(c)];
    mp_add(T, lvl, p, m, coef);
}

// v_k * (form row)^2 expanded by Frobenius-linearity of squaring (char 2)
inline void add_var_times_form_sq(const FieldTower& T, int lvl, MultiPoly& p,
                                  const LinearSetSpec& sp, int var, int row, elem coef) {
    for (int j = 0; j < 6; ++j) {
        elem c = sp.forms.at(row, j);
        if (c == 0) continue;
        elem c2 = T.mul(lvl, c, c);
        std::vector<int> m(6, 0);
        ++m[std::size_t(var)];
        m[std::size_t(j)] += 2;
        mp_add(T, lvl, p, m, T.mul(lvl, coef, c2));
    }
}

// expansion of the secant condition over the basis {1, xi}: the value at the
// linear-set point with parameter v equals f(v) + xi g(v)
inline FGSystem derive_fg(const FieldTower& T, const LinearSetSpec& sp) {
    if (T.p() != 2) throw std::invalid_argument("derive_fg: characteristic 2 required");
    int ql = sp.q_level();
    elem a = sp.param.a;
    elem a2p1 = T.add(ql, T.mul(ql, a, a), 1);
    // variable indices: x1=0 x2=1 y1=2 y2=3 z1=4 z2=5
    // form rows:        l1=0 l2=1 m1=2 m2=3 n1=4 n2=5
    FGSystem sys;
    sys.q_level = ql;
    MultiPoly& f = sys.f;
    add_triple(T, ql, f, 0, 2, 4, 1); // x1 y1 z1
    add_triple(T, ql, f, 0, 3, 5, 1); // x1 y2 z2
    add_triple(T, ql, f, 1, 2, 5, 1); // x2 y1 z2
    add_triple(T, ql, f, 1, 3, 4, 1); // x2 y2 z1
    add_triple(T, ql, f, 1, 3, 5, a); // a x2 y2 z2
    add_var_times_form_sq(T, ql, f, sp, 0, 4, 1); // x1 n1^2
    add_var_times_form_sq(T, ql, f, sp, 2, 2, 1); // y1 m1^2
    add_var_times_form_sq(T, ql, f, sp, 4, 0, 1); // z1 l1^2
    add_var_times_form_sq(T, ql, f, sp, 0, 5, 1); // x1 n2^2
    add_var_times_form_sq(T, ql, f, sp, 2, 3, 1); // y1 m2^2
    add_var_times_form_sq(T, ql, f, sp, 4, 1, 1); // z1 l2^2
    add_var_times_form_sq(T, ql, f, sp, 1, 5, a); // a x2 n2^2
    add_var_times_form_sq(T, ql, f, sp, 3, 3, a); // a y2 m2^2
    add_var_times_form_sq(T, ql, f, sp, 5, 1, a); // a z2 l2^2

    MultiPoly& g = sys.g;
    add_triple(T, ql, g, 0, 2, 5, 1); // x1 y1 z2
    add_triple(T, ql, g, 0, 3, 4, 1); // x1 y2 z1
    add_triple(T, ql, g, 1, 2, 4, 1); // x2 y1 z1
    add_var_times_form_sq(T, ql, g, sp, 1, 4, 1); // x2 n1^2
    add_var_times_form_sq(T, ql, g, sp, 3, 2, 1); // y2 m1^2
    add_var_times_form_sq(T, ql, g, sp, 5, 0, 1); // z2 l1^2
    add_triple(T, ql, g, 0, 3, 5, a); // a x1 y2 z2
    add_triple(T, ql, g, 1, 2, 5, a); // a x2 y1 z2
    add_triple(T, ql, g, 1, 3, 4, a); // a x2 y2 z1
    add_var_times_form_sq(T, ql, g, sp, 0, 5, a); // a x1 n2^2
    add_var_times_form_sq(T, ql, g, sp, 2, 3, a); // a y1 m2^2
    add_var_times_form_sq(T, ql, g, sp, 4, 1, a); // a z1 l2^2
    add_triple(T, ql, g, 1, 3, 5, a2p1); // (a^2+1) x2 y2 z2
    add_var_times_form_sq(T, ql, g, sp, 1, 5, a2p1); // (a^2+1) x2 n2^2
    add_var_times_form_sq(T, ql, g, sp, 3, 3, a2p1); // (a^2+1) y2 m2^2
    add_var_times_form_sq(T, ql, g, sp, 5, 1, a2p1); // (a^2+1) z2 l2^2
    return sys;
}

inline elem mp_eval(const FieldTower& T, int lvl, const MultiPoly& p, const std::vector<elem>& v) {
    elem s = 0;
    for (auto& [m, c] : p) {
        elem t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int e = 0; e < m[i]; ++e) t = T.mul(lvl, t, v[i]);
        s = T.add(lvl, s, t);
    }
    return s;
}

// common projective zeros of (f,g) over F_q, by brute force
inline std::vector<ProjPoint> fg_zeros(const FieldTower& T, const FGSystem& sys) {
    int ql = sys.q_level;
    if (T.size(ql) > 16) throw std::invalid_argument("fg_zeros: q > 16 budget");
    std::vector<ProjPoint> zs;
    for_each_pg_point(T, ql, 5, [&](const std::vector<elem>& v) {
        if (mp_eval(T, ql, sys.f, v) == 0 && mp_eval(T, ql, sys.g, v) == 0)
            zs.push_back(normalize_point(T, ql, v));
    });
    return zs;
}

struct DisjointnessVerdict {
    bool disjoint_direct = false;     // every point of the set off the secant variety
    bool disjoint_fg = false;         // (f,g) has no projective F_q-zero
    bool meets_nucleus = false;       // some point of the set lies in {t0=t1=t2=0}
    std::optional<ProjPoint> witness; // intersection point with V1, if any
    bool consistent() const { return disjoint_direct == disjoint_fg; }
};

inline DisjointnessVerdict disjoint_from_secant(const FieldTower& T, const LinearSetSpec& sp) {
    int q2 = sp.q2_level();
    DisjointnessVerdict v;
    v.disjoint_direct = true;
    for_each_pg_point(T, sp.q_level(), 5, [&](const std::vector<elem>& pv) {
        auto w = linset_vector(T, sp, pv);
        SymPoint t{w[0], w[1], w[2], w[3], w[4], w[5]};
        if (w[0] == 0 && w[1] == 0 && w[2] == 0) v.meets_nucleus = true;
        if (v.disjoint_direct && secant_value(T, q2, t) == 0) {
            v.disjoint_direct = false;
            v.witness = normalize_point(T, q2, w);
        }
    });
    v.disjoint_fg = fg_zeros(T, derive_fg(T, sp)).empty();
    return v;
}

// true iff the linear set is a plane: all points weight 2 and exactly
// (q^2)^2 + q^2 + 1 of them
inline bool linset_is_plane(const FieldTower& T, const LinearSetSpec& sp,
                            const std::vector<WeightedPoint>& pts) {
    std::uint64_t q2 = T.size(sp.q2_level());
    for (auto& wp : pts)
        if (wp.weight != 2) return false;
    return pts.size() == q2 * q2 + q2 + 1;
}

} // namespace vsec
