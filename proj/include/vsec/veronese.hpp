#pragma once

// The quadric Veronese surface in PG(5,.), its secant variety (singular
// symmetric 3x3 matrices), the nucleus plane in characteristic 2, conic and
// tangent planes, plane classification and intersection profiles, and the
// lifted PGL(3) action.
//
// Coordinate convention (wire format): a point (t0,...,t5) corresponds to the
// symmetric matrix
//     [ t0 t3 t4 ]
//     [ t3 t1 t5 ]
//     [ t4 t5 t2 ]
// so v2(x,y,z) = (x^2, y^2, z^2, xy, xz, yz).

#include "vsec/projective.hpp"

#include <array>
#include <map>
#include <optional>

namespace vsec {

using SymPoint = std::array<elem, 6>;

inline Mat sym_matrix_view(const SymPoint& t) {
    Mat A(3, 3);
    A.at(0, 0) = t[0]; A.at(1, 1) = t[1]; A.at(2, 2) = t[2];
    A.at(0, 1) = A.at(1, 0) = t[3];
    A.at(0, 2) = A.at(2, 0) = t[4];
    A.at(1, 2) = A.at(2, 1) = t[5];
    return A;
}

inline SymPoint sym_from_matrix(const Mat& A) {
    return {A.at(0, 0), A.at(1, 1), A.at(2, 2), A.at(0, 1), A.at(0, 2), A.at(1, 2)};
}

inline SymPoint v2(const FieldTower& T, int lvl, const std::vector<elem>& p) {
    elem x = p[0], y = p[1], z = p[2];
    return {T.mul(lvl, x, x), T.mul(lvl, y, y), T.mul(lvl, z, z),
            T.mul(lvl, x, y), T.mul(lvl, x, z), T.mul(lvl, y, z)};
}

// t0 t1 t2 - t0 t5^2 - t1 t4^2 - t2 t3^2 + 2 t3 t4 t5; equals det of the matrix view
inline elem secant_value(const FieldTower& T, int lvl, const SymPoint& t) {
    elem v = T.mul(lvl, T.mul(lvl, t[0], t[1]), t[2]);
    v = T.sub(lvl, v, T.mul(lvl, t[0], T.mul(lvl, t[5], t[5])));
    v = T.sub(lvl, v, T.mul(lvl, t[1], T.mul(lvl, t[4], t[4])));
    v = T.sub(lvl, v, T.mul(lvl, t[2], T.mul(lvl, t[3], t[3])));
    if (T.p() != 2) {
        elem two = T.from_int(2);
        v = T.add(lvl, v, T.mul(lvl, two, T.mul(lvl, t[3], T.mul(lvl, t[4], t[5]))));
    }
    return v;
}

inline bool on_secant(const FieldTower& T, int lvl, const SymPoint& t) {
    return secant_value(T, lvl, t) == 0;
}

// rank of the symmetric matrix view; rank 1 <=> on the Veronese surface
inline int sym_rank(const FieldTower& T, int lvl, const SymPoint& t) {
    Mat A = sym_matrix_view(t);
    return det_rank_kernel(T, lvl, A).rank;
}

inline bool on_veronese(const FieldTower& T, int lvl, const SymPoint& t) {
    bool nz = false;
    for (elem v : t) nz |= (v != 0);
    return nz && sym_rank(T, lvl, t) == 1;
}

// preimage under v2 of a rank-1 symmetric matrix point: any nonzero row
inline ProjPoint v2_preimage(const FieldTower& T, int lvl, const SymPoint& t) {
    Mat A = sym_matrix_view(t);
    for (int i = 0; i < 3; ++i) {
        auto r = A.row(i);
        if (r[0] != 0 || r[1] != 0 || r[2] != 0) return normalize_point(T, lvl, r);
    }
    throw std::invalid_argument("v2_preimage: zero matrix");
}

// gradient of the secant cubic at t (formal partial derivatives)
inline std::array<elem, 6> secant_gradient(const FieldTower& T, int lvl, const SymPoint& t) {
    elem two = T.from_int(2);
    std::array<elem, 6> g{};
    g[0] = T.sub(lvl, T.mul(lvl, t[1], t[2]), T.mul(lvl, t[5], t[5]));
    g[1] = T.sub(lvl, T.mul(lvl, t[0], t[2]), T.mul(lvl, t[4], t[4]));
    g[2] = T.sub(lvl, T.mul(lvl, t[0], t[1]), T.mul(lvl, t[3], t[3]));
    // d/dt3 = -2 t2 t3 + 2 t4 t5, and similar; zero in characteristic 2
    g[3] = T.mul(lvl, two, T.sub(lvl, T.mul(lvl, t[4], t[5]), T.mul(lvl, t[2], t[3])));
    g[4] = T.mul(lvl, two, T.sub(lvl, T.mul(lvl, t[3], t[5]), T.mul(lvl, t[1], t[4])));
    g[5] = T.mul(lvl, two, T.sub(lvl, T.mul(lvl, t[3], t[4]), T.mul(lvl, t[0], t[5])));
    return g;
}

// --- symbolic restriction of the secant cubic to a subspace ---
// At q = 2 a nonzero cubic can vanish on every rational point of a plane, so
// containment in the secant variety is tested on the restricted polynomial,
// not pointwise.

using MultiPoly = std::map<std::vector<int>, elem>; // exponent vector -> coeff

inline void mp_add(const FieldTower& T, int lvl, MultiPoly& p, const std::vector<int>& m, elem c) {
    if (c == 0) return;
    auto it = p.find(m);
    if (it == p.end()) p.emplace(m, c);
    else {
        it->second = T.add(lvl, it->second, c);
        if (it->second == 0) p.erase(it);
    }
}

inline MultiPoly mp_mul(const FieldTower& T, int lvl, const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    for (auto& [ma, ca] : a)
        for (auto& [mb, cb] : b) {
            std::vector<int> m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            mp_add(T, lvl, r, m, T.mul(lvl, ca, cb));
        }
    return r;
}

inline MultiPoly mp_scale(const FieldTower& T, int lvl, const MultiPoly& a, elem s) {
    MultiPoly r;
    for (auto& [m, c] : a) mp_add(T, lvl, r, m, T.mul(lvl, c, s));
    return r;
}

inline MultiPoly mp_sum(const FieldTower& T, int lvl, const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (auto& [m, c] : b) mp_add(T, lvl, r, m, c);
    return r;
}

// the secant cubic restricted to the row space of S, as a polynomial in the
// r parameter variables
inline MultiPoly restricted_secant_cubic(const FieldTower& T, const Subspace& S) {
    int lvl = S.lvl;
    int r = S.basis.rows;
    std::array<MultiPoly, 6> lin;
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < r; ++i) {
            std::vector<int> m(std::size_t(r), 0);
            m[std::size_t(i)] = 1;
            mp_add(T, lvl, lin[std::size_t(j)], m, S.basis.at(i, j));
        }
    auto sq = [&](const MultiPoly& f) { return mp_mul(T, lvl, f, f); };
    MultiPoly res = mp_mul(T, lvl, mp_mul(T, lvl, lin[0], lin[1]), lin[2]);
    elem neg1 = T.neg(lvl, 1);
    res = mp_sum(T, lvl, res, mp_scale(T, lvl, mp_mul(T, lvl, lin[0], sq(lin[5])), neg1));
    res = mp_sum(T, lvl, res, mp_scale(T, lvl, mp_mul(T, lvl, lin[1], sq(lin[4])), neg1));
    res = mp_sum(T, lvl, res, mp_scale(T, lvl, mp_mul(T, lvl, lin[2], sq(lin[3])), neg1));
    elem two = T.from_int(2);
    if (two != 0)
        res = mp_sum(T, lvl, res,
                     mp_scale(T, lvl, mp_mul(T, lvl, lin[3], mp_mul(T, lvl, lin[4], lin[5])), two));
    return res;
}

// algebraic containment of a subspace in the secant variety
inline bool secant_contains(const FieldTower& T, const Subspace& S) {
    return restricted_secant_cubic(T, S).empty();
}

enum class PlaneKind { Conic, Tangent, Nucleus };

struct SpecialPlane {
    Subspace plane;
    PlaneKind kind;
    std::optional<ProjPoint> witness_point; // tangency point for tangent planes
    std::optional<std::vector<elem>> witness_line; // dual coords of the line for conic planes
};

// plane spanned by v2 of the points of the line {p : a.p = 0} of PG(2,.)
inline SpecialPlane conic_plane(const FieldTower& T, int lvl, const std::vector<elem>& a) {
    std::vector<SymPoint> pts;
    for_each_pg_point(T, lvl, 2, [&](const std::vector<elem>& p) {
        elem s = 0;
        for (int i = 0; i < 3; ++i) s = T.add(lvl, s, T.mul(lvl, a[std::size_t(i)], p[std::size_t(i)]));
        if (s == 0) pts.push_back(v2(T, lvl, p));
    });
    Mat M(int(pts.size()), 6);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (int j = 0; j < 6; ++j) M.at(int(i), j) = pts[i][std::size_t(j)];
    SpecialPlane sp{make_subspace(T, lvl, 5, std::move(M)), PlaneKind::Conic, std::nullopt, a};
    return sp;
}

// tangent plane at v2(P): symmetric matrices A with v_i A v_j^T = 0 for two
// independent vectors v_1, v_2 vanishing on P (the two lines cutting out P)
inline SpecialPlane tangent_plane(const FieldTower& T, int lvl, const ProjPoint& P) {
    // v with v.P = 0: left kernel of the 3x1 column P
    Mat C(3, 3); // pad P^T into a square to reuse det_rank_kernel
    for (int i = 0; i < 3; ++i) C.at(i, 0) = P.c[std::size_t(i)];
    auto k = det_rank_kernel(T, lvl, C);
    if (k.kernel.rows != 2) throw std::logic_error("tangent_plane: bad annihilator");
    auto v1 = k.kernel.row(0), v2v = k.kernel.row(1);
    auto form_row = [&](const std::vector<elem>& v, const std::vector<elem>& w) {
        // v A w^T as a linear form in (t0..t5)
        std::vector<elem> f(6, 0);
        f[0] = T.mul(lvl, v[0], w[0]);
        f[1] = T.mul(lvl, v[1], w[1]);
        f[2] = T.mul(lvl, v[2], w[2]);
        f[3] = T.add(lvl, T.mul(lvl, v[0], w[1]), T.mul(lvl, v[1], w[0]));
        f[4] = T.add(lvl, T.mul(lvl, v[0], w[2]), T.mul(lvl, v[2], w[0]));
        f[5] = T.add(lvl, T.mul(lvl, v[1], w[2]), T.mul(lvl, v[2], w[1]));
        return f;
    };
    Mat F(3, 6);
    auto r0 = form_row(v1, v1), r1 = form_row(v1, v2v), r2 = form_row(v2v, v2v);
    for (int j = 0; j < 6; ++j) { F.at(0, j) = r0[std::size_t(j)]; F.at(1, j) = r1[std::size_t(j)]; F.at(2, j) = r2[std::size_t(j)]; }
    // solution space {t : F t^T = 0}: left kernel of F^T
    Mat Ft(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 3; ++j) Ft.at(i, j) = F.at(j, i);
    auto sol = det_rank_kernel(T, lvl, Ft);
    if (sol.kernel.rows != 3) throw std::logic_error("tangent_plane: expected a plane of solutions");
    return {make_subspace(T, lvl, 5, sol.kernel), PlaneKind::Tangent, P, std::nullopt};
}

// nucleus plane {t0 = t1 = t2 = 0}; characteristic 2 only
inline SpecialPlane nucleus_plane(const FieldTower& T, int lvl) {
    if (T.p() != 2)
        throw std::invalid_argument("nucleus_plane: defined only in characteristic 2");
    Mat M(3, 6);
    M.at(0, 3) = M.at(1, 4) = M.at(2, 5) = 1;
    return {make_subspace(T, lvl, 5, std::move(M)), PlaneKind::Nucleus, std::nullopt, std::nullopt};
}

struct ContainedPlaneClass {
    PlaneKind kind;
    std::optional<ProjPoint> point;            // tangency point
    std::optional<std::vector<elem>> line;     // dual coords of the conic's line
};

// classify a plane known to lie inside the secant variety; throws if the
// precondition fails or the plane matches none of the three kinds
inline ContainedPlaneClass classify_contained_plane(const FieldTower& T, const Subspace& pi) {
    int lvl = pi.lvl;
    std::uint32_t q = T.size(lvl);
    if (!secant_contains(T, pi))
        throw std::invalid_argument("classify_contained_plane: plane not inside V1");
    std::vector<ProjPoint> von_v; // points of pi on the Veronese surface
    for_each_pg_point(T, lvl, 2, [&](const std::vector<elem>& u) {
        auto amb = param_to_ambient(T, pi, u);
        SymPoint t{amb[0], amb[1], amb[2], amb[3], amb[4], amb[5]};
        if (secant_value(T, lvl, t) == 0 && sym_rank(T, lvl, t) == 1)
            von_v.push_back(v2_preimage(T, lvl, t));
    });
    if (T.p() == 2) {
        auto nuc = nucleus_plane(T, lvl);
        if (pi == nuc.plane) return {PlaneKind::Nucleus, std::nullopt, std::nullopt};
    }
    if (von_v.size() == std::size_t(q) + 1) {
        // preimages must be collinear; their common line is the witness
        Mat M(int(von_v.size()), 3);
        for (std::size_t i = 0; i < von_v.size(); ++i)
            for (int j = 0; j < 3; ++j) M.at(int(i), j) = von_v[i].c[std::size_t(j)];
        Mat R = M;
        auto [rk, piv] = rref(T, lvl, R);
        (void)piv;
        if (rk == 2) {
            // dual coords: kernel of the 2x3 RREF on the right
            Mat sq(3, 3);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 3; ++j) sq.at(j, i) = R.at(i, j); // transpose into columns
            auto kk = det_rank_kernel(T, lvl, sq);
            if (kk.kernel.rows == 1)
                return {PlaneKind::Conic, std::nullopt, kk.kernel.row(0)};
        }
    }
    if (von_v.size() == 1) return {PlaneKind::Tangent, von_v[0], std::nullopt};
    throw std::logic_error("classify_contained_plane: unclassifiable contained plane");
}

enum class ProfileTag {
    ContainedConic,
    ContainedTangent,
    ContainedNucleus,
    HasRationalPoints,
    ThreeConjugateLines,
    Other
};

inline const char* to_string(ProfileTag t) {
    switch (t) {
        case ProfileTag::ContainedConic: return "contained-conic";
        case ProfileTag::ContainedTangent: return "contained-tangent";
        case ProfileTag::ContainedNucleus: return "contained-nucleus";
        case ProfileTag::HasRationalPoints: return "has-rational-points";
        case ProfileTag::ThreeConjugateLines: return "three-conjugate-lines";
        case ProfileTag::Other: return "other";
    }
    return "?";
}

struct IntersectionProfile {
    ProfileTag tag = ProfileTag::Other;
    long rational_points = 0;              // |pi ∩ V1| over the base field
    std::vector<std::vector<elem>> base_lines; // dual parameter coords of full base-field lines
    std::vector<std::vector<elem>> ext_lines;  // same over the cubic extension
    std::vector<ProjPoint> singular_points;    // parameter coords, over the extension
    std::vector<ProjPoint> conjugate_triple;   // ambient Veronese preimages R, R^s, R^s2 (PG(2,ext))
};

// Incidence tables of PG(2, s): for each canonical dual point (line), the list
// of indices of canonical points on it.  Used to test full-line containment
// from a membership bitmap.
struct PlaneIncidence {
    std::vector<std::vector<elem>> points; // canonical points of PG(2, s)
    std::vector<std::vector<elem>> lines;  // canonical dual coords
    std::vector<std::vector<std::uint32_t>> on_line; // per line: indices into points
};

inline PlaneIncidence plane_incidence(const FieldTower& T, int lvl) {
    PlaneIncidence inc;
    for_each_pg_point(T, lvl, 2, [&](const std::vector<elem>& p) { inc.points.push_back(p); });
    inc.lines = inc.points; // self-dual parameter space
    inc.on_line.resize(inc.lines.size());
    for (std::size_t li = 0; li < inc.lines.size(); ++li) {
        const auto& a = inc.lines[li];
        for (std::size_t pi = 0; pi < inc.points.size(); ++pi) {
            const auto& p = inc.points[pi];
            elem s = 0;
            for (int i = 0; i < 3; ++i) s = T.add(lvl, s, T.mul(lvl, a[std::size_t(i)], p[std::size_t(i)]));
            if (s == 0) inc.on_line[li].push_back(std::uint32_t(pi));
        }
    }
    return inc;
}

// the q+1 parameter points of the line with dual coords a, canonical order
inline std::vector<std::vector<elem>> line_points(const FieldTower& T, int lvl,
                                                  const std::vector<elem>& a) {
    Mat C(3, 3);
    for (int i = 0; i < 3; ++i) C.at(i, 0) = a[std::size_t(i)];
    auto k = det_rank_kernel(T, lvl, C);
    if (k.kernel.rows != 2) throw std::invalid_argument("line_points: not a line");
    auto p0 = k.kernel.row(0), p1 = k.kernel.row(1);
    std::vector<std::vector<elem>> pts;
    pts.push_back(normalize_point(T, lvl, p0).c);
    for (elem lam = 0; lam < T.size(lvl); ++lam) {
        std::vector<elem> v(3);
        for (int i = 0; i < 3; ++i)
            v[std::size_t(i)] = T.add(lvl, T.mul(lvl, lam, p0[std::size_t(i)]), p1[std::size_t(i)]);
        pts.push_back(normalize_point(T, lvl, v).c);
    }
    return pts;
}

// Full intersection profile of a plane with the secant variety, over the base
// field and a cubic extension (chain level ext_lvl, degree 3 over pi.lvl).
// ext_inc may be null; extension lines are then walked point by point, which
// keeps large extensions within memory budget.
inline IntersectionProfile plane_profile(const FieldTower& T, const Subspace& pi, int ext_lvl,
                                         const PlaneIncidence& base_inc,
                                         const PlaneIncidence* ext_inc_ptr) {
    if (pi.basis.rows != 3) throw std::invalid_argument("plane_profile: not a plane");
    int lvl = pi.lvl;
    std::uint32_t q = T.size(lvl);
    if (T.level(ext_lvl).cum_degree != 3 * T.level(lvl).cum_degree)
        throw std::invalid_argument("plane_profile: extension is not cubic");
    IntersectionProfile prof;

    auto eval_at = [&](int at_lvl, const std::vector<elem>& u) {
        std::vector<elem> amb(6, 0);
        for (int i = 0; i < 3; ++i) {
            if (u[std::size_t(i)] == 0) continue;
            for (int j = 0; j < 6; ++j)
                amb[std::size_t(j)] = T.add(at_lvl, amb[std::size_t(j)],
                                            T.mul(at_lvl, u[std::size_t(i)], pi.basis.at(i, j)));
        }
        return amb;
    };

    // base-field rational points and membership bitmap
    std::vector<char> base_member(base_inc.points.size(), 0);
    for (std::size_t i = 0; i < base_inc.points.size(); ++i) {
        auto amb = eval_at(lvl, base_inc.points[i]);
        SymPoint t{amb[0], amb[1], amb[2], amb[3], amb[4], amb[5]};
        bool m = secant_value(T, lvl, t) == 0;
        base_member[i] = m ? 1 : 0;
        if (m) ++prof.rational_points;
    }
    bool all_in = secant_contains(T, pi);
    for (std::size_t li = 0; li < base_inc.lines.size(); ++li) {
        bool full = true;
        for (auto pidx : base_inc.on_line[li])
            if (!base_member[pidx]) { full = false; break; }
        if (full) prof.base_lines.push_back(base_inc.lines[li]);
    }

    if (all_in) {
        auto cls = classify_contained_plane(T, pi);
        switch (cls.kind) {
            case PlaneKind::Conic: prof.tag = ProfileTag::ContainedConic; break;
            case PlaneKind::Tangent: prof.tag = ProfileTag::ContainedTangent; break;
            case PlaneKind::Nucleus: prof.tag = ProfileTag::ContainedNucleus; break;
        }
        return prof;
    }

    auto member_at = [&](const std::vector<elem>& u) {
        auto amb = eval_at(ext_lvl, u);
        SymPoint t{amb[0], amb[1], amb[2], amb[3], amb[4], amb[5]};
        return secant_value(T, ext_lvl, t) == 0;
    };
    auto singular_at = [&](const std::vector<elem>& u) {
        auto amb = eval_at(ext_lvl, u);
        SymPoint t{amb[0], amb[1], amb[2], amb[3], amb[4], amb[5]};
        if (secant_value(T, ext_lvl, t) != 0) return false;
        auto g = secant_gradient(T, ext_lvl, t);
        for (int r = 0; r < 3; ++r) {
            elem d = 0;
            for (int j = 0; j < 6; ++j)
                d = T.add(ext_lvl, d, T.mul(ext_lvl, pi.basis.at(r, j), g[std::size_t(j)]));
            if (d != 0) return false;
        }
        return true;
    };

    // extension-field lines of the intersection
    if (ext_inc_ptr) {
        const PlaneIncidence& ext_inc = *ext_inc_ptr;
        std::vector<char> ext_member(ext_inc.points.size(), 0);
        for (std::size_t i = 0; i < ext_inc.points.size(); ++i)
            ext_member[i] = member_at(ext_inc.points[i]) ? 1 : 0;
        for (std::size_t li = 0; li < ext_inc.lines.size(); ++li) {
            bool full = true;
            for (auto pidx : ext_inc.on_line[li])
                if (!ext_member[pidx]) { full = false; break; }
            if (full) prof.ext_lines.push_back(ext_inc.lines[li]);
        }
        for (std::size_t i = 0; i < ext_inc.points.size(); ++i)
            if (ext_member[i] && singular_at(ext_inc.points[i]))
                prof.singular_points.push_back(normalize_point(T, ext_lvl, ext_inc.points[i]));
    } else {
        for_each_pg_point(T, ext_lvl, 2, [&](const std::vector<elem>& a) {
            bool full = true;
            for (auto& u : line_points(T, ext_lvl, a))
                if (!member_at(u)) { full = false; break; }
            if (full) prof.ext_lines.push_back(a);
        });
        for_each_pg_point(T, ext_lvl, 2, [&](const std::vector<elem>& u) {
            if (singular_at(u))
                prof.singular_points.push_back(normalize_point(T, ext_lvl, u));
        });
    }

    if (prof.rational_points > 0) {
        prof.tag = ProfileTag::HasRationalPoints;
        return prof;
    }

    // disjoint plane: verify the three-conjugate-lines structure.  The plane is
    // defined over the base field, so the extension Frobenius acts on parameter
    // coordinates coordinatewise.
    if (prof.ext_lines.size() == 3) {
        auto conj_param = [&](const std::vector<elem>& u) {
            std::vector<elem> v = u;
            for (auto& x : v) x = T.frobenius(ext_lvl, x, q, 1);
            return normalize_point(T, ext_lvl, std::move(v)).c;
        };
        std::vector<std::vector<elem>> canon;
        for (auto& l : prof.ext_lines) canon.push_back(normalize_point(T, ext_lvl, l).c);
        bool perm = true;
        for (auto& l : canon) {
            auto lc = conj_param(l);
            if (std::find(canon.begin(), canon.end(), lc) == canon.end()) perm = false;
        }
        // pairwise meets: cross products of the dual vectors
        auto cross = [&](const std::vector<elem>& a, const std::vector<elem>& b) {
            std::vector<elem> c(3);
            c[0] = T.sub(ext_lvl, T.mul(ext_lvl, a[1], b[2]), T.mul(ext_lvl, a[2], b[1]));
            c[1] = T.sub(ext_lvl, T.mul(ext_lvl, a[2], b[0]), T.mul(ext_lvl, a[0], b[2]));
            c[2] = T.sub(ext_lvl, T.mul(ext_lvl, a[0], b[1]), T.mul(ext_lvl, a[1], b[0]));
            return c;
        };
        bool meets_ok = true;
        std::vector<ProjPoint> triple;
        int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (auto& pr : pairs) {
            auto u = cross(canon[std::size_t(pr[0])], canon[std::size_t(pr[1])]);
            if (u[0] == 0 && u[1] == 0 && u[2] == 0) { meets_ok = false; break; }
            auto amb = eval_at(ext_lvl, u);
            SymPoint t{amb[0], amb[1], amb[2], amb[3], amb[4], amb[5]};
            if (!on_veronese(T, ext_lvl, t)) { meets_ok = false; break; }
            // base-rational iff fixed by the Frobenius over the base field
            auto up = normalize_point(T, ext_lvl, u);
            if (conjugate(T, up, q, 1) == up) { meets_ok = false; break; }
            triple.push_back(v2_preimage(T, ext_lvl, t));
        }
        if (perm && meets_ok) {
            prof.tag = ProfileTag::ThreeConjugateLines;
            prof.conjugate_triple = std::move(triple);
            return prof;
        }
    }
    prof.tag = ProfileTag::Other;
    return prof;
}

// 6x6 matrix of the lifted action of M in PGL(3): with P -> P M on points of
// PG(2), the symmetric-matrix view transforms as A -> M^T A M; rows of the
// result act on t-vectors from the right (t -> t L).
inline Mat lift_collineation(const FieldTower& T, int lvl, const Mat& M) {
    if (det_rank_kernel(T, lvl, M).det == 0)
        throw std::invalid_argument("lift_collineation: singular matrix");
    Mat L(6, 6);
    Mat Mt = mat_transpose(M);
    for (int k = 0; k < 6; ++k) {
        SymPoint e{};
        e[std::size_t(k)] = 1;
        Mat A = sym_matrix_view(e);
        Mat B = mat_mul(T, lvl, mat_mul(T, lvl, Mt, A), M);
        SymPoint b = sym_from_matrix(B);
        for (int j = 0; j < 6; ++j) L.at(k, j) = b[std::size_t(j)];
    }
    return L;
}

inline SymPoint apply_lift(const FieldTower& T, int lvl, const Mat& L, const SymPoint& t) {
    SymPoint r{};
    for (int i = 0; i < 6; ++i) {
        if (t[std::size_t(i)] == 0) continue;
        for (int j = 0; j < 6; ++j)
            r[std::size_t(j)] = T.add(lvl, r[std::size_t(j)],
                                      T.mul(lvl, t[std::size_t(i)], L.at(i, j)));
    }
    return r;
}

inline Subspace apply_lift(const FieldTower& T, const Mat& L, const Subspace& S) {
    Mat M(S.basis.rows, 6);
    for (int i = 0; i < S.basis.rows; ++i) {
        SymPoint t{S.basis.at(i, 0), S.basis.at(i, 1), S.basis.at(i, 2),
                   S.basis.at(i, 3), S.basis.at(i, 4), S.basis.at(i, 5)};
        SymPoint r = apply_lift(T, S.lvl, L, t);
        for (int j = 0; j < 6; ++j) M.at(i, j) = r[std::size_t(j)];
    }
    return make_subspace(T, S.lvl, S.ambient, std::move(M));
}

} // namespace vsec
