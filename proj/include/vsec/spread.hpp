#pragma once

// Spread sets of n x n matrices over a tower level: the field (Desarguesian)
// spread set through a trace self-dual basis, validation flags (spread /
// semifield / symplectic / Kerdock-shaped), the induced cover of PG(2n-1, q)
// with the affine translation-plane axioms on small cases, the map from a
// symmetric 3x3 spread set over F_{q^2} to a linear-set spec, and presemifield
// multiplication with brute-force nuclei and center.

#include "vsec/linear_set.hpp"

#include <functional>
#include <set>

namespace vsec {

struct SpreadSet {
    int lvl = 0; // chain level of the matrix entries
    int n = 0;
    std::vector<Mat> mats;
};

// lexicographically least basis of the level-ext field over the level-sub field
// whose Gram matrix under (x, y) -> Tr(xy) is the identity
inline std::vector<elem> trace_self_dual_basis(const FieldTower& T, int ext, int sub) {
    int n = T.level(ext).cum_degree / T.level(sub).cum_degree;
    std::uint32_t s = T.size(sub), N = T.size(ext);
    std::vector<elem> b;
    std::function<bool(int)> extend = [&](int k) -> bool {
        if (k == n) return true;
        for (elem c = 1; c < N; ++c) {
            if (T.trace(ext, T.mul(ext, c, c), s) != 1) continue;
            bool ok = true;
            for (int i = 0; i < k; ++i)
                if (T.trace(ext, T.mul(ext, b[std::size_t(i)], c), s) != 0) { ok = false; break; }
            if (!ok) continue;
            b.push_back(c);
            if (extend(k + 1)) return true;
            b.pop_back();
        }
        return false;
    };
    if (!extend(0)) throw std::logic_error("trace_self_dual_basis: none exists");
    return b;
}

// the field spread set {M_e} with M_e[i][j] = Tr(b_i b_j e); symmetric by
// construction, and x M_e gives the coordinates of (sum x_i b_i) * e
inline SpreadSet desarguesian_spread_set(const FieldTower& T, int ext, int sub) {
    auto b = trace_self_dual_basis(T, ext, sub);
    int n = int(b.size());
    std::uint32_t s = T.size(sub), N = T.size(ext);
    SpreadSet C{sub, n, {}};
    C.mats.reserve(N);
    for (elem e = 0; e < N; ++e) {
        Mat M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                elem t = T.trace(ext, T.mul(ext, T.mul(ext, b[std::size_t(i)], b[std::size_t(j)]), e), s);
                if (t >= s) throw std::logic_error("desarguesian_spread_set: trace outside subfield");
                M.at(i, j) = t;
            }
        C.mats.push_back(std::move(M));
    }
    return C;
}

struct SpreadFlags {
    bool spread = false;     // zero present, all pairwise differences nonsingular
    bool full = false;       // exactly q^n matrices (a full spread set)
    bool semifield = false;  // spread, full, and additively closed
    bool symplectic = false; // all matrices symmetric
    bool kerdock = false;    // spread, even size, all skew-symmetric with zero diagonal
};

inline SpreadFlags validate_spread_set(const FieldTower& T, const SpreadSet& C) {
    SpreadFlags f;
    int lvl = C.lvl, n = C.n;
    std::uint64_t q = T.size(lvl), want = 1;
    for (int i = 0; i < n; ++i) want *= q;
    std::set<Mat> elems(C.mats.begin(), C.mats.end());
    bool has_zero = elems.count(Mat(n, n)) != 0;
    bool pairwise = elems.size() == C.mats.size();
    if (pairwise) {
        for (std::size_t i = 0; i < C.mats.size() && pairwise; ++i)
            for (std::size_t j = i + 1; j < C.mats.size(); ++j) {
                Mat D(n, n);
                for (int k = 0; k < n * n; ++k)
                    D.a[std::size_t(k)] = T.sub(lvl, C.mats[i].a[std::size_t(k)], C.mats[j].a[std::size_t(k)]);
                if (det_rank_kernel(T, lvl, D).det == 0) { pairwise = false; break; }
            }
    }
    f.spread = pairwise && has_zero;
    f.full = C.mats.size() == want;
    if (f.spread && f.full) {
        bool closed = true;
        for (std::size_t i = 0; i < C.mats.size() && closed; ++i)
            for (std::size_t j = i; j < C.mats.size(); ++j) {
                Mat S(n, n);
                for (int k = 0; k < n * n; ++k)
                    S.a[std::size_t(k)] = T.add(lvl, C.mats[i].a[std::size_t(k)], C.mats[j].a[std::size_t(k)]);
                if (!elems.count(S)) { closed = false; break; }
            }
        f.semifield = closed;
    }
    f.symplectic = true;
    for (auto& M : C.mats)
        if (!(mat_transpose(M) == M)) { f.symplectic = false; break; }
    f.kerdock = f.spread && n % 2 == 0;
    for (auto& M : C.mats) {
        if (!f.kerdock) break;
        Mat Mt = mat_transpose(M);
        for (int k = 0; k < n * n; ++k)
            if (Mt.a[std::size_t(k)] != T.neg(lvl, M.a[std::size_t(k)])) { f.kerdock = false; break; }
        for (int i = 0; i < n; ++i)
            if (M.at(i, i) != 0) { f.kerdock = false; break; }
    }
    return f;
}

// symmetric spread set <=> every S(A) totally isotropic for the alternating
// form b((x1,y1),(x2,y2)) = x1 y2^T - y1 x2^T; returns a witness pair index on
// failure (matrix index, row pair)
inline std::optional<std::tuple<std::size_t, int, int>>
symplectic_isotropy_witness(const FieldTower& T, const SpreadSet& C) {
    int lvl = C.lvl, n = C.n;
    for (std::size_t m = 0; m < C.mats.size(); ++m) {
        const Mat& A = C.mats[m];
        // S(A) basis rows are (e_i, row i of A); b of rows i,j reduces to
        // A[j][i] - A[i][j]
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (T.sub(lvl, A.at(j, i), A.at(i, j)) != 0) return {{m, i, j}};
    }
    return std::nullopt;
}

struct SpreadCover {
    bool partition = false;      // the q^n + 1 subspaces partition PG(2n-1, q)
    bool axioms_checked = false; // affine translation-plane axioms were run
    bool axioms_ok = false;
    std::uint64_t num_lines = 0;
    std::uint64_t parallel_classes = 0;
};

// the subspaces {(x, xA)} for A in C plus {(0, y)}, and the affine point-line
// incidence they induce on F_q^{2n} (checked exhaustively when small enough)
inline SpreadCover spread_cover(const FieldTower& T, const SpreadSet& C) {
    SpreadCover out;
    int lvl = C.lvl, n = C.n;
    std::uint32_t q = T.size(lvl);
    // partition: a point (x | y) with x != 0 must satisfy y = x A for exactly
    // one A; points with x = 0 lie only in the special member
    bool part = true;
    for_each_pg_point(T, lvl, 2 * n - 1, [&](const std::vector<elem>& pt) {
        if (!part) return;
        std::vector<elem> x(pt.begin(), pt.begin() + n), y(pt.begin() + n, pt.end());
        bool xz = std::all_of(x.begin(), x.end(), [](elem v) { return v == 0; });
        if (xz) return; // on the special member, off every graph
        int hits = 0;
        for (auto& A : C.mats)
            if (vec_mat(T, lvl, x, A) == y) ++hits;
        if (hits != 1) part = false;
    });
    out.partition = part;

    std::uint64_t npts = 1;
    for (int i = 0; i < 2 * n; ++i) npts *= q;
    if (npts > 256 || !part) return out;
    out.axioms_checked = true;

    // affine lines: cosets v + row-space of a spread member (the special
    // member's row space is {(0, y)})
    std::vector<Mat> members;
    for (auto& A : C.mats) {
        Mat M(n, 2 * n);
        for (int i = 0; i < n; ++i) {
            M.at(i, i) = 1;
            for (int j = 0; j < n; ++j) M.at(i, n + j) = A.at(i, j);
        }
        members.push_back(std::move(M));
    }
    {
        Mat M(n, 2 * n);
        for (int i = 0; i < n; ++i) M.at(i, n + i) = 1;
        members.push_back(std::move(M));
    }
    auto decode = [&](std::uint64_t code) {
        std::vector<elem> v(std::size_t(2 * n));
        for (int i = 0; i < 2 * n; ++i) { v[std::size_t(i)] = elem(code % q); code /= q; }
        return v;
    };
    auto in_rowspace = [&](const Mat& M, const std::vector<elem>& v) {
        Mat W(n + 1, 2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < 2 * n; ++j) W.at(i, j) = M.at(i, j);
        for (int j = 0; j < 2 * n; ++j) W.at(n, j) = v[std::size_t(j)];
        return rref(T, lvl, W).first == n;
    };
    // lines as (member index, canonical coset point): canonical = least code
    std::set<std::pair<std::size_t, std::uint64_t>> lines;
    auto encode = [&](const std::vector<elem>& v) {
        std::uint64_t code = 0, m = 1;
        for (int i = 0; i < 2 * n; ++i) { code += std::uint64_t(v[std::size_t(i)]) * m; m *= q; }
        return code;
    };
    for (std::uint64_t pc = 0; pc < npts; ++pc) {
        auto pv = decode(pc);
        for (std::size_t mi = 0; mi < members.size(); ++mi) {
            // canonical representative: least code among the coset
            std::uint64_t best = pc;
            for (std::uint64_t oc = 0; oc < npts; ++oc) {
                auto ov = decode(oc);
                std::vector<elem> d(std::size_t(2 * n));
                for (int i = 0; i < 2 * n; ++i) d[std::size_t(i)] = T.sub(lvl, ov[std::size_t(i)], pv[std::size_t(i)]);
                if (in_rowspace(members[mi], d)) best = std::min(best, oc);
            }
            lines.insert({mi, best});
        }
    }
    out.num_lines = lines.size();
    out.parallel_classes = members.size();
    std::uint64_t qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    bool ok = lines.size() == (qn + 1) * qn;
    // each parallel class has q^n lines
    for (std::size_t mi = 0; mi < members.size() && ok; ++mi) {
        std::uint64_t cnt = 0;
        for (auto& l : lines)
            if (l.first == mi) ++cnt;
        if (cnt != qn) ok = false;
    }
    // two distinct points lie on exactly one common line
    for (std::uint64_t a = 0; a < npts && ok; ++a)
        for (std::uint64_t b = a + 1; b < npts && ok; ++b) {
            auto va = decode(a), vb = decode(b);
            std::vector<elem> d(std::size_t(2 * n));
            for (int i = 0; i < 2 * n; ++i) d[std::size_t(i)] = T.sub(lvl, vb[std::size_t(i)], va[std::size_t(i)]);
            int cnt = 0;
            for (auto& M : members)
                if (in_rowspace(M, d)) ++cnt;
            if (cnt != 1) ok = false;
        }
    out.axioms_ok = ok;
    return out;
}

struct LinsetFromSpread {
    std::vector<ProjPoint> points; // image in PG(5, q^2), one per nonzero matrix class
    std::optional<LinearSetSpec> spec; // when the matrix space is a graph over (x, y, z)
};

// a symmetric 3x3 spread set over F_{q^2}, additively closed, defines an
// F_q-linear set of rank 6 in PG(5, q^2); recover the defining form matrix
// when the underlying F_q-space is a graph over the first three coordinates
inline LinsetFromSpread spread_to_linset(const FieldTower& T, const SpreadSet& C,
                                         const QuadraticParam& P) {
    if (C.n != 3) throw std::invalid_argument("spread_to_linset: 3x3 matrices required");
    if (C.lvl != P.q2_level) throw std::invalid_argument("spread_to_linset: level mismatch");
    int q2 = P.q2_level, ql = P.q_level;
    LinsetFromSpread out;
    std::set<ProjPoint> seen;
    std::vector<std::vector<elem>> wvecs; // 12 F_q-coordinates of each nonzero member
    for (auto& M : C.mats) {
        bool zero = std::all_of(M.a.begin(), M.a.end(), [](elem v) { return v == 0; });
        if (zero) continue;
        if (!(mat_transpose(M) == M))
            throw std::invalid_argument("spread_to_linset: matrix not symmetric");
        SymPoint t = sym_from_matrix(M);
        std::vector<elem> v(t.begin(), t.end());
        auto pt = normalize_point(T, q2, v);
        if (seen.insert(pt).second) out.points.push_back(pt);
        std::vector<elem> w;
        for (int i = 0; i < 6; ++i) {
            auto [a1, a2] = P.split(T, t[std::size_t(i)]);
            w.push_back(a1);
            w.push_back(a2);
        }
        wvecs.push_back(std::move(w));
    }
    std::sort(out.points.begin(), out.points.end());
    // greedy F_q-basis of the member space
    Mat B(0, 12);
    std::vector<std::vector<elem>> basis;
    for (auto& w : wvecs) {
        Mat trial(int(basis.size()) + 1, 12);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (int j = 0; j < 12; ++j) trial.at(int(i), j) = basis[i][std::size_t(j)];
        for (int j = 0; j < 12; ++j) trial.at(int(basis.size()), j) = w[std::size_t(j)];
        if (rref(T, ql, trial).first == int(basis.size()) + 1) basis.push_back(w);
        if (basis.size() == 6) break;
    }
    if (basis.size() != 6) return out; // not rank 6 over F_q
    // solve for members whose (x1,x2,y1,y2,z1,z2) block is each unit vector
    Mat A(6, 6); // first-six-coordinate block of the basis
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) A.at(i, j) = basis[std::size_t(i)][std::size_t(j)];
    auto k = det_rank_kernel(T, ql, A);
    if (k.det == 0) return out; // not a graph over (x, y, z)
    Mat forms(6, 6);
    Mat Ainv(6, 6);
    {
        Mat Aug(6, 12);
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) Aug.at(i, j) = A.at(i, j);
            Aug.at(i, 6 + i) = 1;
        }
        rref(T, ql, Aug);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) Ainv.at(i, j) = Aug.at(i, 6 + j);
    }
    for (int col = 0; col < 6; ++col) {
        // coefficients c with c A = e_col, i.e. row col of A^{-1}
        std::vector<elem> c = Ainv.row(col);
        // the member with first block e_col; its last six coordinates fill
        // column col of the form matrix
        for (int r = 0; r < 6; ++r) {
            elem s = 0;
            for (int i = 0; i < 6; ++i)
                s = T.add(ql, s, T.mul(ql, c[std::size_t(i)], basis[std::size_t(i)][std::size_t(6 + r)]));
            forms.at(r, col) = s;
        }
    }
    out.spec = LinearSetSpec{P, std::move(forms)};
    return out;
}

struct PresemifieldInfo {
    std::uint64_t order = 0;
    bool distributive = false;
    bool no_zero_divisors = false;
    bool commutative = false;
    bool has_identity = false;
    std::uint64_t left_nucleus = 0;
    std::uint64_t middle_nucleus = 0;
    std::uint64_t right_nucleus = 0;
    std::uint64_t center = 0;
};

// presemifield product x * y = x M(y), where M(y) is the unique member of the
// spread set whose first row is y (well defined: on a spread set the
// first-row map is a bijection onto F_q^n); nuclei and center by exhaustive
// quantifier checks over the multiplication table
inline PresemifieldInfo presemifield_ops(const FieldTower& T, const SpreadSet& C) {
    int lvl = C.lvl, n = C.n;
    std::uint32_t q = T.size(lvl);
    std::uint64_t order = 1;
    for (int i = 0; i < n; ++i) order *= q;
    if (order > 256) throw std::invalid_argument("presemifield_ops: order > 256 budget");
    if (C.mats.size() != order) throw std::invalid_argument("presemifield_ops: not a semifield spread set");
    auto decode = [&](std::uint64_t x) {
        std::vector<elem> v(std::size_t(n), 0);
        for (int i = 0; i < n; ++i) { v[std::size_t(i)] = elem(x % q); x /= q; }
        return v;
    };
    auto encode = [&](const std::vector<elem>& v) {
        std::uint64_t code = 0, m = 1;
        for (int i = 0; i < n; ++i) { code += std::uint64_t(v[std::size_t(i)]) * m; m *= q; }
        return code;
    };
    // first-row lookup
    std::vector<const Mat*> by_first_row(std::size_t(order), nullptr);
    for (auto& M : C.mats) {
        std::uint64_t code = encode(M.row(0));
        if (by_first_row[std::size_t(code)])
            throw std::invalid_argument("presemifield_ops: duplicate first row, not a spread set");
        by_first_row[std::size_t(code)] = &M;
    }
    std::vector<std::vector<std::uint64_t>> mul(order, std::vector<std::uint64_t>(order));
    for (std::uint64_t y = 0; y < order; ++y) {
        const Mat& M = *by_first_row[std::size_t(y)];
        for (std::uint64_t x = 0; x < order; ++x)
            mul[std::size_t(x)][std::size_t(y)] = encode(vec_mat(T, lvl, decode(x), M));
    }
    PresemifieldInfo info;
    info.order = order;
    // distributivity: left is automatic (x M linear in x); check right via the
    // additivity of y -> M(y) on the table
    info.distributive = true;
    auto add_idx = [&](std::uint64_t a, std::uint64_t b) {
        auto va = decode(a), vb = decode(b);
        std::vector<elem> s(std::size_t(n), 0);
        for (int i = 0; i < n; ++i) s[std::size_t(i)] = T.add(lvl, va[std::size_t(i)], vb[std::size_t(i)]);
        return encode(s);
    };
    for (std::uint64_t x = 0; x < order && info.distributive; ++x)
        for (std::uint64_t y = 0; y < order && info.distributive; ++y)
            for (std::uint64_t z = 0; z < order; ++z) {
                if (mul[std::size_t(add_idx(x, y))][std::size_t(z)] !=
                    add_idx(mul[std::size_t(x)][std::size_t(z)], mul[std::size_t(y)][std::size_t(z)])) {
                    info.distributive = false;
                    break;
                }
                if (mul[std::size_t(x)][std::size_t(add_idx(y, z))] !=
                    add_idx(mul[std::size_t(x)][std::size_t(y)], mul[std::size_t(x)][std::size_t(z)])) {
                    info.distributive = false;
                    break;
                }
            }
    info.no_zero_divisors = true;
    for (std::uint64_t x = 1; x < order && info.no_zero_divisors; ++x)
        for (std::uint64_t y = 1; y < order; ++y)
            if (mul[std::size_t(x)][std::size_t(y)] == 0) { info.no_zero_divisors = false; break; }
    info.commutative = true;
    for (std::uint64_t x = 0; x < order && info.commutative; ++x)
        for (std::uint64_t y = x + 1; y < order; ++y)
            if (mul[std::size_t(x)][std::size_t(y)] != mul[std::size_t(y)][std::size_t(x)]) {
                info.commutative = false;
                break;
            }
    for (std::uint64_t e = 1; e < order; ++e) {
        bool id = true;
        for (std::uint64_t x = 0; x < order; ++x)
            if (mul[std::size_t(e)][std::size_t(x)] != x || mul[std::size_t(x)][std::size_t(e)] != x) {
                id = false;
                break;
            }
        if (id) { info.has_identity = true; break; }
    }
    auto assoc_all = [&](auto&& pred) {
        std::uint64_t count = 0;
        for (std::uint64_t a = 0; a < order; ++a) {
            bool ok = true;
            for (std::uint64_t x = 0; x < order && ok; ++x)
                for (std::uint64_t y = 0; y < order; ++y)
                    if (!pred(a, x, y)) { ok = false; break; }
            if (ok) ++count;
        }
        return count;
    };
    info.left_nucleus = assoc_all([&](std::uint64_t a, std::uint64_t x, std::uint64_t y) {
        return mul[std::size_t(a)][std::size_t(mul[std::size_t(x)][std::size_t(y)])] ==
               mul[std::size_t(mul[std::size_t(a)][std::size_t(x)])][std::size_t(y)];
    });
    info.middle_nucleus = assoc_all([&](std::uint64_t a, std::uint64_t x, std::uint64_t y) {
        return mul[std::size_t(x)][std::size_t(mul[std::size_t(a)][std::size_t(y)])] ==
               mul[std::size_t(mul[std::size_t(x)][std::size_t(a)])][std::size_t(y)];
    });
    info.right_nucleus = assoc_all([&](std::uint64_t a, std::uint64_t x, std::uint64_t y) {
        return mul[std::size_t(x)][std::size_t(mul[std::size_t(y)][std::size_t(a)])] ==
               mul[std::size_t(mul[std::size_t(x)][std::size_t(y)])][std::size_t(a)];
    });
    // center: in every nucleus and commuting with everything
    std::uint64_t center = 0;
    for (std::uint64_t a = 0; a < order; ++a) {
        bool ok = true;
        for (std::uint64_t x = 0; x < order && ok; ++x) {
            if (mul[std::size_t(a)][std::size_t(x)] != mul[std::size_t(x)][std::size_t(a)]) ok = false;
            for (std::uint64_t y = 0; y < order && ok; ++y) {
                if (mul[std::size_t(a)][std::size_t(mul[std::size_t(x)][std::size_t(y)])] !=
                    mul[std::size_t(mul[std::size_t(a)][std::size_t(x)])][std::size_t(y)]) ok = false;
                if (mul[std::size_t(x)][std::size_t(mul[std::size_t(a)][std::size_t(y)])] !=
                    mul[std::size_t(mul[std::size_t(x)][std::size_t(a)])][std::size_t(y)]) ok = false;
                if (mul[std::size_t(x)][std::size_t(mul[std::size_t(y)][std::size_t(a)])] !=
                    mul[std::size_t(mul[std::size_t(x)][std::size_t(y)])][std::size_t(a)]) ok = false;
            }
        }
        if (ok) ++center;
    }
    info.center = center;
    return info;
}

} // namespace vsec
