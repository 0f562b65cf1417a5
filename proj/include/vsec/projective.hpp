#pragma once

// Projective geometry PG(n, q) over a tower level: canonical points, canonical
// RREF subspaces, deterministic subspace enumeration with random access
// (pivot-pattern chunks for parallel consumers), span/meet, Frobenius
// conjugation.

#include "vsec/linalg.hpp"

#include <algorithm>
#include <cstdint>

namespace vsec {

struct ProjPoint {
    int lvl = 0;
    std::vector<elem> c; // canonical: first nonzero coordinate is 1

    bool operator==(const ProjPoint& o) const { return lvl == o.lvl && c == o.c; }
    bool operator<(const ProjPoint& o) const { return c < o.c; }
};

inline ProjPoint normalize_point(const FieldTower& T, int lvl, std::vector<elem> v) {
    std::size_t nz = v.size();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) { nz = i; break; }
    if (nz == v.size()) throw std::invalid_argument("normalize_point: zero vector");
    elem ip = T.inv(lvl, v[nz]);
    for (std::size_t i = nz; i < v.size(); ++i) v[i] = T.mul(lvl, v[i], ip);
    return {lvl, std::move(v)};
}

// number of points of PG(n, q)
inline std::uint64_t pg_num_points(int n, std::uint64_t q) {
    std::uint64_t s = 0, t = 1;
    for (int i = 0; i <= n; ++i) { s += t; t *= q; }
    return s;
}

// canonical points of PG(n, q) in a fixed deterministic order: grouped by the
// position of the leading 1, remaining coordinates counting up in base q
template <typename F>
inline void for_each_pg_point(const FieldTower& T, int lvl, int n, F&& fn) {
    std::uint32_t q = T.size(lvl);
    std::vector<elem> v(std::size_t(n) + 1, 0);
    for (int lead = 0; lead <= n; ++lead) {
        std::fill(v.begin(), v.end(), 0);
        v[std::size_t(lead)] = 1;
        int tail = n - lead;
        std::uint64_t count = 1;
        for (int i = 0; i < tail; ++i) count *= q;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::uint64_t c = code;
            for (int i = 0; i < tail; ++i) {
                v[std::size_t(lead + 1 + i)] = elem(c % q);
                c /= q;
            }
            fn(v);
        }
    }
}

struct Subspace {
    int lvl = 0;
    int ambient = 0; // projective ambient dimension n, coordinates have n+1 entries
    Mat basis;       // RREF, rows independent; (k+1) x (n+1) for projective dim k

    int proj_dim() const { return basis.rows - 1; } // -1 convention for empty
    bool operator==(const Subspace& o) const {
        return lvl == o.lvl && ambient == o.ambient && basis == o.basis;
    }
    bool operator<(const Subspace& o) const { return basis < o.basis; }
};

inline Subspace make_subspace(const FieldTower& T, int lvl, int ambient, Mat rows) {
    auto [rk, piv] = rref(T, lvl, rows);
    (void)piv;
    Mat b(rk, rows.cols);
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < rows.cols; ++j) b.at(i, j) = rows.at(i, j);
    return {lvl, ambient, std::move(b)};
}

inline bool subspace_contains(const FieldTower& T, const Subspace& S, const std::vector<elem>& pt) {
    Mat M(S.basis.rows + 1, S.basis.cols);
    for (int i = 0; i < S.basis.rows; ++i)
        for (int j = 0; j < S.basis.cols; ++j) M.at(i, j) = S.basis.at(i, j);
    for (int j = 0; j < S.basis.cols; ++j) M.at(S.basis.rows, j) = pt[std::size_t(j)];
    auto [rk, piv] = rref(T, S.lvl, M);
    (void)piv;
    return rk == S.basis.rows;
}

inline Subspace span(const FieldTower& T, const Subspace& A, const Subspace& B) {
    if (A.ambient != B.ambient || A.lvl != B.lvl)
        throw std::invalid_argument("span: ambient mismatch");
    Mat M(A.basis.rows + B.basis.rows, A.basis.cols);
    for (int i = 0; i < A.basis.rows; ++i)
        for (int j = 0; j < A.basis.cols; ++j) M.at(i, j) = A.basis.at(i, j);
    for (int i = 0; i < B.basis.rows; ++i)
        for (int j = 0; j < B.basis.cols; ++j) M.at(A.basis.rows + i, j) = B.basis.at(i, j);
    return make_subspace(T, A.lvl, A.ambient, std::move(M));
}

inline Subspace meet(const FieldTower& T, const Subspace& A, const Subspace& B) {
    if (A.ambient != B.ambient || A.lvl != B.lvl)
        throw std::invalid_argument("meet: ambient mismatch");
    int a = A.basis.rows, b = B.basis.rows, n = A.basis.cols;
    // x = alpha A = -beta B  <=>  (alpha, beta) in left kernel of [A; B]
    Mat St(a + b, n);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < n; ++j) St.at(i, j) = A.basis.at(i, j);
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < n; ++j) St.at(a + i, j) = B.basis.at(i, j);
    // left kernel via [St | I]
    int m = a + b;
    Mat W(m, n + m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) W.at(i, j) = St.at(i, j);
        W.at(i, n + i) = 1;
    }
    int rank = 0;
    for (int c = 0; c < n && rank < m; ++c) {
        int piv = -1;
        for (int i = rank; i < m; ++i)
            if (W.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < n + m; ++j) std::swap(W.at(piv, j), W.at(rank, j));
        elem ip = T.inv(A.lvl, W.at(rank, c));
        for (int j = 0; j < n + m; ++j) W.at(rank, j) = T.mul(A.lvl, W.at(rank, j), ip);
        for (int i = 0; i < m; ++i) {
            if (i == rank) continue;
            elem f = W.at(i, c);
            if (f == 0) continue;
            for (int j = 0; j < n + m; ++j)
                W.at(i, j) = T.sub(A.lvl, W.at(i, j), T.mul(A.lvl, f, W.at(rank, j)));
        }
        ++rank;
    }
    int kdim = m - rank;
    Mat meet_rows(kdim, n);
    for (int i = 0; i < kdim; ++i) {
        // alpha = first a entries of the kernel vector; meet vector = alpha * A
        std::vector<elem> alpha(std::size_t(a), 0);
        for (int j = 0; j < a; ++j) alpha[std::size_t(j)] = W.at(rank + i, n + j);
        auto x = vec_mat(T, A.lvl, alpha, A.basis);
        for (int j = 0; j < n; ++j) meet_rows.at(i, j) = x[std::size_t(j)];
    }
    return make_subspace(T, A.lvl, A.ambient, std::move(meet_rows));
}

inline ProjPoint conjugate(const FieldTower& T, const ProjPoint& P, std::uint32_t s, int i = 1) {
    std::vector<elem> v = P.c;
    for (auto& x : v) x = T.frobenius(P.lvl, x, s, i);
    return normalize_point(T, P.lvl, std::move(v));
}

inline Subspace conjugate(const FieldTower& T, const Subspace& S, std::uint32_t s, int i = 1) {
    Mat M = S.basis;
    for (auto& x : M.a) x = T.frobenius(S.lvl, x, s, i);
    return make_subspace(T, S.lvl, S.ambient, std::move(M));
}

inline std::uint64_t gaussian_binomial(int n, int k, std::uint64_t q) {
    if (k < 0 || k > n) return 0;
    // q-Pascal recurrence G(n,k) = G(n-1,k-1) + q^k G(n-1,k)
    std::vector<std::uint64_t> row(std::size_t(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j) {
            std::uint64_t qk = 1;
            for (int t = 0; t < j; ++t) qk *= q;
            row[std::size_t(j)] = row[std::size_t(j - 1)] + qk * row[std::size_t(j)];
        }
    }
    return row[std::size_t(k)];
}

// Deterministic enumeration of the k-dimensional projective subspaces of PG(n, q)
// as canonical RREF matrices.  Subspaces are indexed globally; the index splits
// into (pivot pattern, offset), which is also the parallel-partitioning cursor.
class SubspaceEnum {
public:
    SubspaceEnum(const FieldTower& T, int lvl, int n, int k)
        : T_(&T), lvl_(lvl), n_(n), k_(k), q_(T.size(lvl)) {
        int rows = k + 1, cols = n + 1;
        // pivot patterns: increasing column subsets of size rows, lexicographic
        std::vector<int> pat(std::size_t(rows), 0);
        for (int i = 0; i < rows; ++i) pat[std::size_t(i)] = i;
        while (true) {
            patterns_.push_back(pat);
            std::uint64_t free_cells = 0;
            for (int i = 0; i < rows; ++i) {
                for (int j = pat[std::size_t(i)] + 1; j < cols; ++j) {
                    bool is_pivot = std::find(pat.begin(), pat.end(), j) != pat.end();
                    if (!is_pivot) ++free_cells;
                }
            }
            std::uint64_t cnt = 1;
            for (std::uint64_t i = 0; i < free_cells; ++i) cnt *= q_;
            pattern_counts_.push_back(cnt);
            offsets_.push_back(total_);
            total_ += cnt;
            // next combination
            int i = rows - 1;
            while (i >= 0 && pat[std::size_t(i)] == cols - rows + i) --i;
            if (i < 0) break;
            ++pat[std::size_t(i)];
            for (int j = i + 1; j < rows; ++j) pat[std::size_t(j)] = pat[std::size_t(j - 1)] + 1;
        }
    }

    std::uint64_t total() const { return total_; }

    Subspace get(std::uint64_t idx) const {
        if (idx >= total_) throw std::out_of_range("SubspaceEnum: index out of range");
        std::size_t pi = 0;
        while (pi + 1 < offsets_.size() && offsets_[pi + 1] <= idx) ++pi;
        std::uint64_t off = idx - offsets_[pi];
        const auto& pat = patterns_[pi];
        int rows = k_ + 1, cols = n_ + 1;
        Mat M(rows, cols);
        for (int i = 0; i < rows; ++i) M.at(i, pat[std::size_t(i)]) = 1;
        // fill free cells row-major from the base-q digits of off
        for (int i = 0; i < rows; ++i) {
            for (int j = pat[std::size_t(i)] + 1; j < cols; ++j) {
                bool is_pivot = std::find(pat.begin(), pat.end(), j) != pat.end();
                if (is_pivot) continue;
                M.at(i, j) = elem(off % q_);
                off /= q_;
            }
        }
        return {lvl_, n_, std::move(M)};
    }

private:
    const FieldTower* T_;
    int lvl_, n_, k_;
    std::uint64_t q_;
    std::vector<std::vector<int>> patterns_;
    std::vector<std::uint64_t> pattern_counts_;
    std::vector<std::uint64_t> offsets_;
    std::uint64_t total_ = 0;
};

// ambient coordinates of the parameter point u (over the subspace's row basis)
inline std::vector<elem> param_to_ambient(const FieldTower& T, const Subspace& S,
                                          const std::vector<elem>& u) {
    return vec_mat(T, S.lvl, u, S.basis);
}

} // namespace vsec
