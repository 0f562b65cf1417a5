#pragma once

// Dense small-matrix linear algebra over a tower level: RREF, determinant,
// rank, left kernel.  Row-vector convention throughout: points are row
// vectors, a matrix acts on the right (x -> x M).

#include "vsec/field_tower.hpp"

#include <utility>

namespace vsec {

struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<elem> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * std::size_t(c), 0) {}

    elem& at(int i, int j) { return a[std::size_t(i) * std::size_t(cols) + std::size_t(j)]; }
    elem at(int i, int j) const { return a[std::size_t(i) * std::size_t(cols) + std::size_t(j)]; }

    std::vector<elem> row(int i) const {
        return {a.begin() + std::ptrdiff_t(i) * cols, a.begin() + std::ptrdiff_t(i + 1) * cols};
    }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator<(const Mat& o) const {
        if (rows != o.rows) return rows < o.rows;
        if (cols != o.cols) return cols < o.cols;
        return a < o.a;
    }
};

inline Mat mat_mul(const FieldTower& T, int lvl, const Mat& A, const Mat& B) {
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            elem v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = T.add(lvl, C.at(i, j), T.mul(lvl, v, B.at(k, j)));
        }
    return C;
}

inline Mat mat_transpose(const Mat& A) {
    Mat B(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) B.at(j, i) = A.at(i, j);
    return B;
}

inline std::vector<elem> vec_mat(const FieldTower& T, int lvl, const std::vector<elem>& x,
                                 const Mat& A) {
    std::vector<elem> y(std::size_t(A.cols), 0);
    for (int i = 0; i < A.rows; ++i) {
        if (x[std::size_t(i)] == 0) continue;
        for (int j = 0; j < A.cols; ++j)
            y[std::size_t(j)] = T.add(lvl, y[std::size_t(j)], T.mul(lvl, x[std::size_t(i)], A.at(i, j)));
    }
    return y;
}

// In-place reduced row echelon form; returns (rank, pivot columns).
inline std::pair<int, std::vector<int>> rref(const FieldTower& T, int lvl, Mat& M) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int piv = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(piv, j), M.at(r, j));
        elem ip = T.inv(lvl, M.at(r, c));
        for (int j = 0; j < M.cols; ++j) M.at(r, j) = T.mul(lvl, M.at(r, j), ip);
        for (int i = 0; i < M.rows; ++i) {
            if (i == r) continue;
            elem f = M.at(i, c);
            if (f == 0) continue;
            for (int j = 0; j < M.cols; ++j)
                M.at(i, j) = T.sub(lvl, M.at(i, j), T.mul(lvl, f, M.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {r, pivots};
}

struct DetRankKernel {
    elem det = 0;
    int rank = 0;
    Mat kernel; // rows span the left null space {x : x M = 0}
};

inline DetRankKernel det_rank_kernel(const FieldTower& T, int lvl, const Mat& M) {
    if (M.rows != M.cols) throw std::invalid_argument("det_rank_kernel: non-square matrix");
    int n = M.rows;
    // eliminate [M | I] by rows; a zero row in the left block is a row dependency,
    // i.e. a left-kernel vector x with x M = 0
    Mat W(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) W.at(i, j) = M.at(i, j);
        W.at(i, n + i) = 1;
    }
    // track determinant through forward elimination on a copy
    elem det = 1;
    {
        Mat A = M;
        for (int c = 0; c < n; ++c) {
            int piv = -1;
            for (int i = c; i < n; ++i)
                if (A.at(i, c) != 0) { piv = i; break; }
            if (piv < 0) { det = 0; break; }
            if (piv != c) {
                for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(c, j));
                det = T.neg(lvl, det);
            }
            det = T.mul(lvl, det, A.at(c, c));
            elem ip = T.inv(lvl, A.at(c, c));
            for (int i = c + 1; i < n; ++i) {
                elem f = T.mul(lvl, A.at(i, c), ip);
                if (f == 0) continue;
                for (int j = c; j < n; ++j)
                    A.at(i, j) = T.sub(lvl, A.at(i, j), T.mul(lvl, f, A.at(c, j)));
            }
        }
    }
    // row-reduce W on the first n columns only
    int rank = 0;
    for (int c = 0; c < n && rank < n; ++c) {
        int piv = -1;
        for (int i = rank; i < n; ++i)
            if (W.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < 2 * n; ++j) std::swap(W.at(piv, j), W.at(rank, j));
        elem ip = T.inv(lvl, W.at(rank, c));
        for (int j = 0; j < 2 * n; ++j) W.at(rank, j) = T.mul(lvl, W.at(rank, j), ip);
        for (int i = 0; i < n; ++i) {
            if (i == rank) continue;
            elem f = W.at(i, c);
            if (f == 0) continue;
            for (int j = 0; j < 2 * n; ++j)
                W.at(i, j) = T.sub(lvl, W.at(i, j), T.mul(lvl, f, W.at(rank, j)));
        }
        ++rank;
    }
    DetRankKernel out;
    out.det = det;
    out.rank = rank;
    out.kernel = Mat(n - rank, n);
    for (int i = rank; i < n; ++i)
        for (int j = 0; j < n; ++j) out.kernel.at(i - rank, j) = W.at(i, n + j);
    {
        auto [kr, kp] = rref(T, lvl, out.kernel);
        (void)kr;
        (void)kp;
    }
    return out;
}

// determinant by cofactor expansion; independent cross-check for n <= 4
inline elem det_cofactor(const FieldTower& T, int lvl, const Mat& M) {
    int n = M.rows;
    if (n == 1) return M.at(0, 0);
    elem acc = 0;
    for (int j = 0; j < n; ++j) {
        if (M.at(0, j) == 0) continue;
        Mat sub(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = M.at(i, c);
            }
        }
        elem term = T.mul(lvl, M.at(0, j), det_cofactor(T, lvl, sub));
        acc = (j % 2 == 0) ? T.add(lvl, acc, term) : T.sub(lvl, acc, term);
    }
    return acc;
}

} // namespace vsec
