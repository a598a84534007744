#ifndef ALGINT_LINALG_HPP
#define ALGINT_LINALG_HPP

#include <optional>
#include <vector>

#include "algint/errors.hpp"

namespace algint {

// Dense matrix over a field, exact arithmetic, deterministic first-nonzero
// pivoting (there is no magnitude to prefer).
template <class F>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<F> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, F(0)) {}

    F& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const F& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols != y.rows) throw DegenerateInput("matrix product shape mismatch");
        Mat r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                if (x.at(i, k) == F(0)) continue;
                for (int j = 0; j < y.cols; ++j)
                    r.at(i, j) = r.at(i, j) + x.at(i, k) * y.at(k, j);
            }
        return r;
    }
};

// In-place reduced row echelon form.  Returns pivot column indices.  When
// transform is non-null it must be identity-sized rows x rows on entry and
// accumulates the row operations: transform * original = result.
template <class F>
std::vector<int> rref(Mat<F>& m, Mat<F>* transform = nullptr) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int p = -1;
        for (int i = row; i < m.rows; ++i)
            if (!(m.at(i, col) == F(0))) { p = i; break; }
        if (p < 0) continue;
        if (p != row) {
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
            if (transform)
                for (int j = 0; j < transform->cols; ++j) std::swap(transform->at(p, j), transform->at(row, j));
        }
        F inv = F(1) / m.at(row, col);
        for (int j = 0; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv;
        if (transform)
            for (int j = 0; j < transform->cols; ++j) transform->at(row, j) = transform->at(row, j) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == F(0)) continue;
            F f = m.at(i, col);
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(row, j);
            if (transform)
                for (int j = 0; j < transform->cols; ++j)
                    transform->at(i, j) = transform->at(i, j) - f * transform->at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
int rank(Mat<F> m) {
    return static_cast<int>(rref(m).size());
}

struct NoSolution {};

// Solve A x = b.  On success returns the particular solution with all free
// variables set to zero (canonical; depends only on A's pivot structure).
// On failure witness (if requested) receives w with w^T A = 0, w^T b != 0.
template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& A, const std::vector<F>& b,
                                    std::vector<F>* witness = nullptr) {
    if (static_cast<int>(b.size()) != A.rows) throw DegenerateInput("solve: shape mismatch");
    Mat<F> aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    Mat<F> T = Mat<F>::identity(A.rows);
    std::vector<int> piv = rref(aug, &T);
    if (!piv.empty() && piv.back() == A.cols) {
        // Inconsistent: last pivot row is (0 ... 0 | 1); its transform row is
        // the left-null witness.
        if (witness) {
            int r = static_cast<int>(piv.size()) - 1;
            witness->assign(A.rows, F(0));
            for (int j = 0; j < A.rows; ++j) (*witness)[j] = T.at(r, j);
        }
        return std::nullopt;
    }
    std::vector<F> x(A.cols, F(0));
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(static_cast<int>(r), A.cols);
    return x;
}

// Basis of the right nullspace of A (vectors x with A x = 0).
template <class F>
std::vector<std::vector<F>> nullspace(Mat<F> A) {
    std::vector<int> piv = rref(A);
    std::vector<bool> is_piv(A.cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<F>> basis;
    for (int free = 0; free < A.cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<F> v(A.cols, F(0));
        v[free] = F(1);
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F(0) - A.at(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace algint

#endif
