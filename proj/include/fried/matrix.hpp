#pragma once

#include "fried/rational.hpp"

#include <vector>

namespace fried {

// Dense matrix over the Gaussian rationals. Everything downstream is exact;
// sizes stay small (<= ~100), so plain O(n^3) elimination is fine.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<GQ> a; // row-major

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    GQ &operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const GQ &operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = GQ(1);
        return m;
    }
    static Mat zero(int r, int c) { return Mat(r, c); }

    bool is_zero() const {
        for (const auto &x : a)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_square() const { return rows == cols; }

    Mat dagger() const { // conjugate transpose
        Mat m(cols, rows);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(c, r) = (*this)(r, c).conj();
        return m;
    }
    Mat transpose() const {
        Mat m(cols, rows);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(c, r) = (*this)(r, c);
        return m;
    }
    GQ trace() const {
        GQ t;
        for (int i = 0; i < rows && i < cols; ++i) t += (*this)(i, i);
        return t;
    }

    friend Mat operator+(const Mat &x, const Mat &y) {
        Mat m(x.rows, x.cols);
        for (size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
        return m;
    }
    friend Mat operator-(const Mat &x, const Mat &y) {
        Mat m(x.rows, x.cols);
        for (size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] - y.a[i];
        return m;
    }
    friend Mat operator*(const GQ &s, const Mat &x) {
        Mat m(x.rows, x.cols);
        for (size_t i = 0; i < x.a.size(); ++i) m.a[i] = s * x.a[i];
        return m;
    }
    friend Mat operator*(const Mat &x, const Mat &y) {
        Mat m(x.rows, y.cols);
        for (int r = 0; r < x.rows; ++r)
            for (int k = 0; k < x.cols; ++k) {
                const GQ &v = x(r, k);
                if (v.is_zero()) continue;
                for (int c = 0; c < y.cols; ++c) {
                    const GQ &w = y(k, c);
                    if (!w.is_zero()) m(r, c) += v * w;
                }
            }
        return m;
    }
    friend bool operator==(const Mat &x, const Mat &y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    double max_abs() const {
        double m = 0;
        for (const auto &x : a) m = std::max(m, std::abs(x.to_complex()));
        return m;
    }
};

inline Mat commutator(const Mat &x, const Mat &y) { return x * y - y * x; }

inline Mat kron(const Mat &x, const Mat &y) {
    Mat m(x.rows * y.rows, x.cols * y.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int c = 0; c < x.cols; ++c) {
            if (x(r, c).is_zero()) continue;
            for (int s = 0; s < y.rows; ++s)
                for (int d = 0; d < y.cols; ++d)
                    m(r * y.rows + s, c * y.cols + d) = x(r, c) * y(s, d);
        }
    return m;
}

// Row reduction in place; returns pivot columns.
std::vector<int> rref(Mat &m);

int rank(Mat m);

// Columns span the kernel of m.
Mat nullspace(const Mat &m);

// Solve a * x = b exactly (throws std::domain_error if inconsistent).
Mat solve(const Mat &a, const Mat &b);

Mat inverse(const Mat &m);

GQ determinant(Mat m);

// Horizontal concatenation of column blocks.
Mat hcat(const Mat &x, const Mat &y);

// Exact eigenspace: basis of ker(m - lambda).
Mat eigenspace(const Mat &m, const GQ &lambda);

// Full exact eigendecomposition for a matrix known to be diagonalizable with
// eigenvalues among `candidates`; returns (eigenvalue, eigenbasis-columns)
// pairs covering the whole space, or throws std::runtime_error.
std::vector<std::pair<GQ, Mat>> eigenspaces(const Mat &m, const std::vector<GQ> &candidates,
                                            const char *what);

// Exact positive-definiteness test for a Hermitian matrix (leading principal
// minors; throws std::domain_error if the matrix is not Hermitian).
bool hermitian_positive_definite(const Mat &m);

// Candidate eigenvalues from a float solve, rationalized: values q or q*i with
// bounded denominator. Verified by the caller via eigenspaces().
std::vector<GQ> float_eigen_candidates(const Mat &m, long max_den = 64);

// Numerical kernel dimension via SVD with threshold rel_tol * (largest
// singular value); the float-mode cross-check of exact nullspace dims.
int float_kernel_dim(const Mat &m, double rel_tol = 1e-9);

} // namespace fried
