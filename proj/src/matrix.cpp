#include "fried/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <set>

namespace fried {

std::vector<int> rref(Mat &m) {
    std::vector<int> pivots;
    int lead = 0;
    for (int r = 0; r < m.rows && lead < m.cols; ++r) {
        int piv = -1;
        while (lead < m.cols) {
            for (int i = r; i < m.rows; ++i)
                if (!m(i, lead).is_zero()) { piv = i; break; }
            if (piv >= 0) break;
            ++lead;
        }
        if (piv < 0) break;
        if (piv != r)
            for (int c = 0; c < m.cols; ++c) std::swap(m(r, c), m(piv, c));
        GQ inv = GQ(1) / m(r, lead);
        for (int c = lead; c < m.cols; ++c) m(r, c) = inv * m(r, c);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m(i, lead).is_zero()) continue;
            GQ f = m(i, lead);
            for (int c = lead; c < m.cols; ++c) m(i, c) -= f * m(r, c);
        }
        pivots.push_back(lead);
        ++lead;
    }
    return pivots;
}

int rank(Mat m) { return static_cast<int>(rref(m).size()); }

Mat nullspace(const Mat &m) {
    Mat r = m;
    std::vector<int> pivots = rref(r);
    std::set<int> pivset(pivots.begin(), pivots.end());
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!pivset.count(c)) free_cols.push_back(c);
    Mat ns(m.cols, static_cast<int>(free_cols.size()));
    for (size_t j = 0; j < free_cols.size(); ++j) {
        int fc = free_cols[j];
        ns(fc, static_cast<int>(j)) = GQ(1);
        for (size_t i = 0; i < pivots.size(); ++i) ns(pivots[i], static_cast<int>(j)) = -r(static_cast<int>(i), fc);
    }
    return ns;
}

Mat solve(const Mat &a, const Mat &b) {
    Mat aug = hcat(a, b);
    std::vector<int> pivots = rref(aug);
    for (int p : pivots)
        if (p >= a.cols) throw std::domain_error("solve: inconsistent system");
    Mat x(a.cols, b.cols);
    for (size_t i = 0; i < pivots.size(); ++i)
        for (int c = 0; c < b.cols; ++c) x(pivots[i], c) = aug(static_cast<int>(i), a.cols + c);
    // verify (free variables set to 0 must still satisfy the system)
    Mat resid = a * x - b;
    if (!resid.is_zero()) throw std::domain_error("solve: inconsistent system");
    return x;
}

Mat inverse(const Mat &m) {
    if (!m.is_square()) throw std::domain_error("inverse: not square");
    return solve(m, Mat::identity(m.rows));
}

GQ determinant(Mat m) {
    if (!m.is_square()) throw std::domain_error("determinant: not square");
    GQ det(1);
    for (int r = 0; r < m.rows; ++r) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (!m(i, r).is_zero()) { piv = i; break; }
        if (piv < 0) return GQ(0);
        if (piv != r) {
            for (int c = 0; c < m.cols; ++c) std::swap(m(r, c), m(piv, c));
            det = -det;
        }
        det *= m(r, r);
        GQ inv = GQ(1) / m(r, r);
        for (int i = r + 1; i < m.rows; ++i) {
            if (m(i, r).is_zero()) continue;
            GQ f = inv * m(i, r);
            for (int c = r; c < m.cols; ++c) m(i, c) -= f * m(r, c);
        }
    }
    return det;
}

Mat hcat(const Mat &x, const Mat &y) {
    Mat m(x.rows, x.cols + y.cols);
    for (int r = 0; r < x.rows; ++r) {
        for (int c = 0; c < x.cols; ++c) m(r, c) = x(r, c);
        for (int c = 0; c < y.cols; ++c) m(r, x.cols + c) = y(r, c);
    }
    return m;
}

Mat eigenspace(const Mat &m, const GQ &lambda) {
    Mat shifted = m;
    for (int i = 0; i < m.rows; ++i) shifted(i, i) -= lambda;
    return nullspace(shifted);
}

std::vector<std::pair<GQ, Mat>> eigenspaces(const Mat &m, const std::vector<GQ> &candidates,
                                            const char *what) {
    std::vector<GQ> uniq;
    for (const auto &c : candidates)
        if (std::find(uniq.begin(), uniq.end(), c) == uniq.end()) uniq.push_back(c);
    std::vector<std::pair<GQ, Mat>> out;
    int total = 0;
    for (const auto &lam : uniq) {
        Mat es = eigenspace(m, lam);
        if (es.cols > 0) {
            total += es.cols;
            out.emplace_back(lam, es);
        }
        if (total == m.rows) break;
    }
    if (total != m.rows)
        throw std::runtime_error(std::string(what) +
                                 ": not diagonalizable over the candidate eigenvalue set");
    return out;
}

bool hermitian_positive_definite(const Mat &m) {
    if (!(m == m.dagger())) throw std::domain_error("hermitian_positive_definite: not Hermitian");
    for (int k = 1; k <= m.rows; ++k) {
        Mat sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = m(i, j);
        GQ d = determinant(sub);
        if (!d.is_real() || d.re <= 0) return false;
    }
    return true;
}

int float_kernel_dim(const Mat &m, double rel_tol) {
    if (m.rows == 0 || m.cols == 0) return m.cols;
    Eigen::MatrixXcd em(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) em(r, c) = m(r, c).to_complex();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(em);
    const auto &sv = svd.singularValues();
    double cut = rel_tol * sv(0);
    int dim = m.cols - static_cast<int>(sv.size());
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= cut) ++dim;
    return dim;
}

std::vector<GQ> float_eigen_candidates(const Mat &m, long max_den) {
    Eigen::MatrixXcd em(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) em(r, c) = m(r, c).to_complex();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(em, false);
    std::vector<GQ> out;
    for (int i = 0; i < em.rows(); ++i) {
        std::complex<double> ev = es.eigenvalues()(i);
        out.emplace_back(rationalize(ev.real(), max_den), rationalize(ev.imag(), max_den));
    }
    return out;
}

} // namespace fried
