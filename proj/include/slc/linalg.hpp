#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "slc/jets.hpp"

namespace slc {

using Vec = std::vector<double>;
using Mat = std::vector<std::vector<double>>;

template <class S> using VecT = std::vector<S>;
template <class S> using MatT = std::vector<std::vector<S>>;

template <class S>
MatT<S> mat_zero(int r, int c) { return MatT<S>(r, VecT<S>(c, S(0.0))); }

inline Mat identity(int n) {
    Mat I(n, Vec(n, 0.0));
    for (int i = 0; i < n; ++i) I[i][i] = 1.0;
    return I;
}

template <class S>
S dot(const VecT<S>& a, const VecT<S>& b) {
    S s(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Bilinear form x^T G y.
template <class S>
S dot_g(const MatT<S>& G, const VecT<S>& x, const VecT<S>& y) {
    S s(0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * G[i][j] * y[j];
    return s;
}

template <class S>
VecT<S> vadd(const VecT<S>& a, const VecT<S>& b) {
    VecT<S> r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

template <class S>
VecT<S> vsub(const VecT<S>& a, const VecT<S>& b) {
    VecT<S> r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

template <class S, class T>
VecT<S> vscale(const T& s, const VecT<S>& a) {
    VecT<S> r(a);
    for (auto& x : r) x = x * s;
    return r;
}

template <class S>
VecT<S> axpy(const S& s, const VecT<S>& x, const VecT<S>& y) {
    VecT<S> r(y);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * x[i];
    return r;
}

template <class S>
MatT<S> matmul(const MatT<S>& A, const MatT<S>& B) {
    int r = (int)A.size(), k = (int)B.size(), c = (int)B[0].size();
    MatT<S> R = mat_zero<S>(r, c);
    for (int i = 0; i < r; ++i)
        for (int l = 0; l < k; ++l)
            for (int j = 0; j < c; ++j) R[i][j] += A[i][l] * B[l][j];
    return R;
}

template <class S>
VecT<S> matvec(const MatT<S>& A, const VecT<S>& x) {
    VecT<S> r(A.size(), S(0.0));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) r[i] += A[i][j] * x[j];
    return r;
}

template <class S>
MatT<S> transpose(const MatT<S>& A) {
    int r = (int)A.size(), c = (int)A[0].size();
    MatT<S> R = mat_zero<S>(c, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) R[j][i] = A[i][j];
    return R;
}

inline double max_abs(const Mat& A) {
    double m = 0.0;
    for (auto& row : A)
        for (double x : row) m = std::max(m, std::abs(x));
    return m;
}

/// Gaussian elimination with partial pivoting; solves A x = b in place.
/// Works for jets (pivot comparison uses value parts).
template <class S>
VecT<S> solve(MatT<S> A, VecT<S> b) {
    int n = (int)A.size();
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(value_of(A[r][col])) > std::abs(value_of(A[piv][col]))) piv = r;
        if (std::abs(value_of(A[piv][col])) < 1e-300)
            throw std::runtime_error("solve: singular matrix");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < n; ++r) {
            S f = A[r][col] / A[col][col];
            for (int j = col; j < n; ++j) A[r][j] -= f * A[col][j];
            b[r] -= f * b[col];
        }
    }
    VecT<S> x(n, S(0.0));
    for (int i = n - 1; i >= 0; --i) {
        S s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

template <class S>
MatT<S> inverse(const MatT<S>& A) {
    int n = (int)A.size();
    MatT<S> R = mat_zero<S>(n, n);
    for (int j = 0; j < n; ++j) {
        VecT<S> e(n, S(0.0));
        e[j] = S(1.0);
        VecT<S> col = solve(A, e);
        for (int i = 0; i < n; ++i) R[i][j] = col[i];
    }
    return R;
}

/// Determinant by LU with partial pivoting.
template <class S>
S lu_det(MatT<S> A) {
    int n = (int)A.size();
    S det(1.0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(value_of(A[r][col])) > std::abs(value_of(A[piv][col]))) piv = r;
        if (std::abs(value_of(A[piv][col])) == 0.0) return S(0.0);
        if (piv != col) {
            std::swap(A[piv], A[col]);
            det = -det;
        }
        det *= A[col][col];
        for (int r = col + 1; r < n; ++r) {
            S f = A[r][col] / A[col][col];
            for (int j = col; j < n; ++j) A[r][j] -= f * A[col][j];
        }
    }
    return det;
}

inline std::complex<double> complex_lu_det(std::vector<std::vector<std::complex<double>>> A) {
    int n = (int)A.size();
    std::complex<double> det(1.0, 0.0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) == 0.0) return {0.0, 0.0};
        if (piv != col) {
            std::swap(A[piv], A[col]);
            det = -det;
        }
        det *= A[col][col];
        for (int r = col + 1; r < n; ++r) {
            std::complex<double> f = A[r][col] / A[col][col];
            for (int j = col; j < n; ++j) A[r][j] -= f * A[col][j];
        }
    }
    return det;
}

inline double trace(const Mat& A) {
    double t = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i) t += A[i][i];
    return t;
}

inline double trace_prod(const Mat& A, const Mat& B) {
    double t = 0.0;
    int n = (int)A.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t += A[i][j] * B[j][i];
    return t;
}

}  // namespace slc
