#include "slc/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slc {

SymMatrix::SymMatrix(int dim) : n_(dim), a_(dim, Vec(dim, 0.0)) {
    if (dim < 1) throw std::invalid_argument("SymMatrix: dim must be >= 1");
}

SymMatrix::SymMatrix(const Mat& entries) : n_((int)entries.size()), a_(entries) {
    if (n_ < 1) throw std::invalid_argument("SymMatrix: dim must be >= 1");
    for (int i = 0; i < n_; ++i) {
        if ((int)entries[i].size() != n_) throw std::invalid_argument("SymMatrix: not square");
        for (int j = 0; j < n_; ++j)
            if (!std::isfinite(entries[i][j]))
                throw std::invalid_argument("SymMatrix: non-finite entry");
    }
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < i; ++j) {
            double s = 0.5 * (a_[i][j] + a_[j][i]);
            a_[i][j] = a_[j][i] = s;
        }
}

SymMatrix SymMatrix::diag(const Vec& d) {
    SymMatrix A((int)d.size());
    for (int i = 0; i < A.n_; ++i) A.a_[i][i] = d[i];
    return A;
}

SymMatrix SymMatrix::ident(int dim) {
    return diag(Vec(dim, 1.0));
}

SymMatrix SymMatrix::scaled(double s) const {
    SymMatrix R(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) R.a_[i][j] = s * a_[i][j];
    return R;
}

EigenDecomposition jacobi_eigen(const Mat& A0) {
    int n = (int)A0.size();
    Mat A = A0;
    Mat V = identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A[p][q] * A[p][q];
        if (off < 1e-60) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(A[p][q]) < 1e-300) continue;
                double theta = (A[q][q] - A[p][p]) / (2.0 * A[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = A[k][p], akq = A[k][q];
                    A[k][p] = c * akp - s * akq;
                    A[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A[p][k], aqk = A[q][k];
                    A[p][k] = c * apk - s * aqk;
                    A[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V[k][p], vkq = V[k][q];
                    V[k][p] = c * vkp - s * vkq;
                    V[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    EigenDecomposition r;
    r.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) r.eigenvalues[i] = A[i][i];
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return r.eigenvalues[a] < r.eigenvalues[b]; });
    Vec w(n);
    Mat Vs(n, Vec(n));
    for (int j = 0; j < n; ++j) {
        w[j] = r.eigenvalues[idx[j]];
        for (int i = 0; i < n; ++i) Vs[i][j] = V[i][idx[j]];
    }
    r.eigenvalues = std::move(w);
    r.vectors = std::move(Vs);
    return r;
}

Vec elementary_symmetric(const Vec& lambda) {
    int n = (int)lambda.size();
    Vec e(n + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k >= 1; --k) e[k] += lambda[i] * e[k - 1];
    return e;
}

Spectrum eigen_sym(const SymMatrix& A) {
    Spectrum s;
    s.eigenvalues = jacobi_eigen(A.entries()).eigenvalues;
    s.chi = elementary_symmetric(s.eigenvalues);
    return s;
}

std::pair<double, double> complex_det(const SymMatrix& A, double r) {
    if (!(r > 0.0)) throw std::domain_error("complex_det: r must be positive");
    Spectrum s = eigen_sym(A);
    double log_mod = 0.0, angle = 0.0;
    for (double l : s.eigenvalues) {
        log_mod += 0.5 * std::log1p(r * r * l * l);
        angle += std::atan(r * l);
    }
    return {std::exp(log_mod), angle};
}

}  // namespace slc
