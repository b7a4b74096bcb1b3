#pragma once

#include <utility>
#include <vector>

#include "slc/linalg.hpp"

namespace slc {

/// Dense symmetric matrix of small dimension. Entries are symmetrized at
/// construction so entries[i][j] == entries[j][i] holds exactly.
class SymMatrix {
public:
    explicit SymMatrix(int dim);
    explicit SymMatrix(const Mat& entries);  // symmetrizes, validates finiteness

    static SymMatrix diag(const Vec& d);
    static SymMatrix zero(int dim) { return SymMatrix(dim); }
    static SymMatrix ident(int dim);

    int dim() const { return n_; }
    double operator()(int i, int j) const { return a_[i][j]; }
    double& at(int i, int j) { return a_[i][j]; }  // keep symmetric by hand
    const Mat& entries() const { return a_; }

    SymMatrix scaled(double s) const;

private:
    int n_;
    Mat a_;
};

/// Eigenvalues in ascending order together with the coefficients chi of
/// det(I + tA) = sum_i chi[i] t^i (elementary symmetric functions of the
/// eigenvalues; chi[0] == 1).
struct Spectrum {
    Vec eigenvalues;  // ascending, size n
    Vec chi;          // size n+1
};

struct EigenDecomposition {
    Vec eigenvalues;  // ascending
    Mat vectors;      // columns are eigenvectors: A = V diag(w) V^T
};

/// Cyclic Jacobi diagonalization. Quadratically convergent and fully
/// dependency-free; intended for the small dimensions used here.
EigenDecomposition jacobi_eigen(const Mat& A);

Spectrum eigen_sym(const SymMatrix& A);

/// Elementary symmetric functions e_0..e_n of the given values.
Vec elementary_symmetric(const Vec& lambda);

/// det(I + i r A) in polar form. modulus = prod sqrt(1 + r^2 l_i^2),
/// angle = sum atan(r l_i), the continuous branch with angle(0) = 0,
/// valued in (-n pi/2, n pi/2).
std::pair<double, double> complex_det(const SymMatrix& A, double r);

}  // namespace slc
