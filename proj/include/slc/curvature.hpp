#pragma once

#include "slc/symmat.hpp"

namespace slc {

/// sum_i atan(r * lambda_i), the argument of det(I + i r A). Strictly
/// increasing in r, with limits 0 and n*pi/2 for positive definite A.
double sl_value(const SymMatrix& A, double r);
double sl_value(const Vec& eigenvalues, double r);

/// The unique r > 0 with sl_value(A, r) == theta. Requires A positive
/// definite and theta in (0, n*pi/2). Bracketing bisection followed by a
/// Newton polish; the angle residual is driven to ~1e-14.
double r_theta(const SymMatrix& A, double theta);
double r_theta(const Vec& eigenvalues, double theta);

/// sin(theta) * sum_k (-1)^k rho^{2k} chi_{2k}
///   - cos(theta) * sum_k (-1)^k rho^{2k+1} chi_{2k+1}.
/// Vanishes exactly when sl_value(A, rho) == theta mod pi; equals
/// -sqrt(det(I + rho^2 A^2)) * sin(sl - theta) in closed form.
double weingarten_residual(const SymMatrix& A, double rho, double theta);

/// The r > 0 at which sl_value(A, r) = (n-1)pi/2, obtained through an
/// independent algebraic route: the largest positive root of
///   P(r) = sum_j (-1)^j r^{n-2j} chi_{n-2j}(A) = 0.
/// Note: the frequently quoted form chi_n - r^2 chi_{n-2} + ... = 0 is not
/// consistent with the arctangent-sum definition (for A = I_3 it would give
/// r^2 = 1/3 instead of 3); the polynomial above is the one obtained from
/// Im(e^{-i(n-1)pi/2} det(I + i r A)) = 0. For n >= 4 the polynomial has
/// several positive roots (lower branches correspond to angles shifted by
/// multiples of pi); the largest is the (n-1)pi/2 crossing.
double special_angle_root(const SymMatrix& A);

struct GaussianIdentity {
    double k_check = 0.0;   // n == 2: R_{pi/2}^{-2} - det A
    double kh_check = 0.0;  // n == 3: R_{pi}^{-2} - det A / tr A  (H = trace)
};

/// Low-dimensional identities linking the special angle to Gaussian and
/// mean curvature. Mean curvature is the unnormalized trace.
GaussianIdentity gaussian_identities(const SymMatrix& A);

/// All real roots of sum_i coeff[i] x^i, ascending. Recursive derivative
/// isolation plus bisection; exact enough for the small degrees used here.
Vec poly_real_roots(const Vec& coeff);

}  // namespace slc
