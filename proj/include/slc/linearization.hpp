#pragma once

#include "slc/hypersurface.hpp"

namespace slc {

/// Normal deformation data: a scalar field on the chart (double and jet
/// versions of the same expression) pushed off along the exact normal
/// field of the base patch.
struct DeformationField {
    ImmersionPatch patch;
    std::function<double(const Vec&)> f_d;
    std::function<Jet2(const VecT<Jet2>&)> f_j;
};

template <class F>
DeformationField make_deformation(ImmersionPatch patch, F f) {
    DeformationField d;
    d.patch = std::move(patch);
    d.f_d = [f](const Vec& u) { return f(u); };
    d.f_j = [f](const VecT<Jet2>& u) { return f(u); };
    return d;
}

/// The pushed-off immersion u -> Exp_{i(u)}(t f(u) N(u)), built with the
/// unperturbed space-form exponential and the base patch's exact normal
/// field. The deformed patch keeps the original model (including any
/// metric perturbation) for curvature evaluation and carries full jets.
ImmersionPatch deform_patch(const DeformationField& field, double t);

struct LinearizedSample {
    double L_value = 0.0;   // variation of Im(e^{-i theta} det(I + i rho A))
    SymMatrix W_matrix{1};  // curvature endomorphism in the orthonormal frame
    double J_value = 0.0;   // zeroth-order coefficient tr(M^-1 rho W) - tr(M^-1 rho A^2)
    double sl = 0.0;        // angle at the evaluation point
    double sqrt_det = 0.0;  // sqrt(det(I + rho^2 A^2))
};

/// The variation operator evaluated from the closed formula
///   sqrt(det(I + rho^2 A^2)) rho [ -tr(M^-1 Hess f) + f tr(M^-1 W) - f tr(M^-1 A^2) ],
/// with M = I + rho^2 A^2, W(u) = R(N, u)N, and Hess the covariant Hessian
/// of f in the induced metric. All traces are frame-invariant (1,1)
/// contractions assembled in chart coordinates.
LinearizedSample linearized_L(const DeformationField& field, const Vec& u, double rho, double theta);

/// Central finite difference of t -> Im(e^{-i theta} det(I + i rho A_{f,t}))
/// through actual patch deformations; agrees with linearized_L to O(t^2).
double fd_variation(const DeformationField& field, const Vec& u, double rho, double theta,
                    double t_step);

/// Entrywise residual of the shape-operator variation identity
/// dA/dt = f W - Hess f - f A^2 (chart-coordinate matrices, central
/// differences at +-t_step).
double shape_variation_residual(const DeformationField& field, const Vec& u, double t_step);

struct JScanResult {
    double min_J = 0.0;
    Vec argmin_eigs;
    int samples = 0;
};

/// Minimum of J = tr(M^-1 rho W) - tr(M^-1 rho A^2) over random positive
/// definite shape operators rescaled to sl_value(A, rho) = theta, in a
/// space form of curvature -kappa (so W = kappa I). Expected nonnegative
/// whenever theta <= n atan(sqrt(kappa) rho).
JScanResult j_positivity_scan(double kappa, double rho, double theta, int n, int samples,
                              unsigned long long seed);

struct ContinuationParams {
    int n = 2;
    double R = 0.5;
    double rho = 1.0;
    double eps_max = 0.01;
    int path_steps = 5;
    int grid = 201;
    double t_lo = 0.7;
    double t_hi = 4.9;
    double bump_width = 3.0;
    double newton_tol = 1e-10;  // drive well past the 1e-8 reporting level
    int max_newton = 10;
    bool round_trip = true;
};

struct ContinuationStep {
    double eps = 0.0;
    int newton_iters = 0;
    double residual = 0.0;  // discrete sup norm of the angle residual
    double f_norm = 0.0;    // sup norm of the normal field
    bool converged = false;
};

struct ContinuationResult {
    std::vector<ContinuationStep> steps;
    Vec grid_t;
    Vec final_f;
    double round_trip_f_norm = 0.0;
    bool ok = false;
};

/// Metric continuation: conformal bump of amplitude eps on hyperbolic
/// space, rotationally symmetric about the axis through the start
/// equidistant's center, so the unknown normal field depends on one Fermi
/// coordinate. Newton iteration on the one-dimensional collocation system
/// with the discretized variation operator as the Jacobian.
ContinuationResult newton_continuation(const ContinuationParams& params);

/// The start family of the continuation: the equidistant at distance R in
/// rotational Fermi coordinates (t, fiber angles) about a center point of
/// the base hyperplane; graph-chart output so it composes with perturbed
/// models.
ImmersionPatch equidistant_rotational_patch(const Model& model, int n, double R, double t_lo,
                                            double t_hi);

}  // namespace slc
