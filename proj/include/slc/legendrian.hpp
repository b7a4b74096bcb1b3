#pragma once

#include <complex>

#include "slc/hypersurface.hpp"

namespace slc {

struct SphereBundlePoint {
    Vec base;    // ambient point (model representation)
    Vec vector;  // ambient tangent with |v| = rho
    double rho = 1.0;
};

/// Tangent vector of the sphere bundle, split into its horizontal and
/// vertical parts (both ambient tangent vectors at the base point).
struct SplitVector {
    Vec horizontal;
    Vec vertical;
};

/// The lift of a hypersurface point into the rho-sphere bundle together
/// with everything the structure forms need: the frame E_1..E_n completing
/// the unit normal, the component matrices of the lifted tangent basis in
/// that frame, and derived data.
struct LiftFrame {
    SphereBundlePoint point;
    std::vector<SplitVector> tangent_basis;  // k-th: {t_k, rho * dN_k}
    std::vector<Vec> frame;                  // E_1..E_n (normal excluded)
    Mat H;             // H[i][k] = <t_k, E_i>
    Mat V;             // V[i][k] = rho <dN_k, E_i>
    Mat omega_gram;    // <vert_j, hor_k> - <hor_j, vert_k>
    Mat m_gram;        // (<hor_j, vert_k> + <vert_j, hor_k>)/2
    Mat lifted_gram;   // H^T H + V^T V
    Vec contact_pairing;             // <v, hor_k>, ambient pairing
    std::complex<double> omega_det;  // det(H + iV); e^{-i theta} applied on use
    SymMatrix shape{1};
    double rho = 1.0;
    int n = 0;
};

LiftFrame gauss_lift(const ImmersionPatch& patch, const Vec& u, double rho, double h = 1e-4);
LiftFrame gauss_lift_exact(const ImmersionPatch& patch, const Vec& u, double rho);
LiftFrame lift_from_fundamental(const ImmersionPatch& patch, const FundamentalData& fd, double rho);

struct LegendrianReport {
    double contact = 0.0;        // max |<v, hor_k>|
    double symplectic = 0.0;     // max |omega(e_j, e_k)|
    double positivity_min = 0.0; // smallest eigenvalue of the m-Gram
    double special_angle = 0.0;  // |Im(e^{-i theta} det(H+iV))| / |det(H+iV)|
};

/// Residuals of the Legendrian structure conditions at angle theta.
/// contact and symplectic vanish for every Gauss lift; positivity_min is
/// nonnegative exactly for convex hypersurfaces; special_angle vanishes
/// exactly when the lifted curvature angle matches theta mod pi.
LegendrianReport legendrian_report(const LiftFrame& frame, double theta);

struct LiftedMetricCheck {
    double residual = 0.0;  // max |Gram(lift) - g((I + rho^2 A^2) . , .)|
    Mat dual_metric;        // inverse of the lifted Gram matrix
};

LiftedMetricCheck lifted_metric_check(const ImmersionPatch& patch, const Vec& u, double rho,
                                      bool exact = true, double h = 1e-4);

/// det(I + rho^2 A^2)^{-tau}; requires 0 < tau <= 1/(2n). Strictly
/// decreasing in each |eigenvalue| and in rho; equals 1 only for rho A = 0.
double f_tau(const SymMatrix& A, double rho, double tau);

/// Dimension of the intersection of the lifted tangent plane with the
/// vertical distribution at numerical tolerance: the number of singular
/// values of the horizontal component matrix (orthonormalized in the
/// lifted metric) below tol.
int verticality_order(const LiftFrame& frame, double tol = 1e-6);

/// Singular values of the orthonormalized horizontal component matrix,
/// ascending; the smallest one measures how close the lift is to vertical.
Vec horizontal_singular_values(const LiftFrame& frame);

/// The normal rho-sphere bundle over a geodesic in hyperbolic space
/// (c = -1), evaluated at axis parameter z and fiber angles: the exact
/// vertical limit object. Its frame has horizontal rank 1.
LiftFrame normal_sphere_bundle_frame(int n, double rho, double z, const Vec& angles);

}  // namespace slc
