#pragma once

#include "slc/hypersurface.hpp"

namespace slc {

/// Half-plane coordinate systems for rotation hypersurfaces. The profile
/// curve lives in a totally geodesic half-plane with metric
/// dr^2 + G(r)^2 dz^2 and orbit-radius (warping) function f:
///   - euclidean:              G = 1,      f = r
///   - hyperbolic_tube:        G = cosh r, f = sinh r          (axis = geodesic)
///   - hyperbolic_equidistant: G = cosh r, f = cosh r sinh z   (axis = hyperplane point)
enum class RevolutionSystem { euclidean, hyperbolic_tube, hyperbolic_equidistant };

struct ProfileState {
    double s = 0.0;    // arclength
    double r = 0.0;    // Fermi distance coordinate
    double z = 0.0;    // coordinate along the axis direction
    double phi = 0.0;  // inclination against the orthonormal frame (d_r, d_z/G)
};

struct CurvatureBlowup : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AxisSingularity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OdeParams {
    int n = 2;             // hypersurface dimension
    double rho = 1.0;
    double theta = 1.5;    // target angle in (0, n pi/2)
    RevolutionSystem system = RevolutionSystem::euclidean;
    double warp_min = 1e-6;      // guard on the orbit radius
    double blowup_margin = 1e-6; // stop when |delta| >= pi/2 - margin
    double tol = 1e-10;          // local error tolerance of the integrator
    double max_step = 0.02;      // sample density floor for reconstruction
};

/// Orbit principal curvature (n-1 directions) at the given profile point.
double kappa_parallel(const ProfileState& st, const OdeParams& p);

struct ProfileDerivative {
    double dr, dz, dphi;
    double kappa_mer, kappa_par;
    double delta;  // theta - (n-1) atan(rho kappa_par)
};

/// The constant-angle condition atan(rho k_mer) + (n-1) atan(rho k_par) =
/// theta solved pointwise for the meridian curvature; phi' converts the
/// curve curvature to the coordinate system (frame rotation term).
/// Throws CurvatureBlowup when |delta| leaves (-pi/2, pi/2) and
/// AxisSingularity when the orbit radius falls below the guard.
ProfileDerivative profile_rhs(const ProfileState& st, const OdeParams& p);

enum class StopReason { completed, axis_singularity, curvature_blowup };

struct ProfileRun {
    std::vector<ProfileState> samples;  // accepted steps, initial state first
    std::vector<double> kappa_mer, kappa_par;
    StopReason stop = StopReason::completed;
    double stop_s = 0.0;
};

/// Adaptive embedded Runge-Kutta integration with step rejection on the
/// local-error tolerance. Guard crossings terminate the run with a typed
/// stop reason; the stopping arclength is localized by bisection.
ProfileRun integrate_profile(const ProfileState& init, const OdeParams& p, double s_max);

/// Revolution chart (s, fiber angles) built from the sampled profile
/// alone: a quintic Hermite interpolant of (r, z) through the three
/// samples around center_idx, with tangent data (cos phi, sin phi / G)
/// taken from the stored states. The chart uses only the recorded profile
/// -- no equation is re-solved -- so corrupted samples are detectable.
/// Evaluable on doubles only; the reconstruction path differentiates the
/// chart by finite differences.
ImmersionPatch profile_sample_patch(const ProfileRun& run, std::size_t center_idx, const OdeParams& p);

/// Max over (subsampled) profile points of |sl_of_patch - theta| where the
/// shape operator is recomputed from reconstructed charts by the immersion
/// machinery, independent of the integrator's internal curvature values.
double profile_residual(const ProfileRun& run, const OdeParams& p, int max_samples = 24);

/// Closed-form constant-curvature values for the rotation families.
double closed_form_sl(FamilyKind kind, double R, double rho, int n, double c);

/// Initial data on the closed-form families (phi = pi/2 points).
ProfileState family_initial_state(FamilyKind kind, double R, const OdeParams& p);

/// The unique rho > 0 making the distance-R tube have constant angle
/// (n-1) pi/2, by monotone bisection. For n = 3 the closed form
/// rho^2 = 2 + tanh^2 R serves as an independent check.
double tube_match_rho(int n, double R);

struct DegenerationMember {
    double R = 0.0;
    double rho = 0.0;
    double f_tau = 0.0;              // at tau = 1/(2n)
    double min_horizontal_sv = 0.0;  // smallest horizontal singular value of the lift
    double sl_residual = 0.0;        // angle residual against (n-1) pi/2
    int verticality = 0;             // at tol = 1e-6
};

/// Exact constant-angle tubes along a shrinking radius sequence: the
/// degeneration toward the normal sphere bundle, quantified.
std::vector<DegenerationMember> degeneration_family(int n, const Vec& radii);

}  // namespace slc
