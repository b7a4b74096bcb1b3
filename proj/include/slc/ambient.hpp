#pragma once

#include <functional>
#include <optional>
#include <string>

#include "slc/linalg.hpp"

namespace slc {

enum class ModelKind { euclidean, hyperbolic };

/// Compactly supported (in practice: rapidly decaying) scalar field used as
/// a conformal factor perturbation, with declared bounds on the field and
/// its first two derivatives for validation by sampling.
struct BumpSpec {
    Vec center;         // chart coordinates
    double width = 1.0;
    double bound0 = 1.0;
    double bound1 = 1.0;
    double bound2 = 3.0;
};

struct Perturbation {
    double epsilon = 0.0;
    BumpSpec bump;
};

/// Constant-curvature ambient model, optionally with a conformal metric
/// perturbation g_eps = (1 + eps*bump) g.
///
/// Representation:
///   - Euclidean: points are chart coordinates in R^m.
///   - Hyperbolic, unperturbed: points live on the hyperboloid
///     <x,x>_L = 1/c in Lorentzian R^{m+1} (time coordinate first).
///   - Perturbed models always use a global chart of dimension m; for
///     hyperbolic ambients this is the graph chart u -> (x0(u), u) with
///     x0 = sqrt(|1/c| + |u|^2), metric pulled back from the hyperboloid.
struct Model {
    ModelKind kind = ModelKind::euclidean;
    int m = 3;       // manifold dimension (hypersurfaces inside have dim m-1)
    double c = 0.0;  // sectional curvature, <= 0
    std::optional<Perturbation> pert;

    bool chart_rep() const { return pert.has_value() || kind == ModelKind::euclidean; }
    int coord_dim() const { return chart_rep() ? m : m + 1; }
};

Model euclidean_model(int m);
Model hyperbolic_model(int m, double c = -1.0);
Model perturbed_model(Model base, double epsilon, BumpSpec bump);

/// Lorentz pairing -x0 y0 + sum_i xi yi.
template <class S>
S lorentz_dot(const VecT<S>& x, const VecT<S>& y) {
    S s = -(x[0] * y[0]);
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

/// Bump field value in chart coordinates (templated for jets).
template <class S>
S bump_value(const BumpSpec& b, const VecT<S>& x) {
    S q(0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        S d = x[i] - (i < b.center.size() ? b.center[i] : 0.0);
        q += d * d;
    }
    return exp(q * (-1.0 / (b.width * b.width)));
}
inline double bump_value(const BumpSpec& b, const Vec& x) { return bump_value<double>(b, x); }

/// Chart metric g_ab(x) for chart-representation models.
template <class S>
MatT<S> chart_metric(const Model& model, const VecT<S>& x);

/// Riemannian inner product of tangent vectors at p (model representation).
template <class S>
S inner(const Model& model, const VecT<S>& p, const VecT<S>& X, const VecT<S>& Y);

/// Christoffel symbols Gamma^k_ab at chart point x. Exact (jet) route and
/// the finite-difference route (five-point first derivatives of the metric).
std::vector<Mat> christoffels(const Model& model, const Vec& x);
std::vector<Mat> christoffels_fd(const Model& model, const Vec& x, double h = 1e-3);

/// R(X,Y)Z at p. Space forms use the closed form c(<Y,Z>X - <X,Z>Y);
/// perturbed models differentiate Christoffel symbols by finite
/// differences (the contract route). riemann_exact uses jet derivatives of
/// the metric instead and agrees to machine precision on closed forms.
Vec riemann(const Model& model, const Vec& p, const Vec& X, const Vec& Y, const Vec& Z);
Vec riemann_exact(const Model& model, const Vec& p, const Vec& X, const Vec& Y, const Vec& Z);

/// Sectional curvature spanned by orthonormal X, Y: <R(X,Y)Y, X>.
double sectional(const Model& model, const Vec& p, const Vec& X, const Vec& Y);

/// Geodesic exponential map for unperturbed space forms. Euclidean: p + v.
/// Hyperbolic: cosh(k|v|) p + sinh(k|v|)/(k|v|) v with k = sqrt(-c),
/// analytic through v = 0.
template <class S>
VecT<S> exp_map(const Model& model, const VecT<S>& p, const VecT<S>& v);

/// Parallel transport of w along the geodesic exp_p(t v), t in [0,1]
/// (space forms only).
Vec parallel_transport(const Model& model, const Vec& p, const Vec& v, const Vec& w);

/// Geodesic distance between points (space forms only).
double geodesic_distance(const Model& model, const Vec& p, const Vec& q);

/// Gram-Schmidt completion of a nonzero tangent seed to an orthonormal
/// tangent basis at p; the normalized seed is the LAST vector.
std::vector<Vec> ortho_frame(const Model& model, const Vec& p, const Vec& seed);

/// Hyperboloid membership / tangency checks (no-ops for chart models).
double model_residual(const Model& model, const Vec& p);
double tangency_residual(const Model& model, const Vec& p, const Vec& X);

/// Chart <-> embedding conversion for hyperbolic models (the chart is the
/// spatial part of the hyperboloid point).
Vec hyperboloid_from_chart(const Model& model, const Vec& u);
Vec chart_from_hyperboloid(const Vec& x);

std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);

}  // namespace slc
