#pragma once

#include <array>
#include <functional>
#include <string>

#include "slc/ambient.hpp"
#include "slc/symmat.hpp"

namespace slc {

struct ImmersionDegeneracy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parametrized hypersurface chart. map_d evaluates on doubles; map_j is
/// the same formula on 2-jets and powers the exact-derivative path (absent
/// for purely numeric maps, in which case only finite differences apply).
struct ImmersionPatch {
    Model model;
    int n = 2;  // hypersurface dimension (model.m == n+1)
    std::vector<std::array<double, 2>> domain;
    std::function<Vec(const Vec&)> map_d;
    std::function<VecT<Jet2>(const VecT<Jet2>&)> map_j;
    std::function<Vec(const Vec&)> normal_hint;  // optional sign reference
    // Exact normal field with jets (closed-form families). Unit for the
    // unperturbed space-form metric; normal deformations require it.
    std::function<VecT<Jet2>(const VecT<Jet2>&)> normal_j;
    double orientation = 1.0;
    std::string label;

    bool has_jet() const { return static_cast<bool>(map_j); }
    Vec domain_center() const;
};

/// Construct a patch from a single generic lambda usable on doubles and
/// jets alike.
template <class F>
ImmersionPatch make_patch(Model model, int n, std::vector<std::array<double, 2>> domain, F f,
                          double orientation = 1.0) {
    ImmersionPatch p;
    p.model = std::move(model);
    p.n = n;
    p.domain = std::move(domain);
    p.map_d = [f](const Vec& u) { return f(u); };
    p.map_j = [f](const VecT<Jet2>& u) { return f(u); };
    p.orientation = orientation;
    return p;
}

struct FundamentalData {
    Vec point;       // i(u), model representation
    Mat tangents;    // rows t_k = d_k i
    Mat dN;          // rows: ambient covariant derivative of N along d_k
    Mat first_form;  // G_kl = <t_k, t_l>
    Mat second_form; // II_kl = <dN_k, t_l>, symmetrized
    Vec normal;            // unit normal, sign fixed by orientation
    SymMatrix shape{1};    // shape operator in a G-orthonormal frame
    Mat shape_coord; // A^k_l = (G^{-1} II)^k_l in the chart frame
    double asymmetry = 0.0;  // measured pre-symmetrization |II - II^T|
};

/// Second-order central finite differences (step h in chart units): first
/// derivatives of the map give the metric, derivatives of the unit normal
/// field give the second form. Errors: rank deficiency of the differential
/// (smallest singular value <= 1e-8) and chart points closer than 2h to the
/// domain boundary.
FundamentalData fundamental_forms(const ImmersionPatch& patch, const Vec& u, double h = 1e-4);

/// Same quantities from the patch jet; derivatives are exact.
FundamentalData fundamental_forms_exact(const ImmersionPatch& patch, const Vec& u);

/// Spectral helpers shared by both paths.
FundamentalData assemble_fundamental(const ImmersionPatch& patch, const Vec& point, const Mat& tangents,
                                     const Vec& normal_raw, const Mat& dN_raw);

double sl_of_patch(const ImmersionPatch& patch, const Vec& u, double rho, double h = 1e-4);
double sl_of_patch_exact(const ImmersionPatch& patch, const Vec& u, double rho);

enum class FamilyKind {
    euclidean_sphere,
    geodesic_sphere,
    equidistant,
    tube,
};

struct FamilySpec {
    FamilyKind kind = FamilyKind::euclidean_sphere;
    double R = 1.0;
};

/// Closed-form homogeneous families with exact jets:
///  - euclidean_sphere: round sphere of radius R, shape I/R;
///  - geodesic_sphere (c=-1): shape coth(R) I;
///  - equidistant (c=-1): distance-R surface over a totally geodesic
///    hyperplane, shape tanh(R) I;
///  - tube (c=-1): distance-R tube about a geodesic, shape
///    {coth R (n-1 times), tanh R}.
ImmersionPatch make_family(const FamilySpec& spec, const Model& model);

FamilySpec family_from_json(const std::string& text);
ImmersionPatch patch_from_json(const std::string& text);

/// Unit sphere chart S^{d} subset R^{d+1} in spherical angles, generic
/// enough for jets; used by the family charts and the revolution module.
template <class S>
VecT<S> sphere_chart(const VecT<S>& angles) {
    std::size_t d = angles.size();
    VecT<S> x(d + 1, S(1.0));
    for (std::size_t i = 0; i < d; ++i) {
        S c = cos(angles[i]), s = sin(angles[i]);
        x[i] = x[i] * c;
        for (std::size_t j = i + 1; j <= d; ++j) x[j] = x[j] * s;
    }
    return x;
}

}  // namespace slc
