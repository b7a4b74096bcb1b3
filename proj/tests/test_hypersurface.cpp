#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slc/curvature.hpp"
#include "slc/hypersurface.hpp"
#include "test_util.hpp"

using namespace slc;
using test::Rng;

namespace {
constexpr double kPi = 3.14159265358979323846;

double max_eig_dev(const SymMatrix& shape, const Vec& expected_sorted) {
    Vec eigs = eigen_sym(shape).eigenvalues;
    double dev = 0.0;
    for (std::size_t i = 0; i < eigs.size(); ++i) dev = std::max(dev, std::abs(eigs[i] - expected_sorted[i]));
    return dev;
}
}  // namespace

TEST_CASE("euclidean sphere: shape = I/R via finite differences and jets") {
    for (int n : {2, 3}) {
        Model e = euclidean_model(n + 1);
        ImmersionPatch patch = make_family({FamilyKind::euclidean_sphere, 2.0}, e);
        Vec u = patch.domain_center();
        FundamentalData fd = fundamental_forms(patch, u, 1e-4);
        CHECK(max_eig_dev(fd.shape, Vec(n, 0.5)) <= 1e-6);
        FundamentalData ex = fundamental_forms_exact(patch, u);
        CHECK(max_eig_dev(ex.shape, Vec(n, 0.5)) <= 1e-12);
        CHECK(fd.asymmetry <= 1e-6);

        // |i(u)| = R at random chart points
        Rng rng(5);
        for (int trial = 0; trial < 10; ++trial) {
            Vec uu(n);
            for (int k = 0; k < n; ++k) uu[k] = test::uniform(rng, patch.domain[k][0], patch.domain[k][1]);
            Vec p = patch.map_d(uu);
            CHECK(std::sqrt(dot(p, p)) == doctest::Approx(2.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("hyperbolic equidistant: shape = tanh(R) I") {
    for (int n : {2, 3}) {
        Model h = hyperbolic_model(n + 1, -1.0);
        double R = 0.8;
        ImmersionPatch patch = make_family({FamilyKind::equidistant, R}, h);
        Vec u = patch.domain_center();
        u[0] += 0.2;  // off-center chart point
        FundamentalData fd = fundamental_forms(patch, u, 1e-4);
        CHECK(max_eig_dev(fd.shape, Vec(n, std::tanh(R))) <= 1e-6);
        FundamentalData ex = fundamental_forms_exact(patch, u);
        CHECK(max_eig_dev(ex.shape, Vec(n, std::tanh(R))) <= 1e-12);
        CHECK(model_residual(h, fd.point) <= 1e-10);
    }
    // atanh oracle: tanh(R) = 0.5 at R = atanh(0.5)
    Model h = hyperbolic_model(3, -1.0);
    ImmersionPatch patch = make_family({FamilyKind::equidistant, std::atanh(0.5)}, h);
    FundamentalData ex = fundamental_forms_exact(patch, patch.domain_center());
    CHECK(max_eig_dev(ex.shape, Vec(2, 0.5)) <= 1e-6);
}

TEST_CASE("hyperbolic geodesic sphere: shape = coth(R) I") {
    for (int n : {2, 3}) {
        Model h = hyperbolic_model(n + 1, -1.0);
        double R = 0.6;
        ImmersionPatch patch = make_family({FamilyKind::geodesic_sphere, R}, h);
        Vec u = patch.domain_center();
        FundamentalData fd = fundamental_forms(patch, u, 1e-4);
        CHECK(max_eig_dev(fd.shape, Vec(n, 1.0 / std::tanh(R))) <= 1e-6);
        FundamentalData ex = fundamental_forms_exact(patch, u);
        CHECK(max_eig_dev(ex.shape, Vec(n, 1.0 / std::tanh(R))) <= 1e-12);
    }
}

TEST_CASE("tube about a geodesic: spectrum {coth R (n-1), tanh R}") {
    Model h = hyperbolic_model(4, -1.0);
    double R = 0.25;
    ImmersionPatch patch = make_family({FamilyKind::tube, R}, h);
    Vec u = patch.domain_center();
    Vec expect = {std::tanh(R), 1.0 / std::tanh(R), 1.0 / std::tanh(R)};
    std::sort(expect.begin(), expect.end());
    FundamentalData fd = fundamental_forms(patch, u, 1e-4);
    CHECK(max_eig_dev(fd.shape, expect) <= 1e-6);
    FundamentalData ex = fundamental_forms_exact(patch, u);
    CHECK(max_eig_dev(ex.shape, expect) <= 1e-12);
}

TEST_CASE("sl_of_patch matches closed forms") {
    // Euclidean sphere: n atan(rho/R)
    Model e = euclidean_model(3);
    ImmersionPatch sphere = make_family({FamilyKind::euclidean_sphere, 1.5}, e);
    Vec u = sphere.domain_center();
    CHECK(sl_of_patch(sphere, u, 0.7) == doctest::Approx(2 * std::atan(0.7 / 1.5)).epsilon(1e-6));

    // equidistant: n atan(rho tanh R)
    for (int n : {2, 3}) {
        Model h = hyperbolic_model(n + 1, -1.0);
        for (double R : {0.1, 0.5, 1.0, 2.0}) {
            ImmersionPatch eq = make_family({FamilyKind::equidistant, R}, h);
            Vec uc = eq.domain_center();
            for (double rho : {0.5, 1.0, 2.0}) {
                double expect = n * std::atan(rho * std::tanh(R));
                CHECK(sl_of_patch(eq, uc, rho) == doctest::Approx(expect).epsilon(1e-6));
            }
        }
    }

    // tube: (n-1) atan(rho coth R) + atan(rho tanh R)
    Model h4 = hyperbolic_model(4, -1.0);
    ImmersionPatch tube = make_family({FamilyKind::tube, 0.4}, h4);
    double rho = 1.3;
    double expect = 2 * std::atan(rho / std::tanh(0.4)) + std::atan(rho * std::tanh(0.4));
    CHECK(sl_of_patch(tube, tube.domain_center(), rho) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("convexity of the closed-form families") {
    Model e = euclidean_model(4);
    Model h = hyperbolic_model(4, -1.0);
    for (double R : {0.3, 1.0, 2.2}) {
        CHECK(eigen_sym(fundamental_forms_exact(make_family({FamilyKind::euclidean_sphere, R}, e),
                                                Vec{1.2, 1.4, 1.0})
                            .shape)
                  .eigenvalues.front() > 0.0);
        for (auto kind : {FamilyKind::geodesic_sphere, FamilyKind::equidistant, FamilyKind::tube}) {
            ImmersionPatch p = make_family({kind, R}, h);
            CHECK(eigen_sym(fundamental_forms_exact(p, p.domain_center()).shape).eigenvalues.front() > 0.0);
        }
    }
}

TEST_CASE("step-halving convergence of the finite-difference shape") {
    auto err = [](const ImmersionPatch& patch, const Vec& u, double h_step) {
        SymMatrix exact = fundamental_forms_exact(patch, u).shape;
        SymMatrix s = fundamental_forms(patch, u, h_step).shape;
        double e = 0.0;
        for (int i = 0; i < s.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j) e = std::max(e, std::abs(s(i, j) - exact(i, j)));
        return e;
    };

    // Equidistant at an off-center point: a genuine h^2 truncation term.
    Model h = hyperbolic_model(3, -1.0);
    ImmersionPatch eq = make_family({FamilyKind::equidistant, 0.8}, h);
    Vec u = {0.5, -0.7};
    double ratio = err(eq, u, 8e-3) / err(eq, u, 4e-3);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);

    // Perturbed metric: no special cancellations anywhere.
    BumpSpec bump;
    bump.center = {0.1, -0.2, 0.3};
    bump.width = 1.2;
    Model pert = perturbed_model(hyperbolic_model(3, -1.0), 0.02, bump);
    ImmersionPatch pp = make_family({FamilyKind::equidistant, 0.8}, pert);
    double pratio = err(pp, Vec{0.4, -0.5}, 8e-3) / err(pp, Vec{0.4, -0.5}, 4e-3);
    CHECK(pratio >= 3.5);
    CHECK(pratio <= 4.5);

    // Sphere and tube charts happen to cancel the truncation term entirely:
    // the finite-difference shape sits at the rounding floor (~eps/h^2).
    ImmersionPatch gs = make_family({FamilyKind::geodesic_sphere, 0.9}, h);
    CHECK(err(gs, gs.domain_center(), 1e-4) <= 5e-8);
}

TEST_CASE("orientation flip negates the shape operator") {
    Model e = euclidean_model(3);
    ImmersionPatch patch = make_family({FamilyKind::euclidean_sphere, 1.0}, e);
    ImmersionPatch flipped = patch;
    flipped.orientation = -1.0;
    Vec u = patch.domain_center();
    SymMatrix a = fundamental_forms_exact(patch, u).shape;
    SymMatrix b = fundamental_forms_exact(flipped, u).shape;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(a(i, j) == doctest::Approx(-b(i, j)).epsilon(1e-12));
}

TEST_CASE("degenerate immersion and boundary margins raise errors") {
    Model e = euclidean_model(3);
    // constant in u2: rank-deficient differential
    ImmersionPatch bad = make_patch(e, 2, {{{-1.0, 1.0}}, {{-1.0, 1.0}}}, [](const auto& u) {
        using S = typename std::decay_t<decltype(u)>::value_type;
        VecT<S> x(3, S(0.0));
        x[0] = u[0];
        x[1] = u[0] * u[0];
        x[2] = S(1.0);
        return x;
    });
    CHECK_THROWS_AS(fundamental_forms(bad, Vec{0.0, 0.0}, 1e-4), ImmersionDegeneracy);

    ImmersionPatch sphere = make_family({FamilyKind::euclidean_sphere, 1.0}, e);
    Vec near_edge = {sphere.domain[0][0] + 1e-6, 1.5};
    CHECK_THROWS_AS(fundamental_forms(sphere, near_edge, 1e-4), std::domain_error);
}

TEST_CASE("patch json descriptor round trip") {
    std::string text = R"({"model":{"type":"hyperbolic","dim":3,"curvature":-1.0},
                           "family":{"kind":"tube","R":0.25},"orientation":1})";
    ImmersionPatch p = patch_from_json(text);
    CHECK(p.n == 2);
    CHECK(p.label == "tube");
    Vec expect = {std::tanh(0.25), 1.0 / std::tanh(0.25)};
    std::sort(expect.begin(), expect.end());
    CHECK(max_eig_dev(fundamental_forms_exact(p, p.domain_center()).shape, expect) <= 1e-10);
}

TEST_CASE("finite differences agree with jets on a perturbed patch") {
    BumpSpec bump;
    bump.center = {0.1, -0.2, 0.3};
    bump.width = 1.2;
    Model pert = perturbed_model(hyperbolic_model(3, -1.0), 0.01, bump);
    ImmersionPatch patch = make_family({FamilyKind::equidistant, 0.7}, pert);
    Vec u = patch.domain_center();
    u[1] -= 0.3;
    SymMatrix a = fundamental_forms(patch, u, 1e-4).shape;
    SymMatrix b = fundamental_forms_exact(patch, u).shape;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(a(i, j) == doctest::Approx(b(i, j)).epsilon(5e-6).scale(1.0));
}
