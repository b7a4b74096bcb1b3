#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "slc/curvature.hpp"
#include "slc/legendrian.hpp"
#include "test_util.hpp"

using namespace slc;
using test::Rng;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("gauss lift of the round sphere: verticals are (rho/R) x horizontals") {
    Model e = euclidean_model(3);
    double R = 2.0, rho = 0.8;
    ImmersionPatch patch = make_family({FamilyKind::euclidean_sphere, R}, e);
    LiftFrame lf = gauss_lift_exact(patch, patch.domain_center(), rho);
    for (int k = 0; k < lf.n; ++k)
        for (std::size_t a = 0; a < lf.tangent_basis[k].horizontal.size(); ++a)
            CHECK(lf.tangent_basis[k].vertical[a] ==
                  doctest::Approx(rho / R * lf.tangent_basis[k].horizontal[a]).epsilon(1e-10));
    // convexity: diagonal m-values nonnegative
    for (int k = 0; k < lf.n; ++k) CHECK(lf.m_gram[k][k] >= 0.0);
}

TEST_CASE("equidistant lift: vertical/horizontal ratio rho tanh R") {
    Model h = hyperbolic_model(4, -1.0);
    double R = 0.7, rho = 1.3;
    ImmersionPatch patch = make_family({FamilyKind::equidistant, R}, h);
    Vec u = patch.domain_center();
    u[0] += 0.3;
    LiftFrame lf = gauss_lift_exact(patch, u, rho);
    double ratio = rho * std::tanh(R);
    for (int k = 0; k < lf.n; ++k)
        for (std::size_t a = 0; a < lf.tangent_basis[k].horizontal.size(); ++a)
            CHECK(lf.tangent_basis[k].vertical[a] ==
                  doctest::Approx(ratio * lf.tangent_basis[k].horizontal[a]).epsilon(1e-8));
}

TEST_CASE("legendrian report on matched families") {
    // equidistant at its own angle
    for (int n : {2, 3}) {
        Model h = hyperbolic_model(n + 1, -1.0);
        for (double R : {0.3, 1.0}) {
            for (double rho : {0.5, 1.0, 2.0}) {
                ImmersionPatch patch = make_family({FamilyKind::equidistant, R}, h);
                double theta = n * std::atan(rho * std::tanh(R));
                LiftFrame lf = gauss_lift_exact(patch, patch.domain_center(), rho);
                LegendrianReport rep = legendrian_report(lf, theta);
                CHECK(rep.contact <= 1e-8);
                CHECK(rep.symplectic <= 1e-8);
                CHECK(rep.special_angle <= 1e-8);
                CHECK(rep.positivity_min >= -1e-10);
            }
        }
    }
    // round sphere at its own angle
    Model e = euclidean_model(3);
    double R = 1.7, rho = 0.9;
    ImmersionPatch sphere = make_family({FamilyKind::euclidean_sphere, R}, e);
    LiftFrame lf = gauss_lift_exact(sphere, sphere.domain_center(), rho);
    LegendrianReport rep = legendrian_report(lf, 2 * std::atan(rho / R));
    CHECK(rep.contact <= 1e-8);
    CHECK(rep.symplectic <= 1e-8);
    CHECK(rep.special_angle <= 1e-8);
    CHECK(rep.positivity_min >= -1e-10);
}

TEST_CASE("special angle residual equals |sin(delta theta)| off the match") {
    Model h = hyperbolic_model(3, -1.0);
    double R = 0.9, rho = 1.1;
    ImmersionPatch patch = make_family({FamilyKind::equidistant, R}, h);
    double theta_true = 2 * std::atan(rho * std::tanh(R));
    LiftFrame lf = gauss_lift_exact(patch, patch.domain_center(), rho);
    for (double off : {0.3, -0.55, 1.2}) {
        LegendrianReport rep = legendrian_report(lf, theta_true + off);
        CHECK(rep.special_angle == doctest::Approx(std::abs(std::sin(off))).epsilon(1e-8));
        CHECK(rep.contact <= 1e-8);
        CHECK(rep.symplectic <= 1e-8);
    }
}

TEST_CASE("orientation-flipped sphere loses positivity") {
    Model e = euclidean_model(3);
    ImmersionPatch patch = make_family({FamilyKind::euclidean_sphere, 1.0}, e);
    patch.orientation = -1.0;
    LiftFrame lf = gauss_lift_exact(patch, patch.domain_center(), 1.0);
    CHECK(legendrian_report(lf, kPi / 2.0).positivity_min < 0.0);
}

TEST_CASE("symplectic residual vanishes on random perturbed patches") {
    Rng rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        BumpSpec bump;
        bump.center = {test::uniform(rng, -0.3, 0.3), test::uniform(rng, -0.3, 0.3),
                       test::uniform(rng, -0.3, 0.3)};
        bump.width = test::uniform(rng, 0.8, 1.6);
        bool hyp = trial % 2 == 0;
        Model base = hyp ? hyperbolic_model(3, -1.0) : euclidean_model(3);
        Model pert = perturbed_model(base, test::uniform(rng, -0.05, 0.05), bump);
        FamilySpec fam{hyp ? FamilyKind::equidistant : FamilyKind::euclidean_sphere,
                       test::uniform(rng, 0.5, 1.5)};
        ImmersionPatch patch = make_family(fam, pert);
        Vec u = patch.domain_center();
        for (int k = 0; k < patch.n; ++k) u[k] += test::uniform(rng, -0.2, 0.2);
        LiftFrame lf = gauss_lift(patch, u, 1.0);  // finite-difference path
        LegendrianReport rep = legendrian_report(lf, 1.0);
        CHECK(rep.symplectic <= 1e-10);
        CHECK(rep.contact <= 1e-10);
    }
}

TEST_CASE("report does not depend on the frame completion") {
    Model h = hyperbolic_model(4, -1.0);
    ImmersionPatch patch = make_family({FamilyKind::tube, 0.6}, h);
    double rho = 1.2;
    LiftFrame lf = gauss_lift_exact(patch, patch.domain_center(), rho);
    double theta = 2 * std::atan(rho / std::tanh(0.6)) + std::atan(rho * std::tanh(0.6));
    LegendrianReport base = legendrian_report(lf, theta);

    // rotate the completion E -> Q E by a random special-orthogonal Q and
    // rebuild the component data from the definitions
    Rng rng(17);
    Mat Q = test::random_orthogonal(rng, lf.n);
    if (lu_det(Q) < 0.0)
        for (auto& x : Q[0]) x = -x;
    LiftFrame rot = lf;
    rot.H = matmul(Q, lf.H);
    rot.V = matmul(Q, lf.V);
    std::vector<std::vector<std::complex<double>>> C(lf.n, std::vector<std::complex<double>>(lf.n));
    for (int i = 0; i < lf.n; ++i)
        for (int k = 0; k < lf.n; ++k) C[i][k] = {rot.H[i][k], rot.V[i][k]};
    rot.omega_det = complex_lu_det(C);
    LegendrianReport rep = legendrian_report(rot, theta);
    CHECK(rep.special_angle == doctest::Approx(base.special_angle).epsilon(1e-10));
    CHECK(rep.symplectic == doctest::Approx(base.symplectic).epsilon(1e-10));
    CHECK(rep.positivity_min == doctest::Approx(base.positivity_min).epsilon(1e-10));
}

TEST_CASE("lifted metric identity") {
    // unit sphere at rho = 1: lifted metric = 2 x induced
    Model e = euclidean_model(3);
    ImmersionPatch sphere = make_family({FamilyKind::euclidean_sphere, 1.0}, e);
    Vec u = sphere.domain_center();
    LiftedMetricCheck chk = lifted_metric_check(sphere, u, 1.0);
    CHECK(chk.residual <= 1e-8);
    FundamentalData fd = fundamental_forms_exact(sphere, u);
    LiftFrame lf = gauss_lift_exact(sphere, u, 1.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(lf.lifted_gram[i][j] == doctest::Approx(2.0 * fd.first_form[i][j]).epsilon(1e-10));

    // nearly totally geodesic equidistant: lifted ~ induced
    Model h = hyperbolic_model(3, -1.0);
    ImmersionPatch eq = make_family({FamilyKind::equidistant, 1e-6}, h);
    Vec ue = eq.domain_center();
    FundamentalData fde = fundamental_forms_exact(eq, ue);
    LiftFrame lfe = gauss_lift_exact(eq, ue, 1.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(lfe.lifted_gram[i][j] == doctest::Approx(fde.first_form[i][j]).epsilon(1e-8));

    // tube eigenvalue structure of the lifted metric relative to the
    // induced one: {1 + rho^2 coth^2 R (x n-1), 1 + rho^2 tanh^2 R}
    Model h4 = hyperbolic_model(4, -1.0);
    double R = 0.5, rho = 1.4;
    ImmersionPatch tube = make_family({FamilyKind::tube, R}, h4);
    Vec ut = tube.domain_center();
    FundamentalData fdt = fundamental_forms_exact(tube, ut);
    LiftFrame lft = gauss_lift_exact(tube, ut, rho);
    // solve the generalized problem via G^{-1} Ghat
    Mat rel = matmul(inverse(fdt.first_form), lft.lifted_gram);
    Vec eigs = jacobi_eigen(matmul(rel, identity(3))).eigenvalues;  // rel is G-symmetric
    std::sort(eigs.begin(), eigs.end());
    double lo = 1.0 + rho * rho * std::tanh(R) * std::tanh(R);
    double hi = 1.0 + rho * rho / (std::tanh(R) * std::tanh(R));
    CHECK(eigs[0] == doctest::Approx(lo).epsilon(1e-6));
    CHECK(eigs[1] == doctest::Approx(hi).epsilon(1e-6));
    CHECK(eigs[2] == doctest::Approx(hi).epsilon(1e-6));

    CHECK(lifted_metric_check(tube, ut, rho).residual <= 1e-8);
}

TEST_CASE("f_tau values and domain") {
    CHECK(f_tau(SymMatrix::zero(3), 1.0, 1.0 / 6.0) == doctest::Approx(1.0));
    for (int n : {2, 3, 4})
        CHECK(f_tau(SymMatrix::ident(n), 1.0, 1.0 / (2.0 * n)) ==
              doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));
    CHECK_THROWS_AS(f_tau(SymMatrix::ident(2), 1.0, 0.3), std::domain_error);
    CHECK_THROWS_AS(f_tau(SymMatrix::ident(2), 1.0, 0.0), std::domain_error);

    // strictly decreasing along the shrinking-tube spectrum
    double prev = 2.0;
    for (double R : {1.0, 0.5, 0.25, 0.125}) {
        SymMatrix A = SymMatrix::diag({1.0 / std::tanh(R), 1.0 / std::tanh(R), std::tanh(R)});
        double f = f_tau(A, 1.0, 1.0 / 6.0);
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("f_tau monotone in each eigenvalue magnitude and in rho") {
    Rng rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        Vec eigs = test::random_eigs(rng, 3, 0.2, 5.0);
        SymMatrix A = SymMatrix::diag(eigs);
        double rho = test::uniform(rng, 0.3, 2.0), tau = 1.0 / 6.0;
        double f0 = f_tau(A, rho, tau);
        Vec bigger = eigs;
        bigger[trial % 3] *= 1.3;
        CHECK(f_tau(SymMatrix::diag(bigger), rho, tau) < f0);
        CHECK(f_tau(A, rho * 1.2, tau) < f0);
    }
}

TEST_CASE("verticality: graph lifts have order zero, the normal bundle n-1") {
    Model h = hyperbolic_model(4, -1.0);
    ImmersionPatch tube = make_family({FamilyKind::tube, 0.4}, h);
    LiftFrame lf = gauss_lift_exact(tube, tube.domain_center(), 1.0);
    CHECK(verticality_order(lf, 1e-6) == 0);

    LiftFrame nb = normal_sphere_bundle_frame(3, 1.0, 0.3, Vec{1.1, 0.8});
    CHECK(verticality_order(nb, 1e-6) == 2);
    // the normal bundle is special Legendrian at theta = (n-1) pi/2 and
    // exactly null for the Minkowski pairing
    LegendrianReport rep = legendrian_report(nb, kPi);
    CHECK(rep.contact <= 1e-12);
    CHECK(rep.symplectic <= 1e-12);
    CHECK(rep.special_angle <= 1e-12);
    CHECK(std::abs(rep.positivity_min) <= 1e-12);
}

TEST_CASE("horizontal singular values of the tube lift follow the closed form") {
    Model h = hyperbolic_model(4, -1.0);
    double rho = 1.0;
    for (double R : {0.8, 0.4, 0.2, 0.1}) {
        ImmersionPatch tube = make_family({FamilyKind::tube, R}, h);
        LiftFrame lf = gauss_lift_exact(tube, tube.domain_center(), rho);
        Vec sv = horizontal_singular_values(lf);
        double coth = 1.0 / std::tanh(R), tanh = std::tanh(R);
        Vec expect = {1.0 / std::sqrt(1.0 + rho * rho * coth * coth),
                      1.0 / std::sqrt(1.0 + rho * rho * coth * coth),
                      1.0 / std::sqrt(1.0 + rho * rho * tanh * tanh)};
        std::sort(expect.begin(), expect.end());
        for (int i = 0; i < 3; ++i) CHECK(sv[i] == doctest::Approx(expect[i]).epsilon(1e-8));
    }
    // crossing the tolerance between the two singular-value groups flips
    // the reported order from 0 to n-1
    ImmersionPatch tiny = make_family({FamilyKind::tube, 0.05}, h);
    LiftFrame lf = gauss_lift_exact(tiny, tiny.domain_center(), 1.0);
    Vec sv = horizontal_singular_values(lf);
    double mid = std::sqrt(sv[1] * sv[2]);
    CHECK(verticality_order(lf, sv[0] * 0.5) == 0);
    CHECK(verticality_order(lf, mid) == 2);
}
