#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slc/elliptic.hpp"
#include "test_util.hpp"

using namespace slc;
using test::Rng;

TEST_CASE("zero boundary data gives the zero solution") {
    GridProblem p = cosh1d_problem(101);
    p.boundary = [](const Vec&) { return 0.0; };
    Vec u = dirichlet_solve(p);
    for (double v : u) CHECK(std::abs(v) <= 1e-14);
}

TEST_CASE("1d cosh benchmark at 1001 nodes") {
    GridProblem p = cosh1d_problem(1001);
    Vec u = dirichlet_solve(p);
    double worst = 0.0;
    for (int i = 0; i < 1001; ++i)
        worst = std::max(worst, std::abs(u[i] - cosh1d_exact(p.node_coord(i)[0])));
    CHECK(worst <= 1e-6);

    // interior residual of the assembled operator
    Vec r = apply_operator(p, u);
    for (double v : r) CHECK(std::abs(v) <= 1e-9);
}

TEST_CASE("second-order grid refinement") {
    auto err = [](int nodes) {
        GridProblem p = cosh1d_problem(nodes);
        Vec u = dirichlet_solve(p);
        double worst = 0.0;
        for (int i = 0; i < nodes; ++i)
            worst = std::max(worst, std::abs(u[i] - cosh1d_exact(p.node_coord(i)[0])));
        return worst;
    };
    double e1 = err(251), e2 = err(501);
    double ratio = e1 / e2;
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}

TEST_CASE("constant boundary data stays within [0, K]") {
    GridProblem p = cosh1d_problem(301);
    double K = 2.5;
    p.boundary = [K](const Vec&) { return K; };
    Vec u = dirichlet_solve(p);
    for (double v : u) {
        CHECK(v >= 0.0);
        CHECK(v <= K + 1e-12);
    }
}

TEST_CASE("discrete maximum principle under random boundary data") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        GridProblem p = cosh1d_problem(101);
        double a = test::uniform(rng, -2.0, 2.0), b = test::uniform(rng, -2.0, 2.0);
        p.drift = [](const Vec& x) { return Vec{std::sin(3.0 * x[0])}; };
        p.boundary = [a, b](const Vec& x) { return x[0] < 0.5 ? a : b; };
        Vec u = dirichlet_solve(p);
        double hi = std::max({a, b, 0.0}), lo = std::min({a, b, 0.0});
        for (double v : u) {
            CHECK(v <= hi + 1e-10);
            CHECK(v >= lo - 1e-10);
        }
    }
}

TEST_CASE("solver is linear in the boundary data") {
    GridProblem p1 = cosh1d_problem(201);
    GridProblem p2 = cosh1d_problem(201);
    GridProblem p12 = cosh1d_problem(201);
    p1.boundary = [](const Vec& x) { return x[0] < 0.5 ? 1.0 : 0.0; };
    p2.boundary = [](const Vec& x) { return x[0] < 0.5 ? 0.0 : -0.7; };
    p12.boundary = [](const Vec& x) { return x[0] < 0.5 ? 1.0 : -0.7; };
    Vec u1 = dirichlet_solve(p1), u2 = dirichlet_solve(p2), u12 = dirichlet_solve(p12);
    for (int i = 0; i < 201; ++i) CHECK(u12[i] == doctest::Approx(u1[i] + u2[i]).epsilon(1e-10));
}

TEST_CASE("2d solve with a variable diagonal metric and drift") {
    GridProblem p;
    p.dim = 2;
    p.lo = {0.0, 0.0};
    p.hi = {1.0, 1.0};
    p.nodes = {17, 17};
    p.reaction = 1.0;
    p.metric = [](const Vec& x) {
        Mat g = identity(2);
        g[0][0] = 1.0 + 0.3 * x[0] * x[0];
        g[1][1] = 1.0 + 0.2 * std::sin(x[1]);
        return g;
    };
    p.drift = [](const Vec& x) { return Vec{0.4 * x[1], -0.3 * x[0]}; };
    p.boundary = [](const Vec& x) { return 1.0 + 0.5 * x[0] - 0.25 * x[1]; };
    Vec u = dirichlet_solve(p);
    double hi = 1.5, lo = 0.0;
    for (double v : u) {
        CHECK(v <= hi + 1e-10);
        CHECK(v >= lo - 1e-10);
    }
    Vec r = apply_operator(p, u);
    for (double v : r) CHECK(std::abs(v) <= 1e-9);
}

TEST_CASE("dominant metric cross terms on a coarse grid need refinement") {
    GridProblem p;
    p.dim = 2;
    p.nodes = {9, 9};
    p.reaction = 1.0;
    p.metric = [](const Vec&) {
        Mat g = identity(2);
        g[0][1] = g[1][0] = 0.9;  // strong off-diagonal coupling
        return g;
    };
    p.boundary = [](const Vec&) { return 1.0; };
    CHECK_THROWS_AS(dirichlet_solve(p), RefinementNeeded);
}

TEST_CASE("supersolution comparison") {
    GridProblem p = cosh1d_problem(401);
    Vec u = dirichlet_solve(p);

    // the solution itself: margin ~ 0
    ComparisonResult self = supersolution_compare(p, u, 1e-9);
    CHECK(self.precondition_ok);
    CHECK(self.holds);
    CHECK(std::abs(self.margin) <= 1e-10);

    // solution plus a positive constant stays a supersolution; against the
    // problem's own solution the margin equals that constant, against the
    // solve with F's boundary values the margin closes at the boundary
    Vec up = u;
    for (double& v : up) v += 0.35;
    ComparisonResult shifted = supersolution_compare(p, up, 1e-9);
    CHECK(shifted.precondition_ok);
    CHECK(shifted.holds);
    CHECK(shifted.margin >= -1e-10);
    CHECK(shifted.boundary_dominates);
    CHECK(shifted.phi_margin == doctest::Approx(0.35).epsilon(1e-8));

    // subtracting an interior bump violates the precondition; reported
    // distinctly, not as a comparison failure
    Vec bad = u;
    for (int i = 0; i < 401; ++i) {
        double x = p.node_coord(i)[0];
        bad[i] -= 0.2 * std::exp(-40.0 * (x - 0.5) * (x - 0.5));
    }
    ComparisonResult violated = supersolution_compare(bad != u ? p : p, bad, 1e-9);
    CHECK(!violated.precondition_ok);
}

TEST_CASE("random supersolutions dominate their solutions") {
    Rng rng(23);
    GridProblem p = cosh1d_problem(201);
    for (int trial = 0; trial < 100; ++trial) {
        // D(base + const) <= 0 for any nonnegative constant shift of a
        // solution with nonnegative boundary data
        p.boundary = [&](const Vec& x) {
            return 0.5 + 0.4 * std::cos(6.28 * x[0]) + 0.05 * trial / 100.0;
        };
        Vec u = dirichlet_solve(p);
        Vec F = u;
        double shift = test::uniform(rng, 0.0, 1.0);
        for (double& v : F) v += shift;
        ComparisonResult r = supersolution_compare(p, F, 1e-9);
        CHECK(r.precondition_ok);
        CHECK(r.holds);
        CHECK(r.margin >= -1e-8);
    }
}
