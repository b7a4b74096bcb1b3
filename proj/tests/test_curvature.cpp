#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slc/curvature.hpp"
#include "test_util.hpp"

using namespace slc;
using test::Rng;

namespace {
constexpr double kPi = 3.14159265358979323846;

double bisect_r(const SymMatrix& A, double theta) {
    // Brute-force oracle: plain bisection on the angle, no Newton.
    double lo = 1e-9, hi = 1.0;
    while (sl_value(A, hi) < theta) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (sl_value(A, mid) < theta ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("sl_value closed cases") {
    CHECK(sl_value(SymMatrix::zero(3), 1.7) == doctest::Approx(0.0));
    for (int n : {2, 3, 4})
        CHECK(sl_value(SymMatrix::ident(n), 1.0) == doctest::Approx(n * kPi / 4.0).epsilon(1e-14));
    // atan(2) + atan(1/2) = pi/2 since the tangents multiply to 1.
    CHECK(sl_value(SymMatrix::diag({2.0, 0.5}), 1.0) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
}

TEST_CASE("r_theta closed cases and residual") {
    CHECK(r_theta(SymMatrix::ident(2), kPi / 2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r_theta(SymMatrix::ident(3), kPi) == doctest::Approx(std::tan(kPi / 3.0)).epsilon(1e-13));
    CHECK(r_theta(SymMatrix::diag({2.0, 0.5}), kPi / 2.0) == doctest::Approx(1.0).epsilon(1e-13));

    // cross-check the Newton-polished result against the bisection oracle
    SymMatrix A = SymMatrix::diag({2.0, 0.5});
    CHECK(r_theta(A, kPi / 2.0) == doctest::Approx(bisect_r(A, kPi / 2.0)).epsilon(1e-10));

    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + (int)(test::uniform(rng, 0, 1) * 4);
        SymMatrix P = test::random_posdef(rng, n);
        double theta = test::uniform(rng, 0.1, n * kPi / 2.0 - 0.1);
        double r = r_theta(P, theta);
        CHECK(std::abs(sl_value(P, r) - theta) <= 1e-12);
    }
}

TEST_CASE("r_theta domain errors") {
    CHECK_THROWS_AS(r_theta(SymMatrix::diag({-1.0, 2.0}), 1.0), std::domain_error);
    CHECK_THROWS_AS(r_theta(SymMatrix::ident(2), 0.0), std::domain_error);
    CHECK_THROWS_AS(r_theta(SymMatrix::ident(2), kPi + 0.1), std::domain_error);
}

TEST_CASE("weingarten residual vanishes exactly at the matching angle") {
    SymMatrix I2 = SymMatrix::ident(2);
    CHECK(weingarten_residual(I2, 1.0, kPi / 2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(weingarten_residual(I2, 1.0, kPi / 4.0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));

    Rng rng(67);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + (int)(test::uniform(rng, 0, 1) * 4);
        SymMatrix P = test::random_posdef(rng, n);
        double theta = test::uniform(rng, 0.1, n * kPi / 2.0 - 0.1);
        double rho = r_theta(P, theta);
        double scale = std::sqrt(test::det_I_plus_r2A2(P, rho));
        CHECK(std::abs(weingarten_residual(P, rho, theta)) <= 1e-10 * scale);

        double sl = sl_value(P, rho);
        double expected = -scale * std::sin(sl - (theta + 0.3));
        CHECK(weingarten_residual(P, rho, theta + 0.3) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("poly_real_roots recovers factored roots") {
    // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
    Vec roots = poly_real_roots({-6.0, 11.0, -6.0, 1.0});
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(roots[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(roots[2] == doctest::Approx(3.0).epsilon(1e-12));
    // double root: (x-2)^2
    Vec dbl = poly_real_roots({4.0, -4.0, 1.0});
    REQUIRE(!dbl.empty());
    CHECK(dbl.front() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("special_angle_root closed cases") {
    CHECK(special_angle_root(SymMatrix::ident(3)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(special_angle_root(SymMatrix::diag({2.0, 0.5})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(special_angle_root(SymMatrix::diag({1.0, 2.0, 3.0})) == doctest::Approx(1.0).epsilon(1e-12));
    // n = 4: the polynomial has two positive roots; the angle crossing is
    // the larger, tan(3 pi / 8) = 1 + sqrt(2).
    CHECK(special_angle_root(SymMatrix::ident(4)) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(special_angle_root(SymMatrix::diag({-1.0, 1.0, 1.0})), std::domain_error);
}

TEST_CASE("special_angle_root agrees with r_theta at theta = (n-1)pi/2") {
    Rng rng(4242);
    for (int n : {2, 3, 4, 5}) {
        for (int trial = 0; trial < 250; ++trial) {
            SymMatrix P = test::random_posdef(rng, n);
            double via_poly = special_angle_root(P);
            double via_angle = r_theta(P, (n - 1) * kPi / 2.0);
            CHECK(std::abs(via_poly - via_angle) <= 1e-9);
        }
    }
}

TEST_CASE("gaussian identities in dimensions 2 and 3") {
    CHECK(gaussian_identities(SymMatrix::diag({2.0, 0.5})).k_check == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(gaussian_identities(SymMatrix::ident(3)).kh_check == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(gaussian_identities(SymMatrix::diag({1.0, 2.0, 3.0})).kh_check ==
          doctest::Approx(0.0).epsilon(1e-10));
    CHECK_THROWS_AS(gaussian_identities(SymMatrix::ident(4)), std::domain_error);

    Rng rng(1001);
    for (int trial = 0; trial < 100; ++trial) {
        CHECK(std::abs(gaussian_identities(test::random_posdef(rng, 2)).k_check) <= 1e-10);
        CHECK(std::abs(gaussian_identities(test::random_posdef(rng, 3)).kh_check) <= 1e-10);
    }
}

TEST_CASE("monotonicity, scaling, conjugation invariance, limits") {
    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + (int)(test::uniform(rng, 0, 1) * 3);
        SymMatrix P = test::random_posdef(rng, n);
        double r1 = test::uniform(rng, 0.05, 2.0);
        double r2 = r1 + test::uniform(rng, 0.05, 2.0);
        CHECK(sl_value(P, r1) < sl_value(P, r2));

        double theta = test::uniform(rng, 0.1, n * kPi / 2.0 - 0.1);
        double s = test::uniform(rng, 0.3, 3.0);
        CHECK(r_theta(P.scaled(s), theta) == doctest::Approx(r_theta(P, theta) / s).epsilon(1e-10));

        Mat Q = test::random_orthogonal(rng, n);
        SymMatrix conj = SymMatrix(matmul(transpose(Q), matmul(P.entries(), Q)));
        double r = test::uniform(rng, 0.3, 2.0);
        CHECK(sl_value(conj, r) == doctest::Approx(sl_value(P, r)).epsilon(1e-12));

        CHECK(std::abs(sl_value(P, 1e-8)) <= 1e-6);
        CHECK(std::abs(sl_value(P, 1e8) - n * kPi / 2.0) <= 1e-6);
    }
}
