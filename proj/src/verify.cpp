#include "slc/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "json.hpp"
#include "slc/curvature.hpp"
#include "slc/elliptic.hpp"
#include "slc/legendrian.hpp"
#include "slc/linearization.hpp"
#include "slc/revolution.hpp"

namespace slc {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point t0 = Clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }
};

SymMatrix random_posdef(std::mt19937_64& rng, int n, double lo = 0.1, double hi = 10.0) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vec eigs(n);
    for (auto& x : eigs) x = std::exp(std::log(lo) + unif(rng) * std::log(hi / lo));
    // random Givens rotations
    Mat Q = identity(n);
    for (int sweep = 0; sweep < 2 * n; ++sweep) {
        int i = (int)(unif(rng) * n) % n;
        int j = (i + 1 + (int)(unif(rng) * (n - 1)) % (n - 1)) % n;
        double a = unif(rng) * 2.0 * kPi;
        double c = std::cos(a), s = std::sin(a);
        for (int k = 0; k < n; ++k) {
            double qi = Q[k][i], qj = Q[k][j];
            Q[k][i] = c * qi - s * qj;
            Q[k][j] = s * qi + c * qj;
        }
    }
    Mat D(n, Vec(n, 0.0));
    for (int i = 0; i < n; ++i) D[i][i] = eigs[i];
    return SymMatrix(matmul(transpose(Q), matmul(D, Q)));
}

// ---- criterion 1 ----------------------------------------------------------
CheckResult check_inversion(std::uint64_t seed, double tol_scale) {
    Timer timer;
    CheckResult r;
    r.name = "01-inversion-consistency";
    r.suite = "curvature";
    r.tolerance = 1e-11 * tol_scale;
    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    for (int n : {2, 3, 4, 5}) {
        for (int trial = 0; trial < 10000; ++trial) {
            Vec eigs(n);
            for (auto& x : eigs) x = std::exp(std::log(0.1) + unif(rng) * std::log(100.0));
            std::sort(eigs.begin(), eigs.end());
            double theta = 0.1 + unif(rng) * (n * kPi / 2.0 - 0.2);
            double rr = r_theta(eigs, theta);
            worst = std::max(worst, std::abs(sl_value(eigs, rr) - theta));
        }
    }
    r.measured = worst;
    r.runtime_ms = timer.ms();
    r.pass = worst <= r.tolerance && r.runtime_ms < 2000.0;
    r.note = "40000 samples across n in {2,3,4,5}";
    return r;
}

// ---- criteria 2 and 3 -----------------------------------------------------
CheckResult check_gauss_identity(std::uint64_t seed, double tol_scale, int n) {
    Timer timer;
    CheckResult r;
    r.name = n == 2 ? "02-gaussian-curvature-identity" : "03-mean-curvature-ratio-identity";
    r.suite = "curvature";
    r.tolerance = 1e-10 * tol_scale;
    std::mt19937_64 rng(seed + n);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        SymMatrix A = random_posdef(rng, n);
        GaussianIdentity g = gaussian_identities(A);
        worst = std::max(worst, std::abs(n == 2 ? g.k_check : g.kh_check));
    }
    r.measured = worst;
    r.runtime_ms = timer.ms();
    r.pass = worst <= r.tolerance;
    if (n == 3) r.note = "mean curvature taken as the unnormalized trace";
    return r;
}

// ---- criterion 4 ----------------------------------------------------------
CheckResult check_special_angle_polynomial(std::uint64_t seed, double tol_scale) {
    Timer timer;
    CheckResult r;
    r.name = "04-special-angle-polynomial";
    r.suite = "curvature";
    r.tolerance = 1e-9 * tol_scale;
    std::mt19937_64 rng(seed + 4);
    double worst = 0.0;
    for (int n : {2, 3, 4, 5}) {
        for (int trial = 0; trial < 1000; ++trial) {
            SymMatrix A = random_posdef(rng, n);
            worst = std::max(worst,
                             std::abs(special_angle_root(A) - r_theta(A, (n - 1) * kPi / 2.0)));
        }
    }
    r.measured = worst;
    r.runtime_ms = timer.ms();
    r.pass = worst <= r.tolerance;
    r.note =
        "uses the sign-corrected polynomial sum_j (-1)^j r^(n-2j) chi_(n-2j); the commonly quoted "
        "display chi_n - r^2 chi_(n-2) + ... is inconsistent with the arctangent-sum definition "
        "(for the 3x3 identity it would give r^2 = 1/3 instead of 3); for n >= 4 the largest "
        "positive root is the relevant one";
    return r;
}

// ---- criterion 5 ----------------------------------------------------------
CheckResult check_equidistant_formula(double tol_scale) {
    Timer timer;
    CheckResult r;
    r.name = "05-equidistant-angle-formula";
    r.suite = "lift";
    r.tolerance = 1e-6 * tol_scale;
    double worst = 0.0;
    for (int n : {2, 3}) {
        Model h = hyperbolic_model(n + 1, -1.0);
        for (double R : {0.1, 0.5, 1.0, 2.0}) {
            ImmersionPatch patch = make_family({FamilyKind::equidistant, R}, h);
            Vec u = patch.domain_center();
            for (double rho : {0.5, 1.0, 2.0}) {
                double sl = sl_of_patch(patch, u, rho);  // finite-difference path
                worst = std::max(worst, std::abs(sl - n * std::atan(rho * std::tanh(R))));
            }
        }
    }
    r.measured = worst;
    r.runtime_ms = timer.ms();
    r.pass = worst <= r.tolerance && r.runtime_ms < 5000.0;
    return r;
}

// ---- criterion 6 ----------------------------------------------------------
CheckResult check_lift_structure(double tol_scale) {
    Timer timer;
    CheckResult r;
    r.name = "06-gauss-lift-structure";
    r.suite = "lift";
    r.tolerance = 1e-8 * tol_scale;
    double worst = 0.0;
    double worst_mgram = 0.0;
    Model e3 = euclidean_model(3), e4 = euclidean_model(4);
    Model h3 = hyperbolic_model(3, -1.0), h4 = hyperbolic_model(4, -1.0);

    auto visit = [&](const ImmersionPatch& patch, double rho, double theta) {
        Vec u = patch.domain_center();
        LiftFrame lf = gauss_lift_exact(patch, u, rho);
        LegendrianReport rep = legendrian_report(lf, theta);
        worst = std::max({worst, rep.contact, rep.symplectic, rep.special_angle});
        worst_mgram = std::min(worst_mgram, rep.positivity_min);
    };
    for (double R : {0.3, 1.0, 2.0}) {
        for (double rho : {0.5, 1.0, 2.0}) {
            visit(make_family({FamilyKind::euclidean_sphere, R}, e3), rho, 2 * std::atan(rho / R));
            visit(make_family({FamilyKind::euclidean_sphere, R}, e4), rho, 3 * std::atan(rho / R));
            visit(make_family({FamilyKind::equidistant, R}, h3), rho,
                  2 * std::atan(rho * std::tanh(R)));
            visit(make_family({FamilyKind::geodesic_sphere, R}, h3), rho,
                  2 * std::atan(rho / std::tanh(R)));
            visit(make_family({FamilyKind::tube, R}, h4), rho,
                  2 * std::atan(rho / std::tanh(R)) + std::atan(rho * std::tanh(R)));
        }
    }
    // converse convexity detection on the orientation-flipped sphere
    ImmersionPatch flipped = make_family({FamilyKind::euclidean_sphere, 1.0}, e3);
    flipped.orientation = -1.0;
    LiftFrame lf = gauss_lift_exact(flipped, flipped.domain_center(), 1.0);
    double flipped_min = legendrian_report(lf, kPi / 2.0).positivity_min;

    r.measured = std::max(worst, -worst_mgram);
    r.runtime_ms = timer.ms();
    r.pass = worst <= r.tolerance && worst_mgram >= -1e-10 * tol_scale && flipped_min < 0.0;
    r.note = "flipped-sphere m-Gram minimum " + std::to_string(flipped_min);
    return r;
}

// ---- criterion 7 ----------------------------------------------------------
CheckResult check_lifted_metric(std::uint64_t seed, double tol_scale) {
    Timer timer;
    CheckResult r;
    r.name = "07-lifted-metric-identity";
    r.suite = "lift";
    r.tolerance = 1e-8 * tol_scale;
    double worst = 0.0;
    Model e3 = euclidean_model(3);
    Model h3 = hyperbolic_model(3, -1.0), h4 = hyperbolic_model(4, -1.0);
    for (double R : {0.3, 1.0, 2.0}) {
        for (double rho : {0.5, 1.0, 2.0}) {
            worst = std::max(worst,
                             lifted_metric_check(make_family({FamilyKind::euclidean_sphere, R}, e3),
                                                 make_family({FamilyKind::euclidean_sphere, R}, e3)
                                                     .domain_center(),
                                                 rho)
                                 .residual);
            ImmersionPatch eq = make_family({FamilyKind::equidistant, R}, h3);
            worst = std::max(worst, lifted_metric_check(eq, eq.domain_center(), rho).residual);
            ImmersionPatch tube = make_family({FamilyKind::tube, R}, h4);
            worst = std::max(worst, lifted_metric_check(tube, tube.domain_center(), rho).residual);
        }
    }
    // 100 random perturbed-metric patches through the finite-difference path
    std::mt19937_64 rng(seed + 7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        bool hyp = trial % 2 == 0;
        BumpSpec bump;
        bump.center = Vec(3, 0.0);
        for (auto& c : bump.center) c = -0.3 + 0.6 * unif(rng);
        bump.width = 0.8 + unif(rng);
        Model base = hyp ? hyperbolic_model(3, -1.0) : euclidean_model(3);
        Model pert = perturbed_model(base, -0.05 + 0.1 * unif(rng), bump);
        FamilySpec fam{hyp ? FamilyKind::equidistant : FamilyKind::euclidean_sphere,
                       0.5 + 1.2 * unif(rng)};
        ImmersionPatch patch = make_family(fam, pert);
        Vec u = patch.domain_center();
        for (int k = 0; k < patch.n; ++k) u[k] += -0.15 + 0.3 * unif(rng);
        double rho = 0.5 + 1.5 * unif(rng);
        worst = std::max(worst, lifted_metric_check(patch, u, rho, /*exact=*/false).residual);
    }
    r.measured = worst;
    r.runtime_ms = timer.ms();
    r.pass = worst <= r.tolerance;
    return r;
}

// ---- criterion 8 ----------------------------------------------------------
CheckResult check_revolution(double tol_scale) {
    Timer timer;
    CheckResult r;
    r.name = "08-revolution-ode-residual";
    r.suite = "revolution";
    r.tolerance = 1e-6 * tol_scale;
    double worst = 0.0;

    {  // euclidean sphere, one curvature radius of arclength
        OdeParams p;
        p.n = 2;
        p.rho = 1.0;
        p.theta = kPi / 2.0;
        p.system = RevolutionSystem::euclidean;
        ProfileState init = family_initial_state(FamilyKind::euclidean_sphere, 1.0, p);
        ProfileRun run = integrate_profile(init, p, 1.0);
        worst = std::max(worst, profile_residual(run, p));
    }
    for (int n : {2, 3}) {  // equidistant, one curvature radius 1/tanh(R)
        OdeParams p;
        p.n = n;
        p.rho = 1.0;
        double R = 0.6;
        p.theta = closed_form_sl(FamilyKind::equidistant, R, p.rho, n, -1.0);
        p.system = RevolutionSystem::hyperbolic_equidistant;
        ProfileState init = family_initial_state(FamilyKind::equidistant, R, p);
        ProfileRun run = integrate_profile(init, p, 1.0 / std::tanh(R));
        worst = std::max(worst, profile_residual(run, p));
    }
    {  // hyperbolic geodesic sphere, one curvature radius tanh(R)
        OdeParams p;
        p.n = 2;
        p.rho = 1.0;
        double R = 0.8;
        p.theta = closed_form_sl(FamilyKind::geodesic_sphere, R, p.rho, p.n, -1.0);
        p.system = RevolutionSystem::hyperbolic_tube;
        ProfileState init = family_initial_state(FamilyKind::geodesic_sphere, R, p);
        ProfileRun run = integrate_profile(init, p, std::tanh(R));
        worst = std::max(worst, profile_residual(run, p));
    }
    r.measured = worst;
    r.runtime_ms = timer.ms();
    r.pass = worst <= r.tolerance && r.runtime_ms < 10000.0;
    r.note = "reconstruction by the immersion machinery, not integrator state";
    return r;
}

// ---- criterion 9 ----------------------------------------------------------
CheckResult check_linearization(double tol_scale) {
    Timer timer;
    CheckResult r;
    r.name = "09-linearization-agreement";
    r.suite = "linearize";
    r.tolerance = 1e-5 * tol_scale;
    double worst = 0.0, worst_dA = 0.0;
    double ratio_lo = 1e300, ratio_hi = 0.0;

    Model e3 = euclidean_model(3);
    Model h3 = hyperbolic_model(3, -1.0);
    std::vector<std::pair<ImmersionPatch, double>> cases;
    cases.push_back({make_family({FamilyKind::equidistant, 0.7}, h3), 1.0});
    cases.push_back({make_family({FamilyKind::geodesic_sphere, 0.9}, h3), 1.3});
    cases.push_back({make_family({FamilyKind::euclidean_sphere, 1.4}, e3), 0.8});

    for (auto& [patch, rho] : cases) {
        Vec u = patch.domain_center();
        u[0] += 0.15;
        double theta = sl_of_patch_exact(patch, u, rho);
        for (int which = 0; which < 2; ++which) {
            DeformationField field =
                which == 0 ? make_deformation(patch,
                                              [](const auto& uu) {
                                                  using S = typename std::decay_t<
                                                      decltype(uu)>::value_type;
                                                  (void)uu;
                                                  return S(1.0);
                                              })
                           : make_deformation(patch, [](const auto& uu) {
                                 return sin(uu[0]) * cos(uu[1] * 0.5);
                             });
            LinearizedSample s = linearized_L(field, u, rho, theta);
            double fd1 = fd_variation(field, u, rho, theta, 1e-3);
            double fd2 = fd_variation(field, u, rho, theta, 5e-4);
            worst = std::max(worst, std::abs(fd1 - s.L_value));
            double ratio = std::abs(fd1 - s.L_value) / std::abs(fd2 - s.L_value);
            ratio_lo = std::min(ratio_lo, ratio);
            ratio_hi = std::max(ratio_hi, ratio);
            worst_dA = std::max(worst_dA, shape_variation_residual(field, u, 1e-3));
        }
    }
    r.measured = std::max(worst, worst_dA);
    r.runtime_ms = timer.ms();
    r.pass = worst <= r.tolerance && worst_dA <= r.tolerance && ratio_lo >= 3.5 && ratio_hi <= 4.5;
    r.note = "Richardson ratios in [" + std::to_string(ratio_lo) + ", " + std::to_string(ratio_hi) +
             "], shape-variation identity residual " + std::to_string(worst_dA);
    return r;
}

// ---- criterion 10 ---------------------------------------------------------
CheckResult check_j_scan(std::uint64_t seed, double tol_scale) {
    Timer timer;
    CheckResult r;
    r.name = "10-j-nonnegativity-scan";
    r.suite = "linearize";
    r.tolerance = 1e-10 * tol_scale;
    double global_min = 1e300;
    double valid_min = 1e300;   // combinations where the claim actually holds
    double defect_min = 1e300;  // n = 3, rho = 1: provably reaches negative values
    std::string detail;
    for (int n : {2, 3}) {
        for (double rho : {1.0, 2.0}) {
            double theta = std::min((n - 1) * kPi / 2.0, n * std::atan(rho) * 0.999);
            JScanResult scan = j_positivity_scan(1.0, rho, theta, n, 10000, seed + 10 + n);
            global_min = std::min(global_min, scan.min_J);
            if (n == 3 && rho == 1.0)
                defect_min = scan.min_J;
            else
                valid_min = std::min(valid_min, scan.min_J);
            detail += "(n=" + std::to_string(n) + ",rho=" + std::to_string(rho) +
                      "): min J = " + std::to_string(scan.min_J) + "; ";
        }
    }
    // hypothesis sharpness probe past the bound
    JScanResult probe = j_positivity_scan(1.0, 1.0, 2.0 * std::atan(1.0) + 0.2, 2, 2000, seed + 20);
    bool violation_found = probe.min_J < 0.0;

    r.measured = global_min;
    r.runtime_ms = timer.ms();
    r.pass = global_min >= -r.tolerance && violation_found;
    // Reality matching the documented analysis: the three valid
    // combinations nonnegative, the defective one strictly negative.
    r.expected_failure =
        !r.pass && valid_min >= -r.tolerance && defect_min < -1e-3 && violation_found;
    r.note = detail + "past-bound probe min J = " + std::to_string(probe.min_J) +
             " (violation expected). Known failing combination n=3, rho=1: theta = 2.3538 sits "
             "below the geometric range (n-1)pi/2, and there the nonnegativity claim provably "
             "fails: two-large-one-small spectra drive J toward 2 cos(theta) + 1 < 0 once theta "
             "exceeds 2pi/3, so this sub-case is reported as an expected failure";
    return r;
}

// ---- criterion 11 ---------------------------------------------------------
CheckResult check_continuation(double tol_scale) {
    Timer timer;
    CheckResult r;
    r.name = "11-metric-continuation";
    r.suite = "linearize";
    r.tolerance = 1e-8 * tol_scale;
    ContinuationParams params;
    params.n = 2;
    params.R = 0.5;
    params.rho = 1.0;
    params.eps_max = 0.01;
    params.path_steps = 5;
    params.grid = 201;
    ContinuationResult res = newton_continuation(params);
    double worst_res = 0.0;
    int worst_iters = 0;
    bool all_conv = res.ok;
    for (auto& s : res.steps) {
        worst_res = std::max(worst_res, s.residual);
        worst_iters = std::max(worst_iters, s.newton_iters);
        all_conv = all_conv && s.converged;
    }
    r.measured = worst_res;
    r.runtime_ms = timer.ms();
    r.pass = all_conv && worst_iters <= 5 && worst_res <= r.tolerance &&
             res.round_trip_f_norm <= 1e-6 * tol_scale && r.runtime_ms < 10000.0;
    r.note = "max Newton iterations " + std::to_string(worst_iters) + ", round-trip sup norm " +
             std::to_string(res.round_trip_f_norm);
    return r;
}

// ---- criterion 12 ---------------------------------------------------------
CheckResult check_degeneration(double tol_scale) {
    Timer timer;
    CheckResult r;
    r.name = "12-tube-degeneration";
    r.suite = "revolution";
    r.tolerance = 1e-8 * tol_scale;
    double worst = 0.0;
    bool monotone = true;
    double closed_form_dev = 0.0;
    for (int n : {2, 3}) {
        Vec radii;
        for (int m = 0; m <= 8; ++m) radii.push_back(std::pow(2.0, -m));
        auto fam = degeneration_family(n, radii);
        for (std::size_t i = 0; i < fam.size(); ++i) {
            worst = std::max(worst, fam[i].sl_residual);
            if (i > 0) {
                monotone = monotone && fam[i].f_tau < fam[i - 1].f_tau &&
                           fam[i].min_horizontal_sv < fam[i - 1].min_horizontal_sv;
            }
            if (n == 3)
                closed_form_dev = std::max(
                    closed_form_dev, std::abs(fam[i].rho * fam[i].rho -
                                              (2.0 + std::tanh(fam[i].R) * std::tanh(fam[i].R))));
        }
    }
    r.measured = worst;
    r.runtime_ms = timer.ms();
    r.pass = worst <= r.tolerance && monotone && closed_form_dev <= 1e-10 * tol_scale;
    r.note = "n=3 closed form rho^2 = 2 + tanh^2 R deviation " + std::to_string(closed_form_dev);
    return r;
}

// ---- criterion 13 ---------------------------------------------------------
CheckResult check_dirichlet(std::uint64_t seed, double tol_scale) {
    Timer timer;
    CheckResult r;
    r.name = "13-dirichlet-benchmark";
    r.suite = "elliptic";
    r.tolerance = 1e-6 * tol_scale;

    auto err = [](int nodes) {
        GridProblem p = cosh1d_problem(nodes);
        Vec u = dirichlet_solve(p);
        double worst = 0.0;
        for (int i = 0; i < nodes; ++i)
            worst = std::max(worst, std::abs(u[i] - cosh1d_exact(p.node_coord(i)[0])));
        return worst;
    };
    double e1001 = err(1001);
    double ratio = err(251) / err(501);

    std::mt19937_64 rng(seed + 13);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst_margin = 1e300;
    GridProblem p = cosh1d_problem(201);
    for (int trial = 0; trial < 100; ++trial) {
        double a = unif(rng), b = unif(rng);
        p.boundary = [a, b](const Vec& x) { return 0.2 + a + (b - a) * x[0]; };
        Vec u = dirichlet_solve(p);
        Vec F = u;
        double shift = unif(rng);
        for (double& v : F) v += shift;
        ComparisonResult cr = supersolution_compare(p, F, 1e-9);
        if (!cr.precondition_ok) worst_margin = -1e300;
        worst_margin = std::min(worst_margin, cr.margin);
    }
    r.measured = e1001;
    r.runtime_ms = timer.ms();
    r.pass = e1001 <= r.tolerance && ratio >= 3.5 && ratio <= 4.5 && worst_margin >= -1e-8;
    r.note = "refinement ratio " + std::to_string(ratio) + ", worst comparison margin " +
             std::to_string(worst_margin);
    return r;
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed, double tol_scale) {
    std::vector<CheckResult> out;
    auto want = [&](const std::string& s) { return suite == "all" || suite == s; };

    if (want("curvature")) {
        out.push_back(check_inversion(seed, tol_scale));
        out.push_back(check_gauss_identity(seed, tol_scale, 2));
        out.push_back(check_gauss_identity(seed, tol_scale, 3));
        out.push_back(check_special_angle_polynomial(seed, tol_scale));
    }
    if (want("lift")) {
        out.push_back(check_equidistant_formula(tol_scale));
        out.push_back(check_lift_structure(tol_scale));
        out.push_back(check_lifted_metric(seed, tol_scale));
    }
    if (want("revolution")) {
        out.push_back(check_revolution(tol_scale));
        out.push_back(check_degeneration(tol_scale));
    }
    if (want("linearize")) {
        out.push_back(check_linearization(tol_scale));
        out.push_back(check_j_scan(seed, tol_scale));
        out.push_back(check_continuation(tol_scale));
    }
    if (want("elliptic")) {
        out.push_back(check_dirichlet(seed, tol_scale));
    }
    if (out.empty()) throw std::invalid_argument("run_suite: unknown suite " + suite);
    return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
    for (auto& c : checks)
        if (!c.pass && !c.expected_failure) return false;
    return true;
}

bool all_pass_strict(const std::vector<CheckResult>& checks) {
    for (auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string report_to_json(const std::vector<CheckResult>& checks, std::uint64_t seed,
                           bool include_timings) {
    nlohmann::ordered_json j;
    j["schema_version"] = "1.0";
    j["seed"] = seed;
    j["pass"] = all_pass(checks);
    j["pass_strict"] = all_pass_strict(checks);
    int expected = 0;
    for (auto& c : checks) expected += c.expected_failure ? 1 : 0;
    j["expected_failures"] = expected;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    double total_ms = 0.0;
    for (auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["suite"] = c.suite;
        e["measured"] = c.measured;
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        if (c.expected_failure) e["expected_failure"] = true;
        if (!c.note.empty()) e["note"] = c.note;
        if (include_timings) e["runtime_ms"] = c.runtime_ms;
        total_ms += c.runtime_ms;
        arr.push_back(e);
    }
    j["checks"] = arr;
    if (include_timings) j["total_runtime_ms"] = total_ms;
    return j.dump(2);
}

}  // namespace slc
