// Command-line surface over the library: curvature evaluation/inversion,
// revolution profiles, lift verification, linearization, metric
// continuation, tube degeneration families, the Dirichlet solver, and the
// verification suites. JSON on stdout; CSV artifacts on request. Exit
// codes: 0 success or clean stop, 1 verification failure, 2 usage/domain
// error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "slc/curvature.hpp"
#include "slc/elliptic.hpp"
#include "slc/legendrian.hpp"
#include "slc/linearization.hpp"
#include "slc/revolution.hpp"
#include "slc/verify.hpp"

using nlohmann::ordered_json;
using namespace slc;

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Angles accepted as symbolic multiples of pi ("pi", "3pi/4", "0.5pi",
/// "pi/2") or plain decimals, avoiding decimal drift at special values.
double parse_angle(const std::string& text) {
    auto pos = text.find("pi");
    if (pos == std::string::npos) return std::stod(text);
    double pre = 1.0, den = 1.0;
    std::string head = text.substr(0, pos);
    std::string tail = text.substr(pos + 2);
    if (!head.empty()) pre = std::stod(head);
    if (!tail.empty()) {
        if (tail[0] != '/') throw std::invalid_argument("bad angle: " + text);
        den = std::stod(tail.substr(1));
    }
    return pre * kPi / den;
}

Vec parse_eigs(const std::string& text) {
    Vec out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::stod(cur));
    if (out.empty()) throw std::invalid_argument("empty eigenvalue list");
    return out;
}

/// Atomic file write: temp then rename, so partial artifacts never appear
/// under the declared path.
void write_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        f << content;
    }
    std::rename(tmp.c_str(), path.c_str());
}

void emit(const ordered_json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

struct FamilyArgs {
    std::string kind = "equidistant";
    double R = 0.5;
    std::string model_json;
    double orientation = 1.0;
};

ImmersionPatch build_family_patch(const FamilyArgs& args, int n) {
    FamilyKind kind;
    Model model;
    if (args.kind == "euclidean-sphere") {
        kind = FamilyKind::euclidean_sphere;
        model = euclidean_model(n + 1);
    } else if (args.kind == "geodesic-sphere") {
        kind = FamilyKind::geodesic_sphere;
        model = hyperbolic_model(n + 1, -1.0);
    } else if (args.kind == "equidistant") {
        kind = FamilyKind::equidistant;
        model = hyperbolic_model(n + 1, -1.0);
    } else if (args.kind == "tube") {
        kind = FamilyKind::tube;
        model = hyperbolic_model(n + 1, -1.0);
    } else {
        throw std::invalid_argument("unknown family kind " + args.kind);
    }
    if (!args.model_json.empty()) model = model_from_json(args.model_json);
    ImmersionPatch p = make_family({kind, args.R}, model);
    p.orientation = args.orientation;
    return p;
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"special Lagrangian curvature toolkit"};
    app.require_subcommand(1);

    std::string out_path;
    app.add_option("--out", out_path, "write the JSON report to this path (atomic)");

    // ---- invert ----
    auto* invert = app.add_subcommand("invert", "unique r with angle(A, r) = theta");
    std::string inv_eigs, inv_theta;
    invert->add_option("--eigs", inv_eigs, "eigenvalues, comma separated")->required();
    invert->add_option("--theta", inv_theta, "target angle (symbolic pi allowed)")->required();

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "curvature quantities of a spectrum");
    std::string ev_eigs;
    double ev_rho = 1.0;
    eval->add_option("--eigs", ev_eigs)->required();
    eval->add_option("--rho", ev_rho)->required();

    // ---- revolve ----
    auto* revolve = app.add_subcommand("revolve", "integrate a constant-angle revolution profile");
    int rv_n = 2;
    double rv_rho = 1.0, rv_R = 0.0, rv_smax = 0.0;
    std::string rv_theta, rv_family = "sphere-init", rv_csv;
    revolve->add_option("--n", rv_n)->required();
    revolve->add_option("--rho", rv_rho)->required();
    revolve->add_option("--theta", rv_theta);
    revolve->add_option("--R", rv_R);
    revolve->add_option("--smax", rv_smax);
    revolve->add_option("--family", rv_family,
                        "sphere-init | equidistant-init | geodesic-sphere-init | tube-init");
    revolve->add_option("--csv", rv_csv, "profile CSV path");

    // ---- lift-check ----
    auto* lift = app.add_subcommand("lift-check", "Legendrian structure residuals of a Gauss lift");
    FamilyArgs lc_fam;
    int lc_n = 2;
    double lc_rho = 1.0;
    std::string lc_theta, lc_patch_json;
    lift->add_option("--n", lc_n);
    lift->add_option("--family", lc_fam.kind);
    lift->add_option("--R", lc_fam.R);
    lift->add_option("--model", lc_fam.model_json, "model descriptor JSON");
    lift->add_option("--orientation", lc_fam.orientation);
    lift->add_option("--patch", lc_patch_json, "full patch descriptor JSON");
    lift->add_option("--rho", lc_rho)->required();
    lift->add_option("--theta", lc_theta, "target angle; family angle if omitted");
    double lc_tol = 1e-6;
    lift->add_option("--tol", lc_tol, "verticality tolerance");

    // ---- linearize ----
    auto* lin = app.add_subcommand("linearize", "variation operator vs finite differences");
    FamilyArgs ln_fam;
    int ln_n = 2;
    double ln_rho = 1.0, ln_tstep = 1e-3;
    std::string ln_f = "const";
    lin->add_option("--n", ln_n);
    lin->add_option("--family", ln_fam.kind);
    lin->add_option("--R", ln_fam.R);
    lin->add_option("--rho", ln_rho);
    lin->add_option("--f", ln_f, "const | mode");
    lin->add_option("--t-step", ln_tstep);

    // ---- continue ----
    auto* cont = app.add_subcommand("continue", "metric continuation of an equidistant");
    ContinuationParams cp;
    std::string ct_csv;
    cont->add_option("--n", cp.n);
    cont->add_option("--R", cp.R);
    cont->add_option("--rho", cp.rho);
    cont->add_option("--eps", cp.eps_max);
    cont->add_option("--steps", cp.path_steps);
    cont->add_option("--grid", cp.grid);
    cont->add_option("--csv", ct_csv, "final normal-field profile CSV");

    // ---- tube-family ----
    auto* tf = app.add_subcommand("tube-family", "constant-angle tube degeneration family");
    int tf_n = 3, tf_levels = 8;
    tf->add_option("--n", tf_n);
    tf->add_option("--levels", tf_levels);

    // ---- solve-dirichlet ----
    auto* sd = app.add_subcommand("solve-dirichlet", "finite-difference Dirichlet solve");
    std::string sd_preset = "cosh1d", sd_csv;
    int sd_nodes = 1001;
    sd->add_option("--preset", sd_preset, "cosh1d");
    sd->add_option("--nodes", sd_nodes);
    sd->add_option("--csv", sd_csv, "solution CSV path");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::string vf_suite = "all";
    std::uint64_t vf_seed = 7;
    double vf_tol_scale = 1.0;
    bool vf_timings = false;
    verify->add_option("--suite", vf_suite, "all|curvature|lift|revolution|linearize|elliptic");
    verify->add_option("--seed", vf_seed);
    verify->add_option("--tol-scale", vf_tol_scale, "scale all tolerances (0 forces failure)");
    verify->add_flag("--timings", vf_timings, "include runtimes (breaks byte determinism)");

    CLI11_PARSE(app, argc, argv);

    if (invert->parsed()) {
        return run_guarded([&] {
            Vec eigs = parse_eigs(inv_eigs);
            double theta = parse_angle(inv_theta);
            double r = r_theta(eigs, theta);
            ordered_json j;
            j["r"] = r;
            j["residual"] = std::abs(sl_value(eigs, r) - theta);
            emit(j, out_path);
            return 0;
        });
    }

    if (eval->parsed()) {
        return run_guarded([&] {
            Vec eigs = parse_eigs(ev_eigs);
            SymMatrix A = SymMatrix::diag(eigs);
            auto [mod, ang] = complex_det(A, ev_rho);
            Spectrum s = eigen_sym(A);
            ordered_json j;
            j["sl"] = sl_value(eigs, ev_rho);
            j["modulus"] = mod;
            j["angle"] = ang;
            j["chi"] = s.chi;
            emit(j, out_path);
            return 0;
        });
    }

    if (revolve->parsed()) {
        return run_guarded([&] {
            OdeParams p;
            p.n = rv_n;
            p.rho = rv_rho;
            FamilyKind kind;
            if (rv_family == "sphere-init") {
                kind = FamilyKind::euclidean_sphere;
                p.system = RevolutionSystem::euclidean;
            } else if (rv_family == "equidistant-init") {
                kind = FamilyKind::equidistant;
                p.system = RevolutionSystem::hyperbolic_equidistant;
            } else if (rv_family == "geodesic-sphere-init") {
                kind = FamilyKind::geodesic_sphere;
                p.system = RevolutionSystem::hyperbolic_tube;
            } else if (rv_family == "tube-init") {
                kind = FamilyKind::tube;
                p.system = RevolutionSystem::hyperbolic_tube;
            } else {
                throw std::invalid_argument("unknown family " + rv_family);
            }
            double c = p.system == RevolutionSystem::euclidean ? 0.0 : -1.0;
            double R = rv_R;
            if (!rv_theta.empty() && R <= 0.0) {
                // derive the starting radius from the requested angle
                double theta = parse_angle(rv_theta);
                double lo = 1e-8, hi = 1.0;
                auto angle_of = [&](double RR) { return closed_form_sl(kind, RR, p.rho, p.n, c); };
                bool increasing = angle_of(2e-8) < angle_of(1.0);
                while ((increasing ? angle_of(hi) < theta : angle_of(hi) > theta) && hi < 1e8)
                    hi *= 2.0;
                for (int it = 0; it < 200; ++it) {
                    double mid = 0.5 * (lo + hi);
                    ((increasing ? angle_of(mid) < theta : angle_of(mid) > theta) ? lo : hi) = mid;
                }
                R = 0.5 * (lo + hi);
                p.theta = theta;
            } else if (R > 0.0 && rv_theta.empty()) {
                p.theta = closed_form_sl(kind, R, p.rho, p.n, c);
            } else {
                throw std::invalid_argument("give exactly one of --theta or --R");
            }
            double smax = rv_smax;
            if (smax <= 0.0) {
                // one curvature radius of the starting family
                ProfileState st = family_initial_state(kind, R, p);
                ProfileDerivative d = profile_rhs(st, p);
                smax = 1.0 / std::max(std::abs(d.kappa_mer), std::abs(d.kappa_par));
            }
            ProfileState init = family_initial_state(kind, R, p);
            ProfileRun run = integrate_profile(init, p, smax);

            // per-sample residual for the CSV; reconstruction path
            Vec resid(run.samples.size(), 0.0);
            for (std::size_t i = 1; i + 1 < run.samples.size(); ++i) {
                ImmersionPatch patch = profile_sample_patch(run, i, p);
                Vec u(p.n, 0.9);
                u[0] = run.samples[i].s;
                resid[i] = std::abs(sl_of_patch(patch, u, p.rho) - p.theta);
            }
            if (run.samples.size() >= 3) {
                resid.front() = resid[1];
                resid.back() = resid[resid.size() - 2];
            }
            if (!rv_csv.empty()) {
                std::string csv = "s,r,z,phi,kappa_mer,kappa_par,sl_residual\n";
                char line[256];
                for (std::size_t i = 0; i < run.samples.size(); ++i) {
                    const auto& st = run.samples[i];
                    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.3e\n",
                                  st.s, st.r, st.z, st.phi, run.kappa_mer[i], run.kappa_par[i],
                                  resid[i]);
                    csv += line;
                }
                write_file(rv_csv, csv);
            }
            double worst = 0.0;
            for (double v : resid) worst = std::max(worst, v);
            ordered_json j;
            j["family"] = rv_family;
            j["R"] = R;
            j["theta"] = p.theta;
            j["samples"] = run.samples.size();
            j["s_end"] = run.samples.back().s;
            j["stop_reason"] = run.stop == StopReason::completed          ? "completed"
                               : run.stop == StopReason::axis_singularity ? "axis-singularity"
                                                                          : "curvature-blowup";
            j["max_sl_residual"] = worst;
            if (!rv_csv.empty()) j["csv"] = rv_csv;
            emit(j, out_path);
            return 0;
        });
    }

    if (lift->parsed()) {
        return run_guarded([&] {
            ImmersionPatch patch = lc_patch_json.empty() ? build_family_patch(lc_fam, lc_n)
                                                         : patch_from_json(lc_patch_json);
            Vec u = patch.domain_center();
            double theta;
            if (!lc_theta.empty()) {
                theta = parse_angle(lc_theta);
            } else {
                theta = sl_of_patch_exact(patch, u, lc_rho);
            }
            LiftFrame lf = gauss_lift_exact(patch, u, lc_rho);
            LegendrianReport rep = legendrian_report(lf, theta);
            LiftedMetricCheck met = lifted_metric_check(patch, u, lc_rho);
            ordered_json j;
            j["theta"] = theta;
            j["contact"] = rep.contact;
            j["symplectic"] = rep.symplectic;
            j["positivity_min"] = rep.positivity_min;
            j["special_angle"] = rep.special_angle;
            j["lifted_metric_residual"] = met.residual;
            j["verticality_order"] = verticality_order(lf, lc_tol);
            j["min_horizontal_sv"] = horizontal_singular_values(lf).front();
            j["f_tau"] = f_tau(lf.shape, lc_rho, 1.0 / (2.0 * patch.n));
            emit(j, out_path);
            return 0;
        });
    }

    if (lin->parsed()) {
        return run_guarded([&] {
            ImmersionPatch patch = build_family_patch(ln_fam, ln_n);
            Vec u = patch.domain_center();
            u[0] += 0.15;
            double theta = sl_of_patch_exact(patch, u, ln_rho);
            DeformationField field =
                ln_f == "const"
                    ? make_deformation(patch,
                                       [](const auto& uu) {
                                           using S =
                                               typename std::decay_t<decltype(uu)>::value_type;
                                           (void)uu;
                                           return S(1.0);
                                       })
                    : make_deformation(patch,
                                       [](const auto& uu) { return sin(uu[0]) * cos(uu[1] * 0.5); });
            LinearizedSample s = linearized_L(field, u, ln_rho, theta);
            double fd1 = fd_variation(field, u, ln_rho, theta, ln_tstep);
            double fd2 = fd_variation(field, u, ln_rho, theta, ln_tstep / 2.0);
            ordered_json j;
            j["theta"] = theta;
            j["L_value"] = s.L_value;
            j["fd"] = fd1;
            j["abs_diff"] = std::abs(fd1 - s.L_value);
            j["richardson_ratio"] = std::abs(fd1 - s.L_value) / std::abs(fd2 - s.L_value);
            j["J_value"] = s.J_value;
            j["dA_identity_residual"] = shape_variation_residual(field, u, ln_tstep);
            emit(j, out_path);
            return 0;
        });
    }

    if (cont->parsed()) {
        return run_guarded([&] {
            ContinuationResult res = newton_continuation(cp);
            ordered_json j;
            j["ok"] = res.ok;
            ordered_json steps = ordered_json::array();
            for (auto& s : res.steps) {
                ordered_json e;
                e["eps"] = s.eps;
                e["newton_iters"] = s.newton_iters;
                e["residual"] = s.residual;
                e["f_norm"] = s.f_norm;
                steps.push_back(e);
            }
            j["steps"] = steps;
            j["round_trip_f_norm"] = res.round_trip_f_norm;
            if (!ct_csv.empty()) {
                std::string csv = "t,f\n";
                char line[128];
                for (std::size_t i = 0; i < res.grid_t.size(); ++i) {
                    std::snprintf(line, sizeof line, "%.12g,%.12g\n", res.grid_t[i],
                                  res.final_f.empty() ? 0.0 : res.final_f[i]);
                    csv += line;
                }
                write_file(ct_csv, csv);
                j["csv"] = ct_csv;
            }
            emit(j, out_path);
            return res.ok ? 0 : 1;
        });
    }

    if (tf->parsed()) {
        return run_guarded([&] {
            Vec radii;
            for (int m = 0; m <= tf_levels; ++m) radii.push_back(std::pow(2.0, -m));
            auto fam = degeneration_family(tf_n, radii);
            ordered_json arr = ordered_json::array();
            bool dec_f = true, dec_sv = true;
            for (std::size_t i = 0; i < fam.size(); ++i) {
                ordered_json e;
                e["R"] = fam[i].R;
                e["rho"] = fam[i].rho;
                e["f_tau"] = fam[i].f_tau;
                e["min_horizontal_sv"] = fam[i].min_horizontal_sv;
                e["sl_residual"] = fam[i].sl_residual;
                e["verticality_order"] = fam[i].verticality;
                arr.push_back(e);
                if (i > 0) {
                    dec_f = dec_f && fam[i].f_tau < fam[i - 1].f_tau;
                    dec_sv = dec_sv && fam[i].min_horizontal_sv < fam[i - 1].min_horizontal_sv;
                }
            }
            ordered_json j;
            j["n"] = tf_n;
            j["members"] = arr;
            j["f_tau_strictly_decreasing"] = dec_f;
            j["min_horizontal_sv_strictly_decreasing"] = dec_sv;
            emit(j, out_path);
            return 0;
        });
    }

    if (sd->parsed()) {
        return run_guarded([&] {
            if (sd_preset != "cosh1d") throw std::invalid_argument("unknown preset " + sd_preset);
            GridProblem p = cosh1d_problem(sd_nodes);
            Vec u = dirichlet_solve(p);
            double worst = 0.0;
            for (int i = 0; i < sd_nodes; ++i)
                worst = std::max(worst, std::abs(u[i] - cosh1d_exact(p.node_coord(i)[0])));
            if (!sd_csv.empty()) {
                std::string csv = "x,u\n";
                char line[128];
                for (int i = 0; i < sd_nodes; ++i) {
                    std::snprintf(line, sizeof line, "%.12g,%.12g\n", p.node_coord(i)[0], u[i]);
                    csv += line;
                }
                write_file(sd_csv, csv);
            }
            ordered_json j;
            j["preset"] = sd_preset;
            j["nodes"] = sd_nodes;
            j["max_error"] = worst;
            if (!sd_csv.empty()) j["csv"] = sd_csv;
            emit(j, out_path);
            return 0;
        });
    }

    if (verify->parsed()) {
        return run_guarded([&] {
            auto checks = run_suite(vf_suite, vf_seed, vf_tol_scale);
            std::string report = report_to_json(checks, vf_seed, vf_timings);
            if (out_path.empty())
                std::cout << report << "\n";
            else
                write_file(out_path, report + "\n");
            return all_pass(checks) ? 0 : 1;
        });
    }

    return 2;
}
