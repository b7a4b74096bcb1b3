#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include "slc/linearization.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "slc/curvature.hpp"

namespace slc {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Lift a chart point of the hyperbolic graph chart to the hyperboloid,
/// together with a tangent vector. Generic over jets.
template <class S>
VecT<S> lift_point(double R0sq, const VecT<S>& u) {
    S q(R0sq);
    for (auto& ui : u) q += ui * ui;
    VecT<S> x(u.size() + 1);
    x[0] = sqrt(q);
    for (std::size_t i = 0; i < u.size(); ++i) x[i + 1] = u[i];
    return x;
}

template <class S>
VecT<S> lift_tangent(const VecT<S>& x_emb, const VecT<S>& w_chart) {
    // embedding tangent over chart tangent w at X = (x0, u): (u.w / x0, w)
    S num(0.0);
    for (std::size_t i = 0; i < w_chart.size(); ++i) num += x_emb[i + 1] * w_chart[i];
    VecT<S> out(w_chart.size() + 1);
    out[0] = num / x_emb[0];
    for (std::size_t i = 0; i < w_chart.size(); ++i) out[i + 1] = w_chart[i];
    return out;
}

}  // namespace

ImmersionPatch deform_patch(const DeformationField& field, double t) {
    const ImmersionPatch& base = field.patch;
    if (!base.map_j || !base.normal_j)
        throw std::logic_error("deform_patch: base patch needs jets and an exact normal field");

    Model space_form = base.model;
    space_form.pert.reset();

    ImmersionPatch out;
    out.model = base.model;
    out.n = base.n;
    out.domain = base.domain;
    out.orientation = base.orientation;
    out.normal_hint = base.normal_hint;  // valid sign reference for small t
    out.label = base.label + "-deformed";

    auto f_j = field.f_j;
    auto map_j = base.map_j;
    auto normal_j = base.normal_j;
    // Whether patch points live in the graph chart is a property of the
    // original model (perturbed models are chart-represented).
    const bool chart_hyp = base.model.kind == ModelKind::hyperbolic && base.model.chart_rep();

    auto deformed = [space_form, f_j, map_j, normal_j, t, chart_hyp](const VecT<Jet2>& u) -> VecT<Jet2> {
        VecT<Jet2> P = map_j(u);
        VecT<Jet2> N = normal_j(u);
        if (chart_hyp) {
            double R0sq = -1.0 / space_form.c;
            VecT<Jet2> X = lift_point(R0sq, P);
            VecT<Jet2> NX = lift_tangent(X, N);
            Jet2 nn = lorentz_dot(NX, NX);
            Jet2 scale = Jet2(t) * f_j(u) / sqrt(nn);
            VecT<Jet2> arg(NX.size());
            for (std::size_t i = 0; i < NX.size(); ++i) arg[i] = scale * NX[i];
            Model emb = space_form;
            emb.pert.reset();
            VecT<Jet2> Y = exp_map(emb, X, arg);
            return VecT<Jet2>(Y.begin() + 1, Y.end());
        }
        Jet2 nn = inner(space_form, P, N, N);
        Jet2 scale = Jet2(t) * f_j(u) / sqrt(nn);
        VecT<Jet2> arg(N.size());
        for (std::size_t i = 0; i < N.size(); ++i) arg[i] = scale * N[i];
        return exp_map(space_form, P, arg);
    };

    out.map_j = deformed;
    out.map_d = [deformed](const Vec& u) {
        VecT<Jet2> uj(u.begin(), u.end());
        VecT<Jet2> r = deformed(uj);
        Vec v(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) v[i] = r[i].v;
        return v;
    };
    return out;
}

namespace {

/// Christoffel symbols of the induced metric from tangent jets: the Gram
/// matrix is assembled in jet arithmetic, so its chart gradient is exact.
std::vector<Mat> induced_christoffels(const ImmersionPatch& patch, const Vec& u) {
    const Model& model = patch.model;
    const int n = patch.n;
    VecT<Jet2> uj(n);
    for (int k = 0; k < n; ++k) uj[k] = Jet2::variable(u[k], k, n);
    VecT<Jet2> Pj = patch.map_j(uj);
    int dim = (int)Pj.size();

    MatT<Jet2> tj(n, VecT<Jet2>(dim));
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < dim; ++a) {
            Jet2 e(Pj[a].grad(k), n);
            for (int l = 0; l < n; ++l) e.g[l] = Pj[a].hess(k, l);
            tj[k][a] = e;
        }
    MatT<Jet2> Gj = mat_zero<Jet2>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Gj[i][j] = inner(model, Pj, tj[i], tj[j]);

    Mat G(n, Vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G[i][j] = Gj[i][j].v;
    Mat Ginv = inverse(G);
    std::vector<Mat> gam(n, Mat(n, Vec(n, 0.0)));
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += Ginv[k][l] * (Gj[l][b].grad(a) + Gj[l][a].grad(b) - Gj[a][b].grad(l));
                gam[k][a][b] = 0.5 * s;
            }
    return gam;
}

/// Lowered curvature endomorphism Wlow[i][j] = <R(N, t_j)N, t_i>.
Mat curvature_w_low(const ImmersionPatch& patch, const FundamentalData& fd) {
    const Model& model = patch.model;
    const int n = patch.n;
    Mat Wlow = mat_zero<double>(n, n);
    for (int j = 0; j < n; ++j) {
        Vec Rj = model.pert ? riemann_exact(model, fd.point, fd.normal, fd.tangents[j], fd.normal)
                            : riemann(model, fd.point, fd.normal, fd.tangents[j], fd.normal);
        for (int i = 0; i < n; ++i) Wlow[i][j] = inner(model, fd.point, Rj, fd.tangents[i]);
    }
    // symmetric up to rounding
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            double s = 0.5 * (Wlow[i][j] + Wlow[j][i]);
            Wlow[i][j] = Wlow[j][i] = s;
        }
    return Wlow;
}

struct OperatorPieces {
    Mat Minv;        // (I + rho^2 A^2)^{-1}, chart (1,1)
    Mat Ginv;
    Mat A;           // chart (1,1)
    Mat Wsharp;      // G^{-1} Wlow
    double sqrt_det; // sqrt(det(I + rho^2 A^2))
    double sl;
    double j_value;  // tr(M^-1 rho W) - tr(M^-1 rho A^2)
};

OperatorPieces operator_pieces(const ImmersionPatch& patch, const FundamentalData& fd, double rho) {
    const int n = patch.n;
    OperatorPieces op;
    op.Ginv = inverse(fd.first_form);
    op.A = fd.shape_coord;
    Mat A2 = matmul(op.A, op.A);
    Mat M = identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] += rho * rho * A2[i][j];
    op.Minv = inverse(M);
    op.Wsharp = matmul(op.Ginv, curvature_w_low(patch, fd));

    double sd = 1.0, sl = 0.0;
    for (double l : eigen_sym(fd.shape).eigenvalues) {
        sd *= 1.0 + rho * rho * l * l;
        sl += std::atan(rho * l);
    }
    op.sqrt_det = std::sqrt(sd);
    op.sl = sl;
    op.j_value = rho * (trace_prod(op.Minv, op.Wsharp) - trace_prod(op.Minv, A2));
    return op;
}

double im_det(const SymMatrix& shape, double rho, double theta) {
    std::complex<double> prod(1.0, 0.0);
    for (double l : eigen_sym(shape).eigenvalues) prod *= std::complex<double>(1.0, rho * l);
    return (prod * std::exp(std::complex<double>(0.0, -theta))).imag();
}

}  // namespace

LinearizedSample linearized_L(const DeformationField& field, const Vec& u, double rho, double theta) {
    const ImmersionPatch& patch = field.patch;
    const int n = patch.n;
    FundamentalData fd = fundamental_forms_exact(patch, u);
    OperatorPieces op = operator_pieces(patch, fd, rho);

    // covariant Hessian of f in the induced metric (exact jets)
    VecT<Jet2> uj(n);
    for (int k = 0; k < n; ++k) uj[k] = Jet2::variable(u[k], k, n);
    Jet2 fj = field.f_j(uj);
    std::vector<Mat> gam = induced_christoffels(patch, u);
    Mat hess = mat_zero<double>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = fj.hess(i, j);
            for (int k = 0; k < n; ++k) v -= gam[k][i][j] * fj.grad(k);
            hess[i][j] = v;
        }

    Mat hess_sharp = matmul(op.Ginv, hess);
    Mat A2 = matmul(op.A, op.A);
    double f0 = fj.v;

    LinearizedSample out;
    out.L_value = op.sqrt_det * rho *
                  (-trace_prod(op.Minv, hess_sharp) + f0 * trace_prod(op.Minv, op.Wsharp) -
                   f0 * trace_prod(op.Minv, A2));
    out.J_value = op.j_value;
    out.sl = op.sl;
    out.sqrt_det = op.sqrt_det;

    // W in the orthonormal frame for reporting: T Wlow T^T
    Mat T = identity(n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < k; ++j) {
            double c = dot_g(fd.first_form, T[k], T[j]);
            for (int i = 0; i < n; ++i) T[k][i] -= c * T[j][i];
        }
        double nn = dot_g(fd.first_form, T[k], T[k]);
        for (int i = 0; i < n; ++i) T[k][i] /= std::sqrt(nn);
    }
    Mat Wlow = curvature_w_low(patch, fd);
    out.W_matrix = SymMatrix(matmul(T, matmul(Wlow, transpose(T))));
    (void)theta;
    return out;
}

double fd_variation(const DeformationField& field, const Vec& u, double rho, double theta,
                    double t_step) {
    ImmersionPatch plus = deform_patch(field, t_step);
    ImmersionPatch minus = deform_patch(field, -t_step);
    double ip = im_det(fundamental_forms_exact(plus, u).shape, rho, theta);
    double im = im_det(fundamental_forms_exact(minus, u).shape, rho, theta);
    return (ip - im) / (2.0 * t_step);
}

double shape_variation_residual(const DeformationField& field, const Vec& u, double t_step) {
    const ImmersionPatch& patch = field.patch;
    const int n = patch.n;

    ImmersionPatch plus = deform_patch(field, t_step);
    ImmersionPatch minus = deform_patch(field, -t_step);
    Mat Ap = fundamental_forms_exact(plus, u).shape_coord;
    Mat Am = fundamental_forms_exact(minus, u).shape_coord;

    FundamentalData fd = fundamental_forms_exact(patch, u);
    OperatorPieces op = operator_pieces(patch, fd, 1.0);

    VecT<Jet2> uj(n);
    for (int k = 0; k < n; ++k) uj[k] = Jet2::variable(u[k], k, n);
    Jet2 fj = field.f_j(uj);
    std::vector<Mat> gam = induced_christoffels(patch, u);
    Mat hess = mat_zero<double>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = fj.hess(i, j);
            for (int k = 0; k < n; ++k) v -= gam[k][i][j] * fj.grad(k);
            hess[i][j] = v;
        }
    Mat hess_sharp = matmul(op.Ginv, hess);
    Mat A2 = matmul(op.A, op.A);

    double resid = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double dA = (Ap[i][j] - Am[i][j]) / (2.0 * t_step);
            double formula = fj.v * op.Wsharp[i][j] - hess_sharp[i][j] - fj.v * A2[i][j];
            resid = std::max(resid, std::abs(dA - formula));
        }
    return resid;
}

JScanResult j_positivity_scan(double kappa, double rho, double theta, int n, int samples,
                              unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    JScanResult out;
    out.samples = samples;
    out.min_J = 1e300;

    auto eval_J = [&](const Vec& eigs) {
        double J = 0.0;
        for (double l : eigs) J += rho * (kappa - l * l) / (1.0 + rho * rho * l * l);
        return J;
    };

    for (int trial = 0; trial < samples; ++trial) {
        Vec eigs(n);
        for (auto& l : eigs) l = std::exp(std::log(0.1) + unif(rng) * std::log(100.0));
        // rescale so sum atan(rho s l_i) = theta
        double lo = 1e-12, hi = 1.0;
        auto sl_of = [&](double s) {
            double v = 0.0;
            for (double l : eigs) v += std::atan(rho * s * l);
            return v;
        };
        while (sl_of(hi) < theta) hi *= 2.0;
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi);
            (sl_of(mid) < theta ? lo : hi) = mid;
        }
        double s = 0.5 * (lo + hi);
        for (auto& l : eigs) l *= s;
        double J = eval_J(eigs);
        if (J < out.min_J) {
            out.min_J = J;
            out.argmin_eigs = eigs;
        }
    }
    // isotropic probe, the boundary/violation witness
    {
        double t = std::tan(theta / n) / rho;
        Vec eigs(n, t);
        double J = eval_J(eigs);
        if (J < out.min_J) {
            out.min_J = J;
            out.argmin_eigs = eigs;
        }
    }
    return out;
}

ImmersionPatch equidistant_rotational_patch(const Model& model, int n, double R, double t_lo,
                                            double t_hi) {
    std::vector<std::array<double, 2>> dom(n);
    dom[0] = {t_lo - 0.2, t_hi + 0.2};
    for (int i = 1; i < n; ++i) dom[i] = {0.4, 2.6};
    double ch = std::cosh(R), sh = std::sinh(R);

    auto build = [n](const auto& u, double a, double b) {
        using S = typename std::decay_t<decltype(u)>::value_type;
        VecT<S> ang(u.begin() + 1, u.end());
        auto omega = sphere_chart(ang);  // S^{n-1} in R^n
        VecT<S> x(n + 2, S(0.0));
        x[0] = cosh(u[0]) * a;
        for (int i = 0; i < n; ++i) x[1 + i] = sinh(u[0]) * omega[i] * a;
        x[n + 1] = S(b);
        return x;
    };
    bool drop_first = model.chart_rep();  // graph chart = spatial part
    ImmersionPatch p = make_patch(model, n, dom, [build, ch, sh, drop_first](const auto& u) {
        using S = typename std::decay_t<decltype(u)>::value_type;
        VecT<S> x = build(u, ch, sh);
        if (drop_first) return VecT<S>(x.begin() + 1, x.end());
        return x;
    });
    p.normal_hint = [build, ch, sh, drop_first](const Vec& u) {
        Vec x = build(u, sh, ch);
        if (drop_first) return Vec(x.begin() + 1, x.end());
        return x;
    };
    p.normal_j = [build, ch, sh, drop_first](const VecT<Jet2>& u) {
        VecT<Jet2> x = build(u, sh, ch);
        if (drop_first) return VecT<Jet2>(x.begin() + 1, x.end());
        return x;
    };
    p.label = "equidistant-rotational";
    return p;
}

namespace {

/// Piecewise-quadratic nodal interpolation: f depends on the first chart
/// coordinate only; three consecutive nodes define the local parabola.
struct NodalField {
    Vec t;  // grid
    Vec f;  // values

    template <class S>
    S operator()(const VecT<S>& u) const {
        double tc = value_of(u[0]);
        std::size_t m = t.size();
        double h = (t.back() - t.front()) / double(m - 1);
        long j = std::lround((tc - t.front()) / h);
        std::size_t i = (std::size_t)std::clamp<long>(j, 1, (long)m - 2);
        // parabola through nodes i-1, i, i+1
        double t0 = t[i - 1], t1 = t[i], t2 = t[i + 1];
        double f0 = f[i - 1], f1 = f[i], f2 = f[i + 1];
        S x = u[0];
        S l0 = (x - t1) * (x - t2) * (1.0 / ((t0 - t1) * (t0 - t2)));
        S l1 = (x - t0) * (x - t2) * (1.0 / ((t1 - t0) * (t1 - t2)));
        S l2 = (x - t0) * (x - t1) * (1.0 / ((t2 - t0) * (t2 - t1)));
        return f0 * l0 + f1 * l1 + f2 * l2;
    }
};

void solve_tridiagonal(Vec& a, Vec& b, Vec& c, Vec& d) {
    // a: sub, b: diag, c: super, d: rhs -> solution in d
    int m = (int)b.size();
    for (int i = 1; i < m; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    d[m - 1] /= b[m - 1];
    for (int i = m - 2; i >= 0; --i) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

}  // namespace

ContinuationResult newton_continuation(const ContinuationParams& params) {
    const int n = params.n;
    const int m = params.grid;
    BumpSpec bump;
    bump.center = Vec(n + 1, 0.0);
    bump.width = params.bump_width;

    Model base = hyperbolic_model(n + 1, -1.0);
    const double theta = n * std::atan(params.rho * std::tanh(params.R));

    ContinuationResult result;
    result.grid_t.resize(m);
    double hgrid = (params.t_hi - params.t_lo) / (m - 1);
    for (int i = 0; i < m; ++i) result.grid_t[i] = params.t_lo + i * hgrid;

    Vec f(m, 0.0);
    Vec angles0(n - 1, 1.2);

    auto solve_at_eps = [&](double eps, ContinuationStep& step) -> bool {
        Model pert = perturbed_model(base, eps, bump);
        ImmersionPatch start = equidistant_rotational_patch(pert, n, params.R, params.t_lo, params.t_hi);

        step.eps = eps;
        for (int iter = 0; iter <= params.max_newton; ++iter) {
            NodalField field{result.grid_t, f};
            DeformationField df = make_deformation(start, field);
            ImmersionPatch current = deform_patch(df, 1.0);

            // residual and Jacobian rows at interior nodes
            Vec resid(m, 0.0);
            Vec sub(m, 0.0), diag(m, 1.0), super(m, 0.0);
            double sup_angle = 0.0;
            for (int i = 1; i + 1 < m; ++i) {
                Vec u(n, 0.0);
                u[0] = result.grid_t[i];
                for (int k = 1; k < n; ++k) u[k] = angles0[k - 1];

                FundamentalData fdta = fundamental_forms_exact(current, u);
                OperatorPieces op = operator_pieces(current, fdta, params.rho);
                resid[i] = op.sqrt_det * std::sin(op.sl - theta);
                sup_angle = std::max(sup_angle, std::abs(op.sl - theta));

                // Jacobian of the pushed-off immersion wrt nodal values via
                // the variation operator: Hessian term reduces to the
                // second derivative along t plus first-order Christoffel
                // corrections of the induced metric.
                std::vector<Mat> gam = induced_christoffels(current, u);
                Mat X = matmul(op.Minv, op.Ginv);  // symmetric
                double cf2 = X[0][0];
                double cf1 = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) cf1 -= X[a][b] * gam[0][a][b];
                Mat A2 = matmul(op.A, op.A);
                double zer = trace_prod(op.Minv, op.Wsharp) - trace_prod(op.Minv, A2);
                double pref = op.sqrt_det * params.rho;

                // row: pref * ( -(cf2 D2 + cf1 D1) + zer * id )
                double ih2 = 1.0 / (hgrid * hgrid), ih1 = 1.0 / (2.0 * hgrid);
                sub[i] = pref * (-(cf2 * ih2) + cf1 * ih1);
                diag[i] = pref * (2.0 * cf2 * ih2 + zer);
                super[i] = pref * (-(cf2 * ih2) - cf1 * ih1);
            }
            step.residual = sup_angle;
            step.newton_iters = iter;
            double fmax = 0.0;
            for (double v : f) fmax = std::max(fmax, std::abs(v));
            step.f_norm = fmax;
            if (std::getenv("SLC_CONT_TRACE"))
                std::fprintf(stderr, "eps=%g iter=%d sup_angle=%.3e fmax=%.3e\n", eps, iter, sup_angle,
                             fmax);
            if (sup_angle <= params.newton_tol) {
                step.converged = true;
                return true;
            }
            if (iter == params.max_newton) break;

            // Dirichlet rows pin the boundary values
            Vec rhs = resid;
            rhs[0] = 0.0;
            rhs[m - 1] = 0.0;
            sub[0] = super[0] = 0.0;
            diag[0] = 1.0;
            sub[m - 1] = super[m - 1] = 0.0;
            diag[m - 1] = 1.0;
            Vec a = sub, b = diag, c = super, d = rhs;
            solve_tridiagonal(a, b, c, d);
            for (int i = 0; i < m; ++i) f[i] -= d[i];
        }
        step.converged = false;
        return false;
    };

    result.ok = true;
    for (int k = 1; k <= params.path_steps; ++k) {
        ContinuationStep step;
        if (!solve_at_eps(params.eps_max * k / params.path_steps, step)) result.ok = false;
        result.steps.push_back(step);
        if (!result.ok) return result;
    }
    result.final_f = f;

    if (params.round_trip) {
        for (int k = params.path_steps - 1; k >= 0; --k) {
            ContinuationStep step;
            if (!solve_at_eps(params.eps_max * k / params.path_steps, step)) result.ok = false;
            result.steps.push_back(step);
            if (!result.ok) return result;
        }
        double fmax = 0.0;
        for (double v : f) fmax = std::max(fmax, std::abs(v));
        result.round_trip_f_norm = fmax;
    }
    return result;
}

}  // namespace slc
