#include "slc/ambient.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace slc {

namespace {

double radius2(const Model& model) { return -1.0 / model.c; }  // hyperbolic only

template <class S>
S chart_x0(const Model& model, const VecT<S>& u) {
    S q(radius2(model));
    for (auto& ui : u) q += ui * ui;
    return sqrt(q);
}

}  // namespace

Model euclidean_model(int m) {
    Model mod;
    mod.kind = ModelKind::euclidean;
    mod.m = m;
    mod.c = 0.0;
    if (m < 1) throw std::invalid_argument("model dimension must be >= 1");
    return mod;
}

Model hyperbolic_model(int m, double c) {
    if (!(c < 0.0)) throw std::invalid_argument("hyperbolic model needs c < 0");
    if (m < 1) throw std::invalid_argument("model dimension must be >= 1");
    Model mod;
    mod.kind = ModelKind::hyperbolic;
    mod.m = m;
    mod.c = c;
    return mod;
}

Model perturbed_model(Model base, double epsilon, BumpSpec bump) {
    base.pert = Perturbation{epsilon, std::move(bump)};
    return base;
}

template <class S>
MatT<S> chart_metric(const Model& model, const VecT<S>& x) {
    if (!model.chart_rep()) throw std::logic_error("chart_metric: embedding-representation model");
    int m = model.m;
    MatT<S> g = mat_zero<S>(m, m);
    if (model.kind == ModelKind::euclidean) {
        for (int i = 0; i < m; ++i) g[i][i] = S(1.0);
    } else {
        // Pullback of the Lorentz metric under u -> (x0(u), u):
        // g_ab = delta_ab - u_a u_b / x0^2.
        S x0sq = chart_x0(model, x);
        x0sq = x0sq * x0sq;
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                S v = -(x[a] * x[b] / x0sq);
                if (a == b) v += 1.0;
                g[a][b] = v;
            }
        }
    }
    if (model.pert && model.pert->epsilon != 0.0) {
        S f = 1.0 + model.pert->epsilon * bump_value(model.pert->bump, x);
        for (auto& row : g)
            for (auto& v : row) v = v * f;
    }
    return g;
}

template Mat chart_metric<double>(const Model&, const Vec&);
template MatT<Jet2> chart_metric<Jet2>(const Model&, const VecT<Jet2>&);

template <class S>
S inner(const Model& model, const VecT<S>& p, const VecT<S>& X, const VecT<S>& Y) {
    if (model.chart_rep()) {
        MatT<S> g = chart_metric(model, p);
        return dot_g(g, X, Y);
    }
    if (model.kind == ModelKind::hyperbolic) return lorentz_dot(X, Y);
    return dot(X, Y);
}

template double inner<double>(const Model&, const Vec&, const Vec&, const Vec&);
template Jet2 inner<Jet2>(const Model&, const VecT<Jet2>&, const VecT<Jet2>&, const VecT<Jet2>&);

namespace {

/// Christoffels from metric values and first derivatives:
/// Gamma^k_ab = g^{kl} (d_a g_lb + d_b g_la - d_l g_ab) / 2.
std::vector<Mat> christoffels_from_jets(int m, const MatT<Jet2>& gj) {
    Mat g(m, Vec(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) g[a][b] = gj[a][b].v;
    Mat ginv = inverse(g);
    std::vector<Mat> gam(m, Mat(m, Vec(m, 0.0)));
    for (int k = 0; k < m; ++k)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                double s = 0.0;
                for (int l = 0; l < m; ++l)
                    s += ginv[k][l] * (gj[l][b].grad(a) + gj[l][a].grad(b) - gj[a][b].grad(l));
                gam[k][a][b] = 0.5 * s;
            }
    return gam;
}

MatT<Jet2> metric_jet(const Model& model, const Vec& x) {
    int m = model.m;
    VecT<Jet2> xj(m);
    for (int i = 0; i < m; ++i) xj[i] = Jet2::variable(x[i], i, m);
    return chart_metric(model, xj);
}

}  // namespace

std::vector<Mat> christoffels(const Model& model, const Vec& x) {
    return christoffels_from_jets(model.m, metric_jet(model, x));
}

std::vector<Mat> christoffels_fd(const Model& model, const Vec& x, double h) {
    int m = model.m;
    // Five-point first derivatives of the metric components.
    std::vector<Mat> dg(m);  // dg[l][a][b] = d_l g_ab
    for (int l = 0; l < m; ++l) {
        auto at = [&](double step) {
            Vec xs = x;
            xs[l] += step;
            return chart_metric(model, xs);
        };
        Mat g2p = at(2 * h), gp = at(h), gm = at(-h), g2m = at(-2 * h);
        dg[l] = mat_zero<double>(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                dg[l][a][b] = (-g2p[a][b] + 8.0 * gp[a][b] - 8.0 * gm[a][b] + g2m[a][b]) / (12.0 * h);
    }
    Mat ginv = inverse(chart_metric(model, x));
    std::vector<Mat> gam(m, Mat(m, Vec(m, 0.0)));
    for (int k = 0; k < m; ++k)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                double s = 0.0;
                for (int l = 0; l < m; ++l) s += ginv[k][l] * (dg[a][l][b] + dg[b][l][a] - dg[l][a][b]);
                gam[k][a][b] = 0.5 * s;
            }
    return gam;
}

namespace {

Vec riemann_space_form(const Model& model, const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) {
    // R(X,Y)Z = c (<Y,Z> X - <X,Z> Y)
    double yz = inner(model, p, Y, Z), xz = inner(model, p, X, Z);
    Vec r(X.size(), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = model.c * (yz * X[i] - xz * Y[i]);
    return r;
}

/// Curvature from Christoffel symbols supplied as a function of the chart
/// point together with their first derivatives:
/// R^a_{bcd} = d_c Gamma^a_db - d_d Gamma^a_cb
///           + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb,
/// contracted as (R(X,Y)Z)^a = R^a_{bcd} X^c Y^d Z^b.
Vec riemann_from_gamma(int m, const std::vector<Mat>& gam,
                       const std::vector<std::vector<Mat>>& dgam,
                       const Vec& X, const Vec& Y, const Vec& Z) {
    Vec out(m, 0.0);
    for (int a = 0; a < m; ++a) {
        double s = 0.0;
        for (int b = 0; b < m; ++b)
            for (int cc = 0; cc < m; ++cc)
                for (int d = 0; d < m; ++d) {
                    double r = dgam[cc][a][d][b] - dgam[d][a][cc][b];
                    for (int e = 0; e < m; ++e)
                        r += gam[a][cc][e] * gam[e][d][b] - gam[a][d][e] * gam[e][cc][b];
                    s += r * X[cc] * Y[d] * Z[b];
                }
        out[a] = s;
    }
    return out;
}

}  // namespace

Vec riemann(const Model& model, const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) {
    if (!model.pert || model.pert->epsilon == 0.0) {
        if (!model.chart_rep() && model.kind == ModelKind::hyperbolic) {
            double scale = std::sqrt(std::abs(lorentz_dot(p, p)));
            if (std::abs(tangency_residual(model, p, X)) > 1e-8 * (1.0 + scale) ||
                std::abs(tangency_residual(model, p, Y)) > 1e-8 * (1.0 + scale) ||
                std::abs(tangency_residual(model, p, Z)) > 1e-8 * (1.0 + scale))
                throw std::domain_error("riemann: vectors not tangent to the hyperboloid");
        }
        if (!model.pert) return riemann_space_form(model, p, X, Y, Z);
    }
    // Perturbed: finite differences of Christoffel symbols.
    const int m = model.m;
    const double h = 1e-3;
    std::vector<std::vector<Mat>> dgam(m);
    for (int l = 0; l < m; ++l) {
        auto at = [&](double step) {
            Vec xs = p;
            xs[l] += step;
            return christoffels_fd(model, xs);
        };
        auto g2p = at(2 * h), gp = at(h), gm = at(-h), g2m = at(-2 * h);
        dgam[l].assign(m, Mat(m, Vec(m, 0.0)));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int cc = 0; cc < m; ++cc)
                    dgam[l][a][b][cc] =
                        (-g2p[a][b][cc] + 8.0 * gp[a][b][cc] - 8.0 * gm[a][b][cc] + g2m[a][b][cc]) /
                        (12.0 * h);
    }
    return riemann_from_gamma(m, christoffels_fd(model, p), dgam, X, Y, Z);
}

Vec riemann_exact(const Model& model, const Vec& p, const Vec& X, const Vec& Y, const Vec& Z) {
    if (!model.pert) return riemann_space_form(model, p, X, Y, Z);
    const int m = model.m;
    MatT<Jet2> gj = metric_jet(model, p);

    // Gamma and dGamma from exact metric jets.
    Mat g(m, Vec(m)), dgm;
    for (int a = 0; a < m; ++a) {
        g[a].resize(m);
        for (int b = 0; b < m; ++b) g[a][b] = gj[a][b].v;
    }
    Mat ginv = inverse(g);
    // dginv_l = -ginv dg_l ginv
    std::vector<Mat> dg(m, mat_zero<double>(m, m)), dginv(m, mat_zero<double>(m, m));
    for (int l = 0; l < m; ++l)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) dg[l][a][b] = gj[a][b].grad(l);
    for (int l = 0; l < m; ++l) {
        Mat t = matmul(ginv, matmul(dg[l], ginv));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) dginv[l][a][b] = -t[a][b];
    }
    std::vector<Mat> gam(m, Mat(m, Vec(m, 0.0)));
    std::vector<std::vector<Mat>> dgam(m, std::vector<Mat>(m, Mat(m, Vec(m, 0.0))));
    for (int k = 0; k < m; ++k)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                double s = 0.0;
                for (int l = 0; l < m; ++l)
                    s += ginv[k][l] * (gj[l][b].grad(a) + gj[l][a].grad(b) - gj[a][b].grad(l));
                gam[k][a][b] = 0.5 * s;
                for (int d = 0; d < m; ++d) {
                    double t = 0.0;
                    for (int l = 0; l < m; ++l) {
                        t += dginv[d][k][l] * (gj[l][b].grad(a) + gj[l][a].grad(b) - gj[a][b].grad(l));
                        t += ginv[k][l] * (gj[l][b].hess(a, d) + gj[l][a].hess(b, d) - gj[a][b].hess(l, d));
                    }
                    dgam[d][k][a][b] = 0.5 * t;
                }
            }
    return riemann_from_gamma(m, gam, dgam, X, Y, Z);
}

double sectional(const Model& model, const Vec& p, const Vec& X, const Vec& Y) {
    Vec r = riemann(model, p, X, Y, Y);
    double num = inner(model, p, r, X);
    double xx = inner(model, p, X, X), yy = inner(model, p, Y, Y), xy = inner(model, p, X, Y);
    return num / (xx * yy - xy * xy);
}

template <class S>
VecT<S> exp_map(const Model& model, const VecT<S>& p, const VecT<S>& v) {
    if (model.pert && model.pert->epsilon != 0.0)
        throw std::logic_error("exp_map: closed form only for space forms");
    if (model.kind == ModelKind::euclidean) return vadd(p, v);
    if (model.chart_rep()) {
        // chart representation of an unperturbed hyperbolic model: lift,
        // map, project back.
        throw std::logic_error("exp_map: use embedding representation for hyperbolic models");
    }
    double k = std::sqrt(-model.c);
    // exp_p(v) = cosh(k|v|) p + sinh(k|v|)/(k|v|) v, analytic in |v|^2.
    S arg = lorentz_dot(v, v) * (k * k);
    S ch = cosh_sqrt(arg);
    S sc = sinhc_sqrt(arg);
    VecT<S> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = ch * p[i] + sc * v[i];
    return out;
}

template Vec exp_map<double>(const Model&, const Vec&, const Vec&);
template VecT<Jet2> exp_map<Jet2>(const Model&, const VecT<Jet2>&, const VecT<Jet2>&);

Vec parallel_transport(const Model& model, const Vec& p, const Vec& v, const Vec& w) {
    if (model.pert) throw std::logic_error("parallel_transport: space forms only");
    if (model.kind == ModelKind::euclidean) return w;
    double k = std::sqrt(-model.c);
    double vv = lorentz_dot(v, v);
    if (vv <= 0.0) return w;
    double nv = std::sqrt(vv);
    Vec u = vscale(1.0 / nv, v);  // unit direction
    double a = lorentz_dot(w, u);
    // transported u-component follows the geodesic tangent; the orthogonal
    // part (also orthogonal to p) is constant in these coordinates.
    double s = k * nv;
    Vec gprime(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        gprime[i] = k * std::sinh(s) * p[i] + std::cosh(s) * u[i];
    Vec out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = w[i] + a * (gprime[i] - u[i]);
    return out;
}

double geodesic_distance(const Model& model, const Vec& p, const Vec& q) {
    if (model.pert) throw std::logic_error("geodesic_distance: space forms only");
    if (model.kind == ModelKind::euclidean) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
        return std::sqrt(s);
    }
    double k = std::sqrt(-model.c);
    double cs = model.c * lorentz_dot(p, q);  // cosh(k d)
    if (cs < 1.0) cs = 1.0;
    return std::acosh(cs) / k;
}

std::vector<Vec> ortho_frame(const Model& model, const Vec& p, const Vec& seed) {
    int dim = (int)p.size();
    double ss = inner(model, p, seed, seed);
    if (!(ss > 1e-24)) throw std::domain_error("ortho_frame: zero seed");
    int n_tangent = model.m;

    Vec last = vscale(1.0 / std::sqrt(ss), seed);
    std::vector<Vec> frame;  // built first-to-last, seed appended at the end

    auto project_tangent = [&](Vec v) {
        if (!model.chart_rep() && model.kind == ModelKind::hyperbolic) {
            double pp = lorentz_dot(p, p);
            double vp = lorentz_dot(v, p);
            v = axpy(-vp / pp, p, v);
        }
        return v;
    };

    std::vector<Vec> candidates;
    for (int i = 0; i < dim; ++i) {
        Vec e(dim, 0.0);
        e[i] = 1.0;
        candidates.push_back(project_tangent(e));
    }
    for (auto& cand : candidates) {
        if ((int)frame.size() == n_tangent - 1) break;
        Vec v = cand;
        v = axpy(-inner(model, p, v, last), last, v);
        for (auto& f : frame) v = axpy(-inner(model, p, v, f), f, v);
        double nv = inner(model, p, v, v);
        if (nv > 1e-12) frame.push_back(vscale(1.0 / std::sqrt(nv), v));
    }
    if ((int)frame.size() != n_tangent - 1)
        throw std::runtime_error("ortho_frame: failed to complete basis");
    frame.push_back(last);

    // Fix overall orientation deterministically: the square matrix of the
    // frame (plus the timelike direction for the hyperboloid) should have
    // positive determinant.
    Mat square;
    if (!model.chart_rep() && model.kind == ModelKind::hyperbolic) {
        square.push_back(vscale(std::sqrt(-model.c), p));
    }
    for (auto& f : frame) square.push_back(f);
    if (lu_det(square) < 0.0)
        for (auto& x : frame[0]) x = -x;
    return frame;
}

double model_residual(const Model& model, const Vec& p) {
    if (model.chart_rep()) return 0.0;
    return std::abs(lorentz_dot(p, p) - 1.0 / model.c);
}

double tangency_residual(const Model& model, const Vec& p, const Vec& X) {
    if (model.chart_rep()) return 0.0;
    return lorentz_dot(p, X);
}

Vec hyperboloid_from_chart(const Model& model, const Vec& u) {
    Vec x(u.size() + 1);
    x[0] = chart_x0(model, u);
    for (std::size_t i = 0; i < u.size(); ++i) x[i + 1] = u[i];
    return x;
}

Vec chart_from_hyperboloid(const Vec& x) {
    return Vec(x.begin() + 1, x.end());
}

std::string model_to_json(const Model& model) {
    nlohmann::ordered_json j;
    j["type"] = model.kind == ModelKind::euclidean ? "euclidean" : "hyperbolic";
    j["dim"] = model.m;
    j["curvature"] = model.c;
    if (model.pert) {
        nlohmann::ordered_json p;
        p["epsilon"] = model.pert->epsilon;
        p["bump"] = "gaussian";
        p["center"] = model.pert->bump.center;
        p["width"] = model.pert->bump.width;
        j["perturbation"] = p;
    }
    return j.dump();
}

Model model_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::string type = j.at("type");
    int m = j.at("dim");
    Model mod;
    if (type == "euclidean") {
        mod = euclidean_model(m);
    } else if (type == "hyperbolic") {
        mod = hyperbolic_model(m, j.value("curvature", -1.0));
    } else {
        throw std::invalid_argument("model_from_json: unknown type " + type);
    }
    if (j.contains("perturbation")) {
        auto p = j["perturbation"];
        BumpSpec b;
        b.center = p.value("center", Vec(m, 0.0));
        b.width = p.value("width", 1.0);
        mod = perturbed_model(mod, p.value("epsilon", 0.0), b);
    }
    return mod;
}

}  // namespace slc
