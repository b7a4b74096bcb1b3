#include "slc/hypersurface.hpp"
#include <cstdio>

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "slc/curvature.hpp"

namespace slc {

Vec ImmersionPatch::domain_center() const {
    Vec u(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) u[i] = 0.5 * (domain[i][0] + domain[i][1]);
    return u;
}

namespace {

/// Metric-weighted constraint rows whose Euclidean null space contains the
/// normal direction. For the hyperboloid the base point is an extra row
/// (tangency); for chart models the rows are G x tangent.
template <class S>
MatT<S> normal_constraint_rows(const Model& model, const VecT<S>& point, const MatT<S>& tangents) {
    MatT<S> rows;
    if (model.chart_rep()) {
        MatT<S> g = chart_metric(model, point);
        for (auto& t : tangents) rows.push_back(matvec(g, t));
    } else {
        auto lorentz_apply = [](const VecT<S>& v) {
            VecT<S> r = v;
            r[0] = -r[0];
            return r;
        };
        for (auto& t : tangents) rows.push_back(lorentz_apply(t));
        rows.push_back(lorentz_apply(point));
    }
    return rows;
}

/// Unit normal (sign unresolved): the one-dimensional Euclidean null space
/// of the constraint rows, normalized in the model metric.
template <class S>
VecT<S> solve_normal(const Model& model, const VecT<S>& point, const MatT<S>& tangents) {
    MatT<S> rows = normal_constraint_rows(model, point, tangents);
    int dim = (int)point.size();

    // Orthonormalize the rows (Euclidean), then project candidates.
    MatT<S> ortho;
    for (auto r : rows) {
        for (auto& o : ortho) {
            S c = dot(o, r);
            for (int i = 0; i < dim; ++i) r[i] -= c * o[i];
        }
        S nn = dot(r, r);
        if (value_of(nn) > 1e-28) {
            S inv_n = 1.0 / sqrt(nn);
            for (auto& x : r) x = x * inv_n;
            ortho.push_back(r);
        }
    }
    VecT<S> best;
    double best_norm = -1.0;
    for (int cand = 0; cand < dim; ++cand) {
        VecT<S> v(dim, S(0.0));
        v[cand] = S(1.0);
        for (auto& o : ortho) {
            S c = dot(o, v);
            for (int i = 0; i < dim; ++i) v[i] -= c * o[i];
        }
        double nn = value_of(dot(v, v));
        if (nn > best_norm) {
            best_norm = nn;
            best = v;
        }
    }
    if (best_norm < 1e-20) throw ImmersionDegeneracy("normal solve failed (degenerate differential)");
    S nn = inner(model, point, best, best);
    S inv_n = 1.0 / sqrt(nn);
    for (auto& x : best) x = x * inv_n;
    return best;
}

/// Deterministic sign for the normal: prefer the patch hint, else a fixed
/// determinant convention; multiply by the patch orientation.
double normal_sign(const ImmersionPatch& patch, const Vec& u, const Vec& point, const Mat& tangents,
                   const Vec& normal) {
    double ref;
    if (patch.normal_hint) {
        Vec hint = patch.normal_hint(u);
        ref = inner(patch.model, point, normal, hint);
    } else {
        Mat square;
        if (!patch.model.chart_rep() && patch.model.kind == ModelKind::hyperbolic)
            square.push_back(vscale(std::sqrt(-patch.model.c), point));
        for (auto& t : tangents) square.push_back(t);
        square.push_back(normal);
        ref = lu_det(square);
    }
    double s = (ref >= 0.0 ? 1.0 : -1.0) * patch.orientation;
    return s;
}

void check_margin(const ImmersionPatch& patch, const Vec& u, double h) {
    for (std::size_t k = 0; k < u.size(); ++k)
        if (u[k] < patch.domain[k][0] + 2.0 * h || u[k] > patch.domain[k][1] - 2.0 * h)
            throw std::domain_error("fundamental_forms: chart point too close to the boundary");
}

}  // namespace

FundamentalData assemble_fundamental(const ImmersionPatch& patch, const Vec& point, const Mat& tangents,
                                     const Vec& normal, const Mat& dN_raw) {
    const Model& model = patch.model;
    int n = patch.n;

    FundamentalData out;
    out.point = point;
    out.tangents = tangents;
    out.normal = normal;

    out.first_form = mat_zero<double>(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out.first_form[k][l] = inner(model, point, tangents[k], tangents[l]);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < k; ++l) {
            double s = 0.5 * (out.first_form[k][l] + out.first_form[l][k]);
            out.first_form[k][l] = out.first_form[l][k] = s;
        }

    EigenDecomposition ge = jacobi_eigen(out.first_form);
    if (!(ge.eigenvalues.front() > 1e-16))
        throw ImmersionDegeneracy("fundamental_forms: differential rank-deficient");

    Mat II_raw = mat_zero<double>(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) II_raw[k][l] = inner(model, point, dN_raw[k], tangents[l]);
    double asym = 0.0;
    Mat II = mat_zero<double>(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            asym = std::max(asym, std::abs(II_raw[k][l] - II_raw[l][k]));
            II[k][l] = 0.5 * (II_raw[k][l] + II_raw[l][k]);
        }
    out.asymmetry = asym;
    if (asym > 1e-6) {
        // insufficient smoothness or too large a step; warn once per run
        static bool warned = false;
        if (!warned) {
            warned = true;
            std::fprintf(stderr,
                         "warning: second-form asymmetry %.3e exceeds 1e-6 before symmetrization\n",
                         asym);
        }
    }
    out.second_form = II;
    out.shape_coord = matmul(inverse(out.first_form), II);

    // Tangent-consistent covariant derivative rows: dN_k = sum_j A^j_k t_j.
    out.dN = mat_zero<double>(n, (int)point.size());
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (std::size_t a = 0; a < point.size(); ++a)
                out.dN[k][a] += out.shape_coord[j][k] * tangents[j][a];

    // G-orthonormal frame rows T (T G T^T = I) by Gram-Schmidt.
    Mat T = identity(n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < k; ++j) {
            double c = dot_g(out.first_form, T[k], T[j]);
            for (int i = 0; i < n; ++i) T[k][i] -= c * T[j][i];
        }
        double nn = dot_g(out.first_form, T[k], T[k]);
        double inv_n = 1.0 / std::sqrt(nn);
        for (int i = 0; i < n; ++i) T[k][i] *= inv_n;
    }
    Mat shape_frame = matmul(T, matmul(II, transpose(T)));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < k; ++l) {
            double s = 0.5 * (shape_frame[k][l] + shape_frame[l][k]);
            shape_frame[k][l] = shape_frame[l][k] = s;
        }
    out.shape = SymMatrix(shape_frame);
    return out;
}

FundamentalData fundamental_forms(const ImmersionPatch& patch, const Vec& u, double h) {
    const Model& model = patch.model;
    const int n = patch.n;
    check_margin(patch, u, h);

    auto map_at = [&](const Vec& uu) { return patch.map_d(uu); };
    auto tangents_at = [&](const Vec& uu) {
        Mat t(n);
        for (int k = 0; k < n; ++k) {
            Vec up = uu, um = uu;
            up[k] += h;
            um[k] -= h;
            Vec fp = map_at(up), fm = map_at(um);
            t[k] = vscale(1.0 / (2.0 * h), vsub(fp, fm));
        }
        return t;
    };

    Vec point = map_at(u);
    Mat tangents = tangents_at(u);

    auto normal_at = [&](const Vec& uu) {
        Vec pt = map_at(uu);
        Mat tg = tangents_at(uu);
        Vec N = solve_normal<double>(model, pt, tg);
        double s = normal_sign(patch, uu, pt, tg, N);
        return vscale(s, N);
    };

    Vec N0 = normal_at(u);
    Mat dN(n);
    for (int k = 0; k < n; ++k) {
        Vec up = u, um = u;
        up[k] += h;
        um[k] -= h;
        Vec Np = normal_at(up), Nm = normal_at(um);
        dN[k] = vscale(1.0 / (2.0 * h), vsub(Np, Nm));
    }

    if (model.chart_rep()) {
        bool flat = (model.kind == ModelKind::euclidean && !model.pert);
        if (!flat) {
            std::vector<Mat> gam =
                model.pert ? christoffels_fd(model, point) : christoffels(model, point);
            for (int k = 0; k < n; ++k)
                for (int a = 0; a < model.m; ++a) {
                    double corr = 0.0;
                    for (int b = 0; b < model.m; ++b)
                        for (int cidx = 0; cidx < model.m; ++cidx)
                            corr += gam[a][b][cidx] * tangents[k][b] * N0[cidx];
                    dN[k][a] += corr;
                }
        }
    } else if (model.kind == ModelKind::hyperbolic) {
        // Tangential projection removes the finite-difference residue along
        // the base point direction.
        double pp = lorentz_dot(point, point);
        for (int k = 0; k < n; ++k) {
            double comp = lorentz_dot(dN[k], point) / pp;
            dN[k] = axpy(-comp, point, dN[k]);
        }
    }

    return assemble_fundamental(patch, point, tangents, N0, dN);
}

FundamentalData fundamental_forms_exact(const ImmersionPatch& patch, const Vec& u) {
    if (!patch.has_jet()) throw std::logic_error("fundamental_forms_exact: patch has no jet map");
    const Model& model = patch.model;
    const int n = patch.n;
    const int dim = model.coord_dim();

    VecT<Jet2> uj(n);
    for (int k = 0; k < n; ++k) uj[k] = Jet2::variable(u[k], k, n);
    VecT<Jet2> Pj = patch.map_j(uj);

    Vec point(dim);
    Mat tangents(n, Vec(dim));
    for (int a = 0; a < dim; ++a) {
        point[a] = Pj[a].v;
        for (int k = 0; k < n; ++k) tangents[k][a] = Pj[a].grad(k);
    }

    // First-order jets of the tangent vectors (value = first derivative,
    // gradient = second derivative of the map). Hessian blocks of these
    // jets are not meaningful and are never read.
    MatT<Jet2> tj(n, VecT<Jet2>(dim));
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < dim; ++a) {
            Jet2 e(Pj[a].grad(k), n);
            for (int l = 0; l < n; ++l) e.g[l] = Pj[a].hess(k, l);
            tj[k][a] = e;
        }

    VecT<Jet2> Nj = solve_normal<Jet2>(model, Pj, tj);
    Vec N0(dim);
    for (int a = 0; a < dim; ++a) N0[a] = Nj[a].v;
    double s = normal_sign(patch, u, point, tangents, N0);
    N0 = vscale(s, N0);

    Mat dN(n, Vec(dim));
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < dim; ++a) dN[k][a] = s * Nj[a].grad(k);

    if (model.chart_rep()) {
        if (!(model.kind == ModelKind::euclidean && !model.pert)) {
            std::vector<Mat> gam = christoffels(model, point);
            for (int k = 0; k < n; ++k)
                for (int a = 0; a < model.m; ++a) {
                    double corr = 0.0;
                    for (int b = 0; b < model.m; ++b)
                        for (int cidx = 0; cidx < model.m; ++cidx)
                            corr += gam[a][b][cidx] * tangents[k][b] * N0[cidx];
                    dN[k][a] += corr;
                }
        }
    } else if (model.kind == ModelKind::hyperbolic) {
        double pp = lorentz_dot(point, point);
        for (int k = 0; k < n; ++k) {
            double comp = lorentz_dot(dN[k], point) / pp;
            dN[k] = axpy(-comp, point, dN[k]);
        }
    }

    return assemble_fundamental(patch, point, tangents, N0, dN);
}

double sl_of_patch(const ImmersionPatch& patch, const Vec& u, double rho, double h) {
    return sl_value(fundamental_forms(patch, u, h).shape, rho);
}

double sl_of_patch_exact(const ImmersionPatch& patch, const Vec& u, double rho) {
    return sl_value(fundamental_forms_exact(patch, u).shape, rho);
}

namespace {

void require_model(const Model& model, ModelKind kind) {
    if (model.kind != kind)
        throw std::invalid_argument("make_family: unsupported kind/model pair");
    if (kind == ModelKind::hyperbolic && std::abs(model.c + 1.0) > 1e-14)
        throw std::invalid_argument("make_family: closed-form hyperbolic families need c = -1");
}

/// Drop the x0 coordinate when the model works in the graph chart.
template <class S>
VecT<S> to_model_coords(const Model& model, VecT<S> x) {
    if (model.kind == ModelKind::hyperbolic && model.chart_rep())
        return VecT<S>(x.begin() + 1, x.end());
    return x;
}

Vec hint_to_model_coords(const Model& model, const Vec& N) {
    if (model.kind == ModelKind::hyperbolic && model.chart_rep())
        return Vec(N.begin() + 1, N.end());
    return N;
}

}  // namespace

ImmersionPatch make_family(const FamilySpec& spec, const Model& model) {
    if (!(spec.R > 0.0)) throw std::invalid_argument("make_family: R must be positive");
    const int n = model.m - 1;
    if (n < 1) throw std::invalid_argument("make_family: model dimension too small");
    const double R = spec.R;
    ImmersionPatch p;

    switch (spec.kind) {
        case FamilyKind::euclidean_sphere: {
            require_model(model, ModelKind::euclidean);
            std::vector<std::array<double, 2>> dom(n, {0.4, 2.6});
            p = make_patch(model, n, dom, [R](const auto& u) {
                auto x = sphere_chart(u);
                for (auto& xi : x) xi = xi * R;
                return x;
            });
            p.normal_hint = [](const Vec& u) { return sphere_chart(u); };
            p.normal_j = [](const VecT<Jet2>& u) { return sphere_chart(u); };
            p.label = "euclidean-sphere";
            break;
        }
        case FamilyKind::geodesic_sphere: {
            require_model(model, ModelKind::hyperbolic);
            std::vector<std::array<double, 2>> dom(n, {0.4, 2.6});
            double ch = std::cosh(R), sh = std::sinh(R);
            auto build = [n, ch, sh](const auto& u, double a, double b) {
                auto s = sphere_chart(u);
                using S = typename std::decay_t<decltype(s)>::value_type;
                VecT<S> x(n + 2, S(0.0));
                x[0] = S(a);
                for (int i = 0; i <= n; ++i) x[i + 1] = s[i] * b;
                return x;
            };
            p = make_patch(model, n, dom, [build, ch, sh, modelRef = model](const auto& u) {
                return to_model_coords(modelRef, build(u, ch, sh));
            });
            p.normal_hint = [build, ch, sh, model](const Vec& u) {
                return hint_to_model_coords(model, build(u, sh, ch));
            };
            p.normal_j = [build, ch, sh, model](const VecT<Jet2>& u) {
                return to_model_coords(model, build(u, sh, ch));
            };
            p.label = "geodesic-sphere";
            break;
        }
        case FamilyKind::equidistant: {
            require_model(model, ModelKind::hyperbolic);
            std::vector<std::array<double, 2>> dom(n, {-1.2, 1.2});
            double ch = std::cosh(R), sh = std::sinh(R);
            auto build = [n](const auto& u, double a, double b) {
                using S = typename std::decay_t<decltype(u)>::value_type;
                S q(1.0);
                for (auto& ui : u) q += ui * ui;
                VecT<S> x(n + 2, S(0.0));
                x[0] = sqrt(q) * a;
                for (int i = 0; i < n; ++i) x[i + 1] = u[i] * a;
                x[n + 1] = S(b);
                return x;
            };
            p = make_patch(model, n, dom, [build, ch, sh, modelRef = model](const auto& u) {
                return to_model_coords(modelRef, build(u, ch, sh));
            });
            p.normal_hint = [build, ch, sh, model](const Vec& u) {
                return hint_to_model_coords(model, build(u, sh, ch));
            };
            p.normal_j = [build, ch, sh, model](const VecT<Jet2>& u) {
                return to_model_coords(model, build(u, sh, ch));
            };
            p.label = "equidistant";
            break;
        }
        case FamilyKind::tube: {
            require_model(model, ModelKind::hyperbolic);
            if (n < 2) throw std::invalid_argument("make_family: tube needs hypersurface dim >= 2");
            std::vector<std::array<double, 2>> dom(n, {0.4, 2.6});
            dom[0] = {-1.2, 1.2};
            double ch = std::cosh(R), sh = std::sinh(R);
            auto build = [n](const auto& u, double a, double b) {
                using S = typename std::decay_t<decltype(u)>::value_type;
                VecT<S> ang(u.begin() + 1, u.end());
                auto s = sphere_chart(ang);  // S^{n-1} in R^n
                VecT<S> x(n + 2, S(0.0));
                x[0] = cosh(u[0]) * a;
                x[1] = sinh(u[0]) * a;
                for (int i = 0; i < n; ++i) x[i + 2] = s[i] * b;
                return x;
            };
            p = make_patch(model, n, dom, [build, ch, sh, modelRef = model](const auto& u) {
                return to_model_coords(modelRef, build(u, ch, sh));
            });
            p.normal_hint = [build, ch, sh, model](const Vec& u) {
                return hint_to_model_coords(model, build(u, sh, ch));
            };
            p.normal_j = [build, ch, sh, model](const VecT<Jet2>& u) {
                return to_model_coords(model, build(u, sh, ch));
            };
            p.label = "tube";
            break;
        }
    }
    return p;
}

FamilySpec family_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    FamilySpec s;
    std::string kind = j.at("kind");
    if (kind == "euclidean-sphere") s.kind = FamilyKind::euclidean_sphere;
    else if (kind == "geodesic-sphere") s.kind = FamilyKind::geodesic_sphere;
    else if (kind == "equidistant") s.kind = FamilyKind::equidistant;
    else if (kind == "tube") s.kind = FamilyKind::tube;
    else throw std::invalid_argument("family_from_json: unknown kind " + kind);
    s.R = j.at("R");
    return s;
}

ImmersionPatch patch_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Model model = model_from_json(j.at("model").dump());
    FamilySpec fam = family_from_json(j.at("family").dump());
    ImmersionPatch p = make_family(fam, model);
    p.orientation = j.value("orientation", 1.0);
    return p;
}

}  // namespace slc
