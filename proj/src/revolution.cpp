#include "slc/revolution.hpp"

#include <algorithm>
#include <cmath>

#include "slc/curvature.hpp"
#include "slc/legendrian.hpp"

namespace slc {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct HalfPlane {
    double G;        // sqrt(g_zz)
    double Gr_byG;   // d_r G / G (frame rotation rate)
    double f;        // orbit radius
    double fr;       // d_r f
    double fz_byG;   // (d_z f) / G
};

HalfPlane half_plane(const ProfileState& st, RevolutionSystem sys) {
    HalfPlane hp{};
    switch (sys) {
        case RevolutionSystem::euclidean:
            hp.G = 1.0;
            hp.Gr_byG = 0.0;
            hp.f = st.r;
            hp.fr = 1.0;
            hp.fz_byG = 0.0;
            break;
        case RevolutionSystem::hyperbolic_tube:
            hp.G = std::cosh(st.r);
            hp.Gr_byG = std::tanh(st.r);
            hp.f = std::sinh(st.r);
            hp.fr = std::cosh(st.r);
            hp.fz_byG = 0.0;
            break;
        case RevolutionSystem::hyperbolic_equidistant:
            hp.G = std::cosh(st.r);
            hp.Gr_byG = std::tanh(st.r);
            hp.f = std::cosh(st.r) * std::sinh(st.z);
            hp.fr = std::sinh(st.r) * std::sinh(st.z);
            hp.fz_byG = std::cosh(st.z);  // cosh(r) cosh(z) / cosh(r)
            break;
    }
    return hp;
}

}  // namespace

double kappa_parallel(const ProfileState& st, const OdeParams& p) {
    HalfPlane hp = half_plane(st, p.system);
    if (!(hp.f > 0.0)) throw AxisSingularity("kappa_parallel: orbit radius not positive");
    double sphi = std::sin(st.phi), cphi = std::cos(st.phi);
    return (sphi * hp.fr - cphi * hp.fz_byG) / hp.f;
}

ProfileDerivative profile_rhs(const ProfileState& st, const OdeParams& p) {
    HalfPlane hp = half_plane(st, p.system);
    if (hp.f <= p.warp_min) throw AxisSingularity("profile_rhs: orbit radius at the axis guard");

    ProfileDerivative d{};
    d.kappa_par = kappa_parallel(st, p);
    d.delta = p.theta - (p.n - 1) * std::atan(p.rho * d.kappa_par);
    if (std::abs(d.delta) >= kPi / 2.0 - p.blowup_margin)
        throw CurvatureBlowup("profile_rhs: meridian curvature out of range");
    d.kappa_mer = std::tan(d.delta) / p.rho;

    d.dr = std::cos(st.phi);
    d.dz = std::sin(st.phi) / hp.G;
    d.dphi = d.kappa_mer - std::sin(st.phi) * hp.Gr_byG;
    return d;
}

namespace {

ProfileState rk4_step(const ProfileState& st, const OdeParams& p, double h) {
    auto f = [&](const ProfileState& y) { return profile_rhs(y, p); };
    auto advance = [&](const ProfileState& y, const ProfileDerivative& d, double dt) {
        ProfileState out = y;
        out.s += dt;
        out.r += dt * d.dr;
        out.z += dt * d.dz;
        out.phi += dt * d.dphi;
        return out;
    };
    ProfileDerivative k1 = f(st);
    ProfileDerivative k2 = f(advance(st, k1, h / 2.0));
    ProfileDerivative k3 = f(advance(st, k2, h / 2.0));
    ProfileDerivative k4 = f(advance(st, k3, h));
    ProfileState out = st;
    out.s += h;
    out.r += h / 6.0 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
    out.z += h / 6.0 * (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz);
    out.phi += h / 6.0 * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi);
    return out;
}

/// Feasibility check usable on bare states (no derivative evaluation).
bool state_feasible(const ProfileState& st, const OdeParams& p) {
    HalfPlane hp = half_plane(st, p.system);
    if (hp.f <= p.warp_min) return false;
    double kp = (std::sin(st.phi) * hp.fr - std::cos(st.phi) * hp.fz_byG) / hp.f;
    double delta = p.theta - (p.n - 1) * std::atan(p.rho * kp);
    return std::abs(delta) < kPi / 2.0 - p.blowup_margin;
}

StopReason stop_reason_at(const ProfileState& st, const OdeParams& p) {
    HalfPlane hp = half_plane(st, p.system);
    if (hp.f <= p.warp_min) return StopReason::axis_singularity;
    return StopReason::curvature_blowup;
}

}  // namespace

ProfileRun integrate_profile(const ProfileState& init, const OdeParams& p, double s_max) {
    ProfileRun run;
    ProfileDerivative d0 = profile_rhs(init, p);  // validates preconditions
    run.samples.push_back(init);
    run.kappa_mer.push_back(d0.kappa_mer);
    run.kappa_par.push_back(d0.kappa_par);

    ProfileState y = init;
    double h = std::min(1e-3, p.max_step);
    const double h_min = 1e-13;

    while (y.s < s_max - 1e-14) {
        h = std::min(h, s_max - y.s);
        ProfileState full, half_end;
        bool ok = true;
        try {
            // step doubling: one step of h against two steps of h/2
            full = rk4_step(y, p, h);
            half_end = rk4_step(rk4_step(y, p, h / 2.0), p, h / 2.0);
            if (!state_feasible(full, p) || !state_feasible(half_end, p)) ok = false;
        } catch (const std::runtime_error&) {
            ok = false;
        }
        if (ok) {
            double err = std::max({std::abs(full.r - half_end.r), std::abs(full.z - half_end.z),
                                   std::abs(full.phi - half_end.phi)}) /
                         15.0;
            if (err > p.tol) {
                h *= std::max(0.2, 0.9 * std::pow(p.tol / err, 0.2));
                continue;
            }
            // accept the fifth-order combination
            ProfileState acc = half_end;
            acc.r += (half_end.r - full.r) / 15.0;
            acc.z += (half_end.z - full.z) / 15.0;
            acc.phi += (half_end.phi - full.phi) / 15.0;
            y = acc;
            run.samples.push_back(y);
            ProfileDerivative d = profile_rhs(y, p);
            run.kappa_mer.push_back(d.kappa_mer);
            run.kappa_par.push_back(d.kappa_par);
            if (err < p.tol / 32.0) h *= 2.0;
            h = std::min(h, p.max_step);
            continue;
        }
        // the step failed: either shrink or localize a stop event
        if (h > h_min) {
            h *= 0.5;
            continue;
        }
        // localize the event from the last good state by bisection
        double lo = 0.0, hi = 1e-9;
        while (hi < 1.0 && [&] {
            try {
                return state_feasible(rk4_step(y, p, hi), p);
            } catch (const std::runtime_error&) {
                return false;
            }
        }())
            hi *= 4.0;
        for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
            double mid = 0.5 * (lo + hi);
            bool feas;
            try {
                feas = state_feasible(rk4_step(y, p, mid), p);
            } catch (const std::runtime_error&) {
                feas = false;
            }
            (feas ? lo : hi) = mid;
        }
        ProfileState last;
        try {
            last = rk4_step(y, p, hi);
        } catch (const std::runtime_error&) {
            last = y;
        }
        run.stop = stop_reason_at(last, p);
        run.stop_s = y.s + hi;
        return run;
    }
    run.stop = StopReason::completed;
    run.stop_s = y.s;
    return run;
}

namespace {

/// Quintic Hermite interpolant through three nodes with values and first
/// derivatives (Newton form with repeated nodes).
struct Hermite3 {
    std::array<double, 6> nodes{};
    std::array<double, 6> coef{};

    static Hermite3 fit(const std::array<double, 3>& s, const std::array<double, 3>& v,
                        const std::array<double, 3>& dv) {
        Hermite3 hm;
        std::array<double, 6> z{s[0], s[0], s[1], s[1], s[2], s[2]};
        std::array<std::array<double, 6>, 6> t{};
        for (int i = 0; i < 6; ++i) t[0][i] = v[i / 2];
        for (int k = 1; k < 6; ++k)
            for (int i = 0; i + k < 6; ++i) {
                if (z[i + k] == z[i]) {
                    t[k][i] = dv[i / 2];  // only happens at k == 1 on a repeated node
                } else {
                    t[k][i] = (t[k - 1][i + 1] - t[k - 1][i]) / (z[i + k] - z[i]);
                }
            }
        hm.nodes = z;
        for (int k = 0; k < 6; ++k) hm.coef[k] = t[k][0];
        return hm;
    }

    double operator()(double s) const {
        double acc = coef[5];
        for (int k = 4; k >= 0; --k) acc = acc * (s - nodes[k]) + coef[k];
        return acc;
    }
};

}  // namespace

ImmersionPatch profile_sample_patch(const ProfileRun& run, std::size_t center_idx, const OdeParams& p) {
    const int n = p.n;
    if (center_idx == 0 || center_idx + 1 >= run.samples.size())
        throw std::invalid_argument("profile_sample_patch: need interior sample index");
    Model model =
        p.system == RevolutionSystem::euclidean ? euclidean_model(n + 1) : hyperbolic_model(n + 1, -1.0);

    const ProfileState& a = run.samples[center_idx - 1];
    const ProfileState& b = run.samples[center_idx];
    const ProfileState& c = run.samples[center_idx + 1];
    auto Gof = [&](const ProfileState& st) {
        return p.system == RevolutionSystem::euclidean ? 1.0 : std::cosh(st.r);
    };
    std::array<double, 3> sn{a.s, b.s, c.s};
    Hermite3 rI = Hermite3::fit(sn, {a.r, b.r, c.r},
                                {std::cos(a.phi), std::cos(b.phi), std::cos(c.phi)});
    Hermite3 zI = Hermite3::fit(sn, {a.z, b.z, c.z},
                                {std::sin(a.phi) / Gof(a), std::sin(b.phi) / Gof(b),
                                 std::sin(c.phi) / Gof(c)});
    double phi_center = b.phi;

    std::vector<std::array<double, 2>> dom(n);
    dom[0] = {a.s, c.s};
    for (int i = 1; i < n; ++i) dom[i] = {0.4, 2.6};

    RevolutionSystem sys = p.system;
    auto state_of = [rI, zI, phi_center](double s) {
        ProfileState st;
        st.s = s;
        st.r = rI(s);
        st.z = zI(s);
        st.phi = phi_center;  // sign reference only
        return st;
    };

    auto embed = [sys, n](const ProfileState& st, const Vec& angles) {
        Vec omega(n, 1.0);
        {
            // unit sphere S^{n-1} from n-1 angles
            VecT<double> a(angles.begin(), angles.end());
            auto s = sphere_chart(a);
            omega.assign(s.begin(), s.end());
        }
        switch (sys) {
            case RevolutionSystem::euclidean: {
                Vec x(n + 1, 0.0);
                for (int i = 0; i < n; ++i) x[i] = st.r * omega[i];
                x[n] = st.z;
                return x;
            }
            case RevolutionSystem::hyperbolic_tube: {
                Vec x(n + 2, 0.0);
                x[0] = std::cosh(st.r) * std::cosh(st.z);
                x[1] = std::cosh(st.r) * std::sinh(st.z);
                for (int i = 0; i < n; ++i) x[2 + i] = std::sinh(st.r) * omega[i];
                return x;
            }
            case RevolutionSystem::hyperbolic_equidistant: {
                Vec x(n + 2, 0.0);
                x[0] = std::cosh(st.r) * std::cosh(st.z);
                for (int i = 0; i < n; ++i) x[1 + i] = std::cosh(st.r) * std::sinh(st.z) * omega[i];
                x[n + 1] = std::sinh(st.r);
                return x;
            }
        }
        return Vec{};
    };

    auto normal_of = [sys, n](const ProfileState& st, const Vec& angles) {
        Vec omega(n, 1.0);
        {
            VecT<double> a(angles.begin(), angles.end());
            auto s = sphere_chart(a);
            omega.assign(s.begin(), s.end());
        }
        double sphi = std::sin(st.phi), cphi = std::cos(st.phi);
        switch (sys) {
            case RevolutionSystem::euclidean: {
                Vec er(n + 1, 0.0), ez(n + 1, 0.0);
                for (int i = 0; i < n; ++i) er[i] = omega[i];
                ez[n] = 1.0;
                Vec nu(n + 1);
                for (int i = 0; i <= n; ++i) nu[i] = sphi * er[i] - cphi * ez[i];
                return nu;
            }
            case RevolutionSystem::hyperbolic_tube: {
                Vec er(n + 2, 0.0), ez(n + 2, 0.0);
                er[0] = std::sinh(st.r) * std::cosh(st.z);
                er[1] = std::sinh(st.r) * std::sinh(st.z);
                for (int i = 0; i < n; ++i) er[2 + i] = std::cosh(st.r) * omega[i];
                ez[0] = std::sinh(st.z);
                ez[1] = std::cosh(st.z);
                Vec nu(n + 2);
                for (int i = 0; i < n + 2; ++i) nu[i] = sphi * er[i] - cphi * ez[i];
                return nu;
            }
            case RevolutionSystem::hyperbolic_equidistant: {
                Vec er(n + 2, 0.0), ez(n + 2, 0.0);
                er[0] = std::sinh(st.r) * std::cosh(st.z);
                for (int i = 0; i < n; ++i) er[1 + i] = std::sinh(st.r) * std::sinh(st.z) * omega[i];
                er[n + 1] = std::cosh(st.r);
                ez[0] = std::sinh(st.z);
                for (int i = 0; i < n; ++i) ez[1 + i] = std::cosh(st.z) * omega[i];
                Vec nu(n + 2);
                for (int i = 0; i < n + 2; ++i) nu[i] = sphi * er[i] - cphi * ez[i];
                return nu;
            }
        }
        return Vec{};
    };

    ImmersionPatch patch;
    patch.model = model;
    patch.n = n;
    patch.domain = dom;
    patch.map_d = [state_of, embed](const Vec& u) {
        ProfileState st = state_of(u[0]);
        return embed(st, Vec(u.begin() + 1, u.end()));
    };
    patch.normal_hint = [state_of, normal_of](const Vec& u) {
        ProfileState st = state_of(u[0]);
        return normal_of(st, Vec(u.begin() + 1, u.end()));
    };
    patch.orientation = 1.0;
    patch.label = "revolution-profile";
    return patch;
}

double profile_residual(const ProfileRun& run, const OdeParams& p, int max_samples) {
    const int n = p.n;
    double h = 1e-4;
    if (run.samples.size() < 3) throw std::invalid_argument("profile_residual: too few samples");

    std::size_t count = run.samples.size() - 2;
    std::size_t stride = std::max<std::size_t>(1, count / std::max(1, max_samples));
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < run.samples.size(); i += stride) {
        ImmersionPatch patch = profile_sample_patch(run, i, p);
        Vec u0(n, 0.9);
        u0[0] = run.samples[i].s;
        double sl = sl_of_patch(patch, u0, p.rho, h);
        worst = std::max(worst, std::abs(sl - p.theta));
    }
    return worst;
}

double closed_form_sl(FamilyKind kind, double R, double rho, int n, double c) {
    if (!(R > 0.0) || !(rho > 0.0)) throw std::domain_error("closed_form_sl: R, rho must be positive");
    bool hyper = std::abs(c + 1.0) < 1e-14;
    switch (kind) {
        case FamilyKind::euclidean_sphere:
            if (c != 0.0) throw std::invalid_argument("closed_form_sl: euclidean sphere needs c = 0");
            return n * std::atan(rho / R);
        case FamilyKind::equidistant:
            if (!hyper) throw std::invalid_argument("closed_form_sl: equidistant needs c = -1");
            return n * std::atan(rho * std::tanh(R));
        case FamilyKind::geodesic_sphere:
            if (!hyper) throw std::invalid_argument("closed_form_sl: geodesic sphere needs c = -1");
            return n * std::atan(rho / std::tanh(R));
        case FamilyKind::tube:
            if (!hyper) throw std::invalid_argument("closed_form_sl: tube needs c = -1");
            return (n - 1) * std::atan(rho / std::tanh(R)) + std::atan(rho * std::tanh(R));
    }
    throw std::invalid_argument("closed_form_sl: unknown kind");
}

ProfileState family_initial_state(FamilyKind kind, double R, const OdeParams& p) {
    ProfileState st;
    st.phi = kPi / 2.0;
    switch (kind) {
        case FamilyKind::euclidean_sphere:
            if (p.system != RevolutionSystem::euclidean)
                throw std::invalid_argument("family_initial_state: system mismatch");
            st.r = R;
            st.z = 0.0;
            break;
        case FamilyKind::geodesic_sphere:
            if (p.system != RevolutionSystem::hyperbolic_tube)
                throw std::invalid_argument("family_initial_state: system mismatch");
            st.r = R;
            st.z = 0.0;
            break;
        case FamilyKind::tube:
            if (p.system != RevolutionSystem::hyperbolic_tube)
                throw std::invalid_argument("family_initial_state: system mismatch");
            st.r = R;
            st.z = 0.0;
            break;
        case FamilyKind::equidistant:
            if (p.system != RevolutionSystem::hyperbolic_equidistant)
                throw std::invalid_argument("family_initial_state: system mismatch");
            st.r = R;
            st.z = 1.0;  // away from the rotation center
            break;
    }
    return st;
}

double tube_match_rho(int n, double R) {
    if (n < 2 || !(R > 0.0)) throw std::domain_error("tube_match_rho: need n >= 2, R > 0");
    double coth = 1.0 / std::tanh(R), tnh = std::tanh(R);
    double target = (n - 1) * kPi / 2.0;
    auto g = [&](double rho) { return (n - 1) * std::atan(rho * coth) + std::atan(rho * tnh) - target; };
    double lo = 1e-9, hi = 1.0;
    while (g(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    double rho = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        double gp = (n - 1) * coth / (1.0 + rho * rho * coth * coth) + tnh / (1.0 + rho * rho * tnh * tnh);
        rho -= g(rho) / gp;
    }
    return rho;
}

std::vector<DegenerationMember> degeneration_family(int n, const Vec& radii) {
    std::vector<DegenerationMember> out;
    Model h = hyperbolic_model(n + 1, -1.0);
    const double theta = (n - 1) * kPi / 2.0;
    for (double R : radii) {
        DegenerationMember m;
        m.R = R;
        m.rho = tube_match_rho(n, R);
        Vec spec(n, 1.0 / std::tanh(R));
        spec[n - 1] = std::tanh(R);
        m.f_tau = f_tau(SymMatrix::diag(spec), m.rho, 1.0 / (2.0 * n));

        ImmersionPatch tube = make_family({FamilyKind::tube, R}, h);
        LiftFrame lf = gauss_lift_exact(tube, tube.domain_center(), m.rho);
        m.min_horizontal_sv = horizontal_singular_values(lf).front();
        m.verticality = verticality_order(lf, 1e-6);

        double closed = closed_form_sl(FamilyKind::tube, R, m.rho, n, -1.0);
        LegendrianReport rep = legendrian_report(lf, theta);
        m.sl_residual = std::max(std::abs(closed - theta), rep.special_angle);
        out.push_back(m);
    }
    return out;
}

}  // namespace slc
