#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace slc {

// Make the double overloads visible next to the jet overloads so that
// generic code written against either scalar resolves unqualified calls.
using std::acosh;
using std::asinh;
using std::atan;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;

/// Truncated second-order Taylor scalar ("2-jet") in a fixed number of
/// chart variables. Arithmetic propagates value, gradient and Hessian
/// exactly, so closed-form maps evaluated on jets yield machine-precision
/// first and second derivatives. A jet with no variables behaves as a
/// plain constant and mixes freely with seeded jets.
class Jet2 {
public:
    double v = 0.0;
    std::vector<double> g;  // gradient, size nv
    std::vector<double> h;  // Hessian, nv*nv row-major, kept symmetric

    Jet2() = default;
    Jet2(double value) : v(value) {}
    Jet2(double value, int nvars) : v(value), g(nvars, 0.0), h(std::size_t(nvars) * nvars, 0.0) {}

    int nv() const { return static_cast<int>(g.size()); }

    static Jet2 variable(double value, int index, int nvars) {
        Jet2 j(value, nvars);
        j.g[index] = 1.0;
        return j;
    }

    double grad(int i) const { return g.empty() ? 0.0 : g[i]; }
    double hess(int i, int j) const { return h.empty() ? 0.0 : h[std::size_t(i) * nv() + j]; }
};

namespace detail {

inline int joint_nv(const Jet2& a, const Jet2& b) {
    if (a.nv() == b.nv()) return a.nv();
    if (a.nv() == 0) return b.nv();
    if (b.nv() == 0) return a.nv();
    throw std::logic_error("Jet2: mixing jets of different variable counts");
}

}  // namespace detail

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    int n = detail::joint_nv(a, b);
    Jet2 r(a.v + b.v, n);
    for (int i = 0; i < n; ++i) r.g[i] = a.grad(i) + b.grad(i);
    for (int i = 0; i < n * n; ++i) r.h[i] = (a.h.empty() ? 0.0 : a.h[i]) + (b.h.empty() ? 0.0 : b.h[i]);
    return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    int n = detail::joint_nv(a, b);
    Jet2 r(a.v - b.v, n);
    for (int i = 0; i < n; ++i) r.g[i] = a.grad(i) - b.grad(i);
    for (int i = 0; i < n * n; ++i) r.h[i] = (a.h.empty() ? 0.0 : a.h[i]) - (b.h.empty() ? 0.0 : b.h[i]);
    return r;
}

inline Jet2 operator-(const Jet2& a) {
    Jet2 r = a;
    r.v = -r.v;
    for (auto& x : r.g) x = -x;
    for (auto& x : r.h) x = -x;
    return r;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    int n = detail::joint_nv(a, b);
    Jet2 r(a.v * b.v, n);
    for (int i = 0; i < n; ++i) r.g[i] = a.grad(i) * b.v + a.v * b.grad(i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.h[std::size_t(i) * n + j] = a.hess(i, j) * b.v + a.v * b.hess(i, j) +
                                          a.grad(i) * b.grad(j) + a.grad(j) * b.grad(i);
    return r;
}

/// Chain rule for a scalar function applied to a jet: needs f, f', f''.
inline Jet2 jet_apply(const Jet2& a, double f, double fp, double fpp) {
    int n = a.nv();
    Jet2 r(f, n);
    for (int i = 0; i < n; ++i) r.g[i] = fp * a.g[i];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.h[std::size_t(i) * n + j] = fp * a.hess(i, j) + fpp * a.g[i] * a.g[j];
    return r;
}

inline Jet2 inv(const Jet2& a) {
    double iv = 1.0 / a.v;
    return jet_apply(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }

inline Jet2 operator+(const Jet2& a, double s) { Jet2 r = a; r.v += s; return r; }
inline Jet2 operator+(double s, const Jet2& a) { return a + s; }
inline Jet2 operator-(const Jet2& a, double s) { Jet2 r = a; r.v -= s; return r; }
inline Jet2 operator-(double s, const Jet2& a) { return -(a - s); }
inline Jet2 operator*(const Jet2& a, double s) {
    Jet2 r = a;
    r.v *= s;
    for (auto& x : r.g) x *= s;
    for (auto& x : r.h) x *= s;
    return r;
}
inline Jet2 operator*(double s, const Jet2& a) { return a * s; }
inline Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
inline Jet2 operator/(double s, const Jet2& a) { return inv(a) * s; }

inline Jet2& operator+=(Jet2& a, const Jet2& b) { a = a + b; return a; }
inline Jet2& operator-=(Jet2& a, const Jet2& b) { a = a - b; return a; }
inline Jet2& operator*=(Jet2& a, const Jet2& b) { a = a * b; return a; }

inline Jet2 sqrt(const Jet2& a) {
    double s = std::sqrt(a.v);
    return jet_apply(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet2 exp(const Jet2& a) {
    double e = std::exp(a.v);
    return jet_apply(a, e, e, e);
}
inline Jet2 log(const Jet2& a) {
    return jet_apply(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}
inline Jet2 sin(const Jet2& a) { return jet_apply(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet2 cos(const Jet2& a) { return jet_apply(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet2 sinh(const Jet2& a) { return jet_apply(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v)); }
inline Jet2 cosh(const Jet2& a) { return jet_apply(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v)); }
inline Jet2 tanh(const Jet2& a) {
    double t = std::tanh(a.v), s = 1.0 - t * t;
    return jet_apply(a, t, s, -2.0 * t * s);
}
inline Jet2 atan(const Jet2& a) {
    double d = 1.0 + a.v * a.v;
    return jet_apply(a, std::atan(a.v), 1.0 / d, -2.0 * a.v / (d * d));
}
inline Jet2 asinh(const Jet2& a) {
    double d = 1.0 + a.v * a.v, s = std::sqrt(d);
    return jet_apply(a, std::asinh(a.v), 1.0 / s, -a.v / (d * s));
}
inline Jet2 acosh(const Jet2& a) {
    double d = a.v * a.v - 1.0, s = std::sqrt(d);
    return jet_apply(a, std::acosh(a.v), 1.0 / s, -a.v / (d * s));
}
inline Jet2 pow(const Jet2& a, double p) {
    double f = std::pow(a.v, p);
    return jet_apply(a, f, p * f / a.v, p * (p - 1.0) * f / (a.v * a.v));
}

/// sinhc(x) = sinh(x)/x with a stable small-argument branch.
inline double sinhc(double x) {
    if (std::abs(x) < 1e-6) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

/// cosh(sqrt(q)) as an analytic function of q >= 0. Smooth through q = 0,
/// which sqrt-based formulas are not; exponential maps use these so that
/// jets stay valid for vanishing displacement.
inline double cosh_sqrt(double q) {
    if (q < 1e-4) return 1.0 + q / 2.0 + q * q / 24.0 + q * q * q / 720.0;
    return std::cosh(std::sqrt(q));
}

/// sinh(sqrt(q))/sqrt(q) as an analytic function of q >= 0.
inline double sinhc_sqrt(double q) {
    if (q < 1e-4) return 1.0 + q / 6.0 + q * q / 120.0 + q * q * q / 5040.0;
    double x = std::sqrt(q);
    return std::sinh(x) / x;
}

inline Jet2 cosh_sqrt(const Jet2& a) {
    double q = a.v;
    if (q < 1e-4) {
        double f = 1.0 + q / 2.0 + q * q / 24.0 + q * q * q / 720.0;
        double fp = 0.5 + q / 12.0 + q * q / 240.0;
        double fpp = 1.0 / 12.0 + q / 120.0;
        return jet_apply(a, f, fp, fpp);
    }
    double c = std::cosh(std::sqrt(q)), s = sinhc_sqrt(q);
    // d/dq cosh(sqrt q) = sinhc(sqrt q)/2 ; d2: ((c - s)/(2q))/2
    return jet_apply(a, c, 0.5 * s, 0.25 * (c - s) / q);
}

inline Jet2 sinhc_sqrt(const Jet2& a) {
    double q = a.v;
    if (q < 1e-4) {
        double f = 1.0 + q / 6.0 + q * q / 120.0 + q * q * q / 5040.0;
        double fp = 1.0 / 6.0 + q / 60.0 + q * q / 1680.0;
        double fpp = 1.0 / 60.0 + q / 840.0;
        return jet_apply(a, f, fp, fpp);
    }
    double c = std::cosh(std::sqrt(q)), s = sinhc_sqrt(q);
    double sp = 0.5 * (c - s) / q;
    // s'' = (c' - s')/(2q) - (c - s)/(2q^2), with c' = s/2
    double spp = (0.5 * s - sp) / (2.0 * q) - (c - s) / (2.0 * q * q);
    return jet_apply(a, s, sp, spp);
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.v; }

}  // namespace slc
