#include "slc/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slc {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive_definite(const Vec& eigs) {
    for (double l : eigs)
        if (!(l > 0.0)) throw std::domain_error("shape operator not positive definite");
}

double poly_eval(const Vec& c, double x) {
    double v = 0.0;
    for (int i = (int)c.size() - 1; i >= 0; --i) v = v * x + c[i];
    return v;
}

Vec poly_derive(const Vec& c) {
    if (c.size() <= 1) return {0.0};
    Vec d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = double(i) * c[i];
    return d;
}

double bisect_root(const Vec& c, double lo, double hi) {
    double flo = poly_eval(c, lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = poly_eval(c, mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo < 1e-15 * (1.0 + std::abs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

Vec poly_real_roots(const Vec& coeff) {
    Vec c = coeff;
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    int deg = (int)c.size() - 1;
    if (deg <= 0) return {};
    if (deg == 1) return {-c[0] / c[1]};

    // Cauchy bound on root magnitude.
    double bound = 0.0;
    for (int i = 0; i < deg; ++i) bound = std::max(bound, std::abs(c[i] / c[deg]));
    bound += 1.0;

    Vec crit = poly_real_roots(poly_derive(c));
    Vec knots = {-bound};
    for (double x : crit)
        if (x > -bound && x < bound) knots.push_back(x);
    knots.push_back(bound);
    std::sort(knots.begin(), knots.end());

    Vec roots;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double a = knots[i], b = knots[i + 1];
        double fa = poly_eval(c, a), fb = poly_eval(c, b);
        if (fa == 0.0) roots.push_back(a);
        if ((fa < 0.0) != (fb < 0.0)) roots.push_back(bisect_root(c, a, b));
    }
    if (!knots.empty() && poly_eval(c, knots.back()) == 0.0) roots.push_back(knots.back());
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-13; }),
                roots.end());
    return roots;
}

double sl_value(const Vec& eigenvalues, double r) {
    if (!(r > 0.0)) throw std::domain_error("sl_value: r must be positive");
    double s = 0.0;
    for (double l : eigenvalues) s += std::atan(r * l);
    return s;
}

double sl_value(const SymMatrix& A, double r) {
    return sl_value(eigen_sym(A).eigenvalues, r);
}

double r_theta(const Vec& eigenvalues, double theta) {
    int n = (int)eigenvalues.size();
    require_positive_definite(eigenvalues);
    if (!(theta > 0.0) || !(theta < n * kPi / 2.0))
        throw std::domain_error("r_theta: theta outside (0, n*pi/2)");

    auto f = [&](double r) { return sl_value(eigenvalues, r) - theta; };
    double lo = 1e-12, hi = 1.0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e150) throw std::runtime_error("r_theta: bracket growth failed");
    }
    for (int it = 0; it < 80 && hi - lo > 1e-14 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        double g = f(r);
        double gp = 0.0;
        for (double l : eigenvalues) gp += l / (1.0 + r * r * l * l);
        double step = g / gp;
        double rn = r - step;
        if (!(rn > 0.0)) rn = 0.5 * r;
        r = rn;
        if (std::abs(step) < 1e-16 * r) break;
    }
    return r;
}

double r_theta(const SymMatrix& A, double theta) {
    return r_theta(eigen_sym(A).eigenvalues, theta);
}

double weingarten_residual(const SymMatrix& A, double rho, double theta) {
    if (!(rho > 0.0)) throw std::domain_error("weingarten_residual: rho must be positive");
    const Vec chi = eigen_sym(A).chi;
    int n = A.dim();
    double even = 0.0, odd = 0.0, sign = 1.0;
    for (int k = 0; 2 * k <= n; ++k) {
        even += sign * std::pow(rho, 2 * k) * chi[2 * k];
        if (2 * k + 1 <= n) odd += sign * std::pow(rho, 2 * k + 1) * chi[2 * k + 1];
        sign = -sign;
    }
    return std::sin(theta) * even - std::cos(theta) * odd;
}

double special_angle_root(const SymMatrix& A) {
    int n = A.dim();
    if (n < 2) throw std::domain_error("special_angle_root: needs dim >= 2");
    Spectrum s = eigen_sym(A);
    require_positive_definite(s.eigenvalues);

    // P(r) = sum_j (-1)^j r^{n-2j} chi_{n-2j}; substitute q = r^2 after
    // stripping one factor of r when n is odd.
    Vec q(n / 2 + 1, 0.0);
    {
        double sign = 1.0;
        for (int idx = n; idx >= 0; idx -= 2) {
            q[idx / 2] += sign * s.chi[idx];
            sign = -sign;
        }
    }
    Vec roots = poly_real_roots(q);
    double best = -1.0;
    for (double x : roots)
        if (x > 0.0) best = std::max(best, x);
    if (best <= 0.0) throw std::runtime_error("special_angle_root: no positive root");
    double r = std::sqrt(best);

    // Newton polish on P(r) directly.
    for (int it = 0; it < 6; ++it) {
        double p = 0.0, dp = 0.0, sg = 1.0;
        for (int idx = n; idx >= 0; idx -= 2) {
            p += sg * std::pow(r, idx) * s.chi[idx];
            if (idx >= 1) dp += sg * idx * std::pow(r, idx - 1) * s.chi[idx];
            sg = -sg;
        }
        if (std::abs(dp) < 1e-300) break;
        double rn = r - p / dp;
        if (rn > 0.0) r = rn;
    }
    return r;
}

GaussianIdentity gaussian_identities(const SymMatrix& A) {
    int n = A.dim();
    if (n != 2 && n != 3) throw std::domain_error("gaussian_identities: dim must be 2 or 3");
    Spectrum s = eigen_sym(A);
    require_positive_definite(s.eigenvalues);
    GaussianIdentity out;
    if (n == 2) {
        double r = r_theta(s.eigenvalues, kPi / 2.0);
        out.k_check = 1.0 / (r * r) - s.chi[2];  // chi_2 = det = Gaussian curvature
    } else {
        double r = r_theta(s.eigenvalues, kPi);
        out.kh_check = 1.0 / (r * r) - s.chi[3] / s.chi[1];  // det / trace
    }
    return out;
}

}  // namespace slc
