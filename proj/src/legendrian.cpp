#include "slc/legendrian.hpp"

#include <cmath>
#include <stdexcept>

#include "slc/curvature.hpp"

namespace slc {

LiftFrame lift_from_fundamental(const ImmersionPatch& patch, const FundamentalData& fd, double rho) {
    if (!(rho > 0.0)) throw std::domain_error("gauss_lift: rho must be positive");
    const Model& model = patch.model;
    const int n = patch.n;

    LiftFrame lf;
    lf.n = n;
    lf.rho = rho;
    lf.point.base = fd.point;
    lf.point.vector = vscale(rho, fd.normal);
    lf.point.rho = rho;
    lf.shape = fd.shape;

    lf.tangent_basis.resize(n);
    for (int k = 0; k < n; ++k) {
        lf.tangent_basis[k].horizontal = fd.tangents[k];
        lf.tangent_basis[k].vertical = vscale(rho, fd.dN[k]);
    }

    // Frame E_1..E_n: complete the unit normal to an orthonormal tangent
    // basis; the structure forms do not depend on the completion chosen.
    std::vector<Vec> full = ortho_frame(model, fd.point, fd.normal);
    lf.frame.assign(full.begin(), full.end() - 1);

    lf.H = mat_zero<double>(n, n);
    lf.V = mat_zero<double>(n, n);
    lf.contact_pairing.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            lf.H[i][k] = inner(model, fd.point, lf.tangent_basis[k].horizontal, lf.frame[i]);
            lf.V[i][k] = inner(model, fd.point, lf.tangent_basis[k].vertical, lf.frame[i]);
        }
    for (int k = 0; k < n; ++k)
        lf.contact_pairing[k] =
            inner(model, fd.point, lf.point.vector, lf.tangent_basis[k].horizontal);

    lf.omega_gram = mat_zero<double>(n, n);
    lf.m_gram = mat_zero<double>(n, n);
    lf.lifted_gram = mat_zero<double>(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double hv = 0.0, vh = 0.0, hh = 0.0, vv = 0.0;
            for (int i = 0; i < n; ++i) {
                hv += lf.H[i][j] * lf.V[i][k];
                vh += lf.V[i][j] * lf.H[i][k];
                hh += lf.H[i][j] * lf.H[i][k];
                vv += lf.V[i][j] * lf.V[i][k];
            }
            lf.omega_gram[j][k] = vh - hv;
            lf.m_gram[j][k] = 0.5 * (hv + vh);
            lf.lifted_gram[j][k] = hh + vv;
        }

    std::vector<std::vector<std::complex<double>>> C(n, std::vector<std::complex<double>>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) C[i][k] = {lf.H[i][k], lf.V[i][k]};
    lf.omega_det = complex_lu_det(C);
    return lf;
}

LiftFrame gauss_lift(const ImmersionPatch& patch, const Vec& u, double rho, double h) {
    return lift_from_fundamental(patch, fundamental_forms(patch, u, h), rho);
}

LiftFrame gauss_lift_exact(const ImmersionPatch& patch, const Vec& u, double rho) {
    return lift_from_fundamental(patch, fundamental_forms_exact(patch, u), rho);
}

LegendrianReport legendrian_report(const LiftFrame& frame, double theta) {
    LegendrianReport rep;
    for (double c : frame.contact_pairing) rep.contact = std::max(rep.contact, std::abs(c));
    rep.symplectic = max_abs(frame.omega_gram);
    rep.positivity_min = jacobi_eigen(frame.m_gram).eigenvalues.front();

    std::complex<double> z = frame.omega_det * std::exp(std::complex<double>(0.0, -theta));
    double mod = std::abs(frame.omega_det);
    rep.special_angle = mod > 0.0 ? std::abs(z.imag()) / mod : 0.0;
    return rep;
}

LiftedMetricCheck lifted_metric_check(const ImmersionPatch& patch, const Vec& u, double rho, bool exact,
                                      double h) {
    FundamentalData fd = exact ? fundamental_forms_exact(patch, u) : fundamental_forms(patch, u, h);
    LiftFrame lf = lift_from_fundamental(patch, fd, rho);
    const int n = patch.n;

    // g((I + rho^2 A^2) . , .) = G + rho^2 II G^{-1} II in chart components.
    Mat target = matmul(fd.second_form, matmul(inverse(fd.first_form), fd.second_form));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) target[i][j] = fd.first_form[i][j] + rho * rho * target[i][j];

    LiftedMetricCheck out;
    double resid = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) resid = std::max(resid, std::abs(lf.lifted_gram[i][j] - target[i][j]));
    out.residual = resid;
    out.dual_metric = inverse(lf.lifted_gram);
    return out;
}

double f_tau(const SymMatrix& A, double rho, double tau) {
    int n = A.dim();
    if (!(tau > 0.0) || !(tau <= 1.0 / (2.0 * n)))
        throw std::domain_error("f_tau: tau must lie in (0, 1/(2n)]");
    if (!(rho > 0.0)) throw std::domain_error("f_tau: rho must be positive");
    double log_det = 0.0;
    for (double l : eigen_sym(A).eigenvalues) log_det += std::log1p(rho * rho * l * l);
    return std::exp(-tau * log_det);
}

Vec horizontal_singular_values(const LiftFrame& frame) {
    const int n = frame.n;
    // Orthonormalize the basis in the lifted metric: with Ghat = H^T H + V^T V,
    // the horizontal components of an orthonormalized basis are H Ghat^{-1/2};
    // its singular values are the roots of the eigenvalues of
    // Ghat^{-1/2} H^T H Ghat^{-1/2}.
    EigenDecomposition eg = jacobi_eigen(frame.lifted_gram);
    Mat isqrt = mat_zero<double>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += eg.vectors[i][k] * eg.vectors[j][k] / std::sqrt(eg.eigenvalues[k]);
            isqrt[i][j] = s;
        }
    Mat HtH = matmul(transpose(frame.H), frame.H);
    Mat M = matmul(isqrt, matmul(HtH, isqrt));
    Vec sv = jacobi_eigen(M).eigenvalues;
    for (auto& x : sv) x = std::sqrt(std::max(0.0, x));
    return sv;
}

int verticality_order(const LiftFrame& frame, double tol) {
    Vec sv = horizontal_singular_values(frame);
    int k = 0;
    for (double s : sv)
        if (s < tol) ++k;
    return k;
}

LiftFrame normal_sphere_bundle_frame(int n, double rho, double z, const Vec& angles) {
    if ((int)angles.size() != n - 1)
        throw std::invalid_argument("normal_sphere_bundle_frame: need n-1 fiber angles");
    Model model = hyperbolic_model(n + 1, -1.0);
    const int dim = n + 2;

    // geodesic gamma(z) = (cosh z, sinh z, 0, ...); unit normal fiber
    // direction from the sphere chart in the last n coordinates.
    Vec gamma(dim, 0.0), gdot(dim, 0.0);
    gamma[0] = std::cosh(z);
    gamma[1] = std::sinh(z);
    gdot[0] = std::sinh(z);
    gdot[1] = std::cosh(z);

    VecT<Jet2> aj(n - 1);
    for (int i = 0; i < n - 1; ++i) aj[i] = Jet2::variable(angles[i], i, n - 1);
    VecT<Jet2> Sj = sphere_chart(aj);  // S^{n-1} in R^n

    Vec nu(dim, 0.0);
    for (int i = 0; i < n; ++i) nu[2 + i] = Sj[i].v;

    LiftFrame lf;
    lf.n = n;
    lf.rho = rho;
    lf.point.base = gamma;
    lf.point.vector = vscale(rho, nu);
    lf.point.rho = rho;
    lf.shape = SymMatrix(1);

    // Tangent basis: d_z is purely horizontal (the fiber frame is parallel
    // along the geodesic); fiber directions are purely vertical.
    lf.tangent_basis.resize(n);
    lf.tangent_basis[0].horizontal = gdot;
    lf.tangent_basis[0].vertical = Vec(dim, 0.0);
    for (int k = 1; k < n; ++k) {
        Vec dv(dim, 0.0);
        for (int i = 0; i < n; ++i) dv[2 + i] = rho * Sj[i].grad(k - 1);
        lf.tangent_basis[k].horizontal = Vec(dim, 0.0);
        lf.tangent_basis[k].vertical = dv;
    }

    std::vector<Vec> full = ortho_frame(model, gamma, nu);
    lf.frame.assign(full.begin(), full.end() - 1);

    lf.H = mat_zero<double>(n, n);
    lf.V = mat_zero<double>(n, n);
    lf.contact_pairing.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            lf.H[i][k] = inner(model, gamma, lf.tangent_basis[k].horizontal, lf.frame[i]);
            lf.V[i][k] = inner(model, gamma, lf.tangent_basis[k].vertical, lf.frame[i]);
        }
    for (int k = 0; k < n; ++k)
        lf.contact_pairing[k] = inner(model, gamma, lf.point.vector, lf.tangent_basis[k].horizontal);
    lf.omega_gram = mat_zero<double>(n, n);
    lf.m_gram = mat_zero<double>(n, n);
    lf.lifted_gram = mat_zero<double>(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double hv = 0.0, vh = 0.0, hh = 0.0, vv = 0.0;
            for (int i = 0; i < n; ++i) {
                hv += lf.H[i][j] * lf.V[i][k];
                vh += lf.V[i][j] * lf.H[i][k];
                hh += lf.H[i][j] * lf.H[i][k];
                vv += lf.V[i][j] * lf.V[i][k];
            }
            lf.omega_gram[j][k] = vh - hv;
            lf.m_gram[j][k] = 0.5 * (hv + vh);
            lf.lifted_gram[j][k] = hh + vv;
        }
    std::vector<std::vector<std::complex<double>>> C(n, std::vector<std::complex<double>>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) C[i][k] = {lf.H[i][k], lf.V[i][k]};
    lf.omega_det = complex_lu_det(C);
    return lf;
}

}  // namespace slc
