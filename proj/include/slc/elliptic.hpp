#pragma once

#include <array>
#include <functional>

#include "slc/linalg.hpp"

namespace slc {

struct RefinementNeeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform-grid Dirichlet problem for D u = Delta_g u + <b, du> - c u with
/// Delta_g = g^{ij} d_i d_j - g^{ij} Gamma^k_ij d_k. The reaction constant
/// is strictly positive (the -c u term is what gives uniqueness and the
/// maximum principle). dim is 1 or 2.
struct GridProblem {
    int dim = 1;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};
    std::array<int, 2> nodes{101, 1};  // nodes per axis (axis 1 unused in 1D)
    std::function<Mat(const Vec&)> metric;        // g_ij(x); identity if absent
    std::function<Vec(const Vec&)> drift;         // b^k(x); zero if absent
    double reaction = 1.0;                        // c > 0
    std::function<double(const Vec&)> boundary;   // phi on boundary nodes

    Vec node_coord(int i, int j = 0) const;
    int index(int i, int j = 0) const { return dim == 1 ? i : i * nodes[1] + j; }
    int total_nodes() const { return dim == 1 ? nodes[0] : nodes[0] * nodes[1]; }
    bool interior(int i, int j = 0) const;
};

/// Solution of D u = 0 in the interior with u = phi on the boundary.
/// Second-order central stencils; the drift term switches to one-sided
/// differences whenever the central choice would break the M-matrix sign
/// pattern. A discretization that still violates the M-matrix conditions
/// (e.g. dominant metric cross terms on a coarse grid) raises
/// RefinementNeeded.
Vec dirichlet_solve(const GridProblem& prob);

/// Apply the discretized operator to grid values (interior nodes only;
/// boundary entries of the result are zero).
Vec apply_operator(const GridProblem& prob, const Vec& u);

struct ComparisonResult {
    bool precondition_ok = false;  // D F <= tol at every interior node
    double max_interior_DF = 0.0;
    double margin = 0.0;      // min(F - u), u solved with F's boundary values
    double phi_margin = 0.0;  // min(F - u_phi) against the problem's own solution
    bool boundary_dominates = false;  // F >= phi on the boundary (within 1e-12)
    bool holds = false;               // margin >= -1e-8
};

/// Supersolution comparison: if D F <= 0 in the interior, then F dominates
/// the Dirichlet solution carrying F's own boundary values (margin, the
/// form used in limit arguments), and, when F also dominates the problem's
/// boundary data, its actual solution (phi_margin). Precondition
/// violations are reported distinctly from comparison failures.
ComparisonResult supersolution_compare(const GridProblem& prob, const Vec& F,
                                       double pre_tol = 1e-12);

GridProblem problem_from_json(const std::string& text);

/// The 1D benchmark: g = 1, b = 0, c = 1 on [0,1], phi(0) = phi(1) = 1;
/// exact solution cosh(x - 1/2)/cosh(1/2).
GridProblem cosh1d_problem(int nodes);
double cosh1d_exact(double x);

}  // namespace slc
