#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "trispec/geometry.hpp"
#include "trispec/trace.hpp"
#include "trispec/transforms.hpp"

namespace tri {

// Full boundary data: Dirichlet and Neumann traces on all three sides.
struct TraceSet {
    std::array<BoundaryTrace, 3> dirichlet;
    std::array<BoundaryTrace, 3> neumann;
    double lambda = 0.0;
    TriangleGeometry geometry{1.0};

    static TraceSet zero(double lambda, double l);
    // max mismatch of Dirichlet values at the three vertices
    double corner_mismatch() const;
    // throws ParameterError when corner_mismatch() > tol
    void assert_corners(double tol = 1e-10) const;
};

cplx rho_side(const TraceSet& t, int j, cplx k, int order = kDefaultOrder);
// rho~_1(k) = rho_1(k), rho~_2(k) = rho_2(abar k), rho~_3(k) = rho_3(alpha k)
cplx rho_tilde(const TraceSet& t, int j, cplx k, int order = kDefaultOrder);
// exp(theta) rho~_j(k), with theta folded into the quadrature exponent (no overflow)
cplx rho_tilde_shifted(const TraceSet& t, int j, cplx k, cplx theta, int order = kDefaultOrder);
cplx global_residual(const TraceSet& t, cplx k, int order = kDefaultOrder);

enum class BcKind { DIRICHLET, NEUMANN, ROBIN, POINCARE };
const char* bc_name(BcKind k);

// sin(beta) q_N + cos(beta) q_T + gamma q = data (Robin, Poincare); q = data (Dirichlet); q_N = data (Neumann)
struct SideCondition {
    BcKind kind = BcKind::DIRICHLET;
    double beta = kPi / 2;
    double gamma = 0.0;
    BoundaryTrace data;

    static SideCondition dirichlet(BoundaryTrace f);
    static SideCondition neumann(BoundaryTrace f);
    static SideCondition robin(double beta, double gamma, BoundaryTrace f);
    bool unknown_is_psi() const { return kind == BcKind::DIRICHLET; }
    // Neumann is Robin with beta = pi/2, gamma = 0
    double eff_beta() const { return kind == BcKind::NEUMANN ? kPi / 2 : beta; }
    double eff_gamma() const { return kind == BcKind::NEUMANN ? 0.0 : gamma; }
};

struct ProblemSpec {
    double lambda = 0.0;
    TriangleGeometry geometry{1.0};
    std::array<SideCondition, 3> sides;
    // q(z1), q(z2), q(z3); needed only when corner terms do not cancel
    std::optional<std::array<double, 3>> vertex_values;
    int order = kDefaultOrder;
    // assemble corner terms even when they cancel (audits only)
    bool force_corner_terms = false;

    bool all_dirichlet() const;
    // e^{2i beta_j} equal for all non-Dirichlet sides (Dirichlet sides carry no corner term)
    bool corners_cancel() const;
};

// H_j(k) = k e^{i beta} + lambda/(k e^{i beta}) - gamma and its Schwarz conjugate
cplx H_fn(cplx k, double lambda, double beta, double gamma);
cplx Hbar_fn(cplx k, double lambda, double beta, double gamma);

// Coefficients of rho_j(kappa) = a X_j(kappa) + b, and of the conjugate relation.
struct SideCoeffs {
    cplx a, b, ac, bc;
};
SideCoeffs side_coeffs(const ProblemSpec& spec, int j, cplx kappa);

// Unknown ordering: column 3p + (j-1) holds X_j(alpha^p k) for p = 0, 1, 2 (k, alpha k, abar k).
// X_j is Psi_j on Dirichlet sides and Y_j otherwise.
struct RelationSystem {
    Eigen::Matrix<cplx, 6, 9> A;
    Eigen::Matrix<cplx, 6, 1> rhs;
    std::vector<std::string> labels;
    cplx k;
};

RelationSystem relation_system(const ProblemSpec& spec, cplx k);

// the nine unknown values computed from full traces (for audits)
Eigen::Matrix<cplx, 9, 1> unknown_values(const ProblemSpec& spec, const TraceSet& t, cplx k);

}  // namespace tri
