#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "trispec/contour.hpp"
#include "trispec/global_relation.hpp"
#include "trispec/series.hpp"

namespace tri {

// sin(beta_j) q_N + cos(beta_j) q_T + gamma_j q = f_j on side j
struct PoincareSpec {
    double lambda = 0.0;
    double l = 1.0;
    std::array<double, 3> beta{kPi / 2, kPi / 2, kPi / 2};
    std::array<double, 3> gamma{0.0, 0.0, 0.0};

    static PoincareSpec oblique(double lambda, double l, double beta, double gamma);
    // Robin gamma = sqrt(3 lambda) on side 1, Neumann on sides 2 and 3
    static PoincareSpec mixed_nr(double lambda, double l);
    ProblemSpec problem(const std::array<BoundaryTrace, 3>& data) const;
};

struct HP {
    cplx H, P;
};
// H = k e^{i beta} + lambda/(k e^{i beta}) - gamma, P = H / conj(H(conj k)); throws DomainError at a pole of P
HP H_and_P(cplx k, double lambda, double beta, double gamma);
// P'/P
cplx dlogP(cplx k, double lambda, double beta, double gamma);

struct AdmissibilityReport {
    bool integral_solvable = false;
    bool corner_cancelling = false;
    int n = 0, m = 0;                 // beta_2 = beta_1 + n pi/3, beta_3 = beta_1 + m pi/3
    std::vector<std::string> violated;  // e.g. "beta-offset", "corner-cancel"
    std::string message() const;
};
AdmissibilityReport admissibility_check(const PoincareSpec& spec, double tol = 1e-10);

// target * Y_2(abar k) = sum_j coeff[j] Y_j(k) + inhom
struct EliminationResult {
    cplx target = 1.0;
    std::array<cplx, 3> coeff{};
    cplx inhom = 0.0;
    bool has_inhom = true;
    double condition = 0.0;  // of the equilibrated 6x6 block (numeric path)

    cplx ratio(int j) const { return coeff[j] / target; }
    cplx inhom_ratio() const { return inhom / target; }
};

// Numeric route: solve the 6x6 block for the unknowns at alpha k, abar k.
// Returns target = 1.  Works for every side kind (X_j = Psi_j on Dirichlet sides).
EliminationResult eliminate_numeric(const ProblemSpec& spec, cplx k);

// Oblique Robin closed form (equal beta, gamma on all sides): bracket coefficients and T.
EliminationResult eliminate_oblique_closed(const std::array<BoundaryTrace, 3>& f, double lambda, double beta,
                                           double gamma, double l, cplx k, int order = kDefaultOrder);

// General Poincare closed form of D H_2(abar k) and Gamma_j H_j(k); no inhomogeneity.
EliminationResult eliminate_poincare_closed(const PoincareSpec& spec, cplx k);

// known part of Y_2(abar k) (all Y_j(k) set to zero), numeric route
cplx y2_known(const ProblemSpec& spec, cplx k);

// Q(k) = e^6(k) prod P_j(alpha k) / prod P_j(abar k); roots of D are Q = 1
cplx poincare_Q(const PoincareSpec& spec, cplx k);

struct HalfPlaneRootSet {
    std::vector<ModeRoot> plus, minus;
    double r_in = 0.0, r_out = 0.0;  // annulus that was audited
    int audited_count = 0;           // argument-principle integer
    double max_residual = 0.0;
    std::vector<ModeRoot> all() const;
};

struct RootSearchOptions {
    int steps = 8;
    int max_iter = 60;
    double tol = 1e-14;
};

// Roots of D with |Im mu| up to about 2 pi (count + 2)/(3 l), audited by the argument principle.
HalfPlaneRootSet D_root_set(const PoincareSpec& spec, int count, const RootSearchOptions& opt = {});

// winding number of the cleared D around the circle |k| = r
int winding_count(const PoincareSpec& spec, double r);

struct IntegralOptions {
    int roots = 240;  // residue terms: |n| or |m| cut-off
    ContourOptions contour;
    int order = kDefaultOrder;
};

// Neumann trace of the symmetric Dirichlet problem (same f on every side) from the
// contour integral of G/Delta plus residue sums over the zeros of Delta.
class SymmetricDirichletIntegral {
public:
    SymmetricDirichletIntegral(const BoundaryTrace& f, double lambda, double l, const IntegralOptions& opt = {});
    double operator()(double s) const;
    double tail_residual() const { return J_->tail_residual(); }
    const std::vector<ModeRoot>& roots() const { return roots_; }

private:
    BoundaryTrace f_;
    double lambda_, l_;
    IntegralOptions opt_;
    std::unique_ptr<RayIntegral> J_;
    std::vector<ModeRoot> roots_;
    std::vector<cplx> gs_;      // G(s_n) e^{-c_n}
    std::vector<double> cn_;    // c_n = |Re mu(abar s_n)| l / 2
};

// e^{-c} G(k), G = A + B of the symmetric Dirichlet relations with F the Dirichlet kernel of f
cplx scaled_G(const BoundaryTrace& f, cplx k, double lambda, double l, double c, int order = kDefaultOrder);

double symmetric_dirichlet_integral(const BoundaryTrace& f, double lambda, double l, double s);

// Dirichlet value on side 2 for Robin (gamma = sqrt(3 lambda)) on side 1 and Neumann on sides 2, 3.
class MixedNRTrace {
public:
    MixedNRTrace(const std::array<BoundaryTrace, 3>& f, double lambda, double l, const IntegralOptions& opt = {});
    double operator()(double s) const;
    const HalfPlaneRootSet& roots() const { return roots_; }
    double tail_residual() const { return J_->tail_residual(); }
    // smallest |1 + E^6/P| style denominator met in the residue sums
    double min_denominator() const { return min_den_; }

private:
    double lambda_, l_;
    std::unique_ptr<RayIntegral> J_;
    HalfPlaneRootSet roots_;
    std::vector<cplx> k_, res_;  // roots and residue factors (with denominators folded in)
    std::vector<int> sign_;
    double min_den_ = 1e300;
};

double mixed_nr_trace(const std::array<BoundaryTrace, 3>& f, double lambda, double l, double s);

// Side-3 Dirichlet value by reflection in the real axis: solve with f1(-s), f3(-s), f2(-s).
std::array<BoundaryTrace, 3> reflect_mixed_data(const std::array<BoundaryTrace, 3>& f);

}  // namespace tri
