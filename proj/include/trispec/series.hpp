#pragma once

#include <array>
#include <vector>

#include "trispec/geometry.hpp"
#include "trispec/trace.hpp"
#include "trispec/transforms.hpp"

namespace tri {

enum class HalfPlane { PLUS, MINUS, AXIS };
const char* halfplane_name(HalfPlane h);

// D+ is pi/6 < arg k < 7pi/6; AXIS means within tol of the separating line
HalfPlane classify_halfplane(cplx k, double tol = 1e-12);

struct ModeRoot {
    int index = 0;
    cplx k;
    int branch = 0;  // 0: |k| >= sqrt(lambda) root, 1: the other one
    HalfPlane halfplane = HalfPlane::AXIS;
    double residual = 0.0;  // relative residual of the defining equation
};

// root of k^2 - mu k + lambda = 0; branch 0 has |k| >= sqrt(lambda) (ties: larger real part, then larger imag)
cplx quadratic_mode_root(cplx mu_target, double lambda, int branch = 0);

// k + lambda/k = 2 i n pi / l
ModeRoot symmetric_mode(int n, double lambda, double l, int branch = 0);
// k + lambda/k = 2 i m pi / (3 l)
ModeRoot dirichlet_mode(int m, double lambda, double l, int branch = 0);

enum class Resynthesis { LEGENDRE, PARTIAL_SUM };

struct SeriesOptions {
    int truncation = 64;  // N: moments n = -N..N per residue class
    Resynthesis resynthesis = Resynthesis::LEGENDRE;
    int legendre_terms = 0;  // 0: clamp(N/2, 4, 32)
    int order = kDefaultOrder;
};

struct SeriesResult {
    std::array<BoundaryTrace, 3> traces;
    std::vector<ModeRoot> roots;
    // moments[c][n + N]: class c = 0, 1, 2 holds m = 3n, 3n + 1, 3n - 1 (one class for the symmetric problem)
    std::vector<std::vector<cplx>> moments;
    int legendre_terms = 0;
    double max_imag = 0.0;  // largest imaginary part seen in the resynthesis (realness audit)
};

// q_N for the symmetric Dirichlet problem (same data f on all sides)
SeriesResult symmetric_dirichlet_dtn(const BoundaryTrace& f, double lambda, double l, const SeriesOptions& opt = {});

// moment M(k_m) = int e^{mu(k_m) s} [qN1 + abar^m qN2 + alpha^m qN3] from Dirichlet data
cplx dirichlet_mode_moment(const std::array<BoundaryTrace, 3>& f, int m, double lambda, double l,
                           int order = kDefaultOrder);
// moment N(k_m) = int e^{mu(k_m) s} [q1 + abar^m q2 + alpha^m q3] from Neumann data
cplx neumann_mode_moment(const std::array<BoundaryTrace, 3>& f, int m, double lambda, double l,
                         int order = kDefaultOrder);

SeriesResult general_dirichlet_dtn(const std::array<BoundaryTrace, 3>& f, double lambda, double l,
                                   const SeriesOptions& opt = {});
SeriesResult neumann_ntd(const std::array<BoundaryTrace, 3>& f, double lambda, double l,
                         const SeriesOptions& opt = {});

// int e^{mu s} [g1 + abar^m g2 + alpha^m g3] ds evaluated at k (direct quadrature)
cplx combined_moment(const std::array<BoundaryTrace, 3>& g, int m, cplx k, double lambda, double l,
                     int order = kDefaultOrder);

// oblique Robin modes: e^2(k) P(alpha k)/P(abar k) = e^{2 i pi m/3}
struct RobinRootOptions {
    int steps = 10;
    int max_iter = 60;
    double tol = 1e-13;
};
ModeRoot robin_mode_root(int m, double lambda, double beta, double gamma, double l, const RobinRootOptions& opt = {});
// log of e^2(k) P(alpha k)/P(abar k) e^{-2 i pi m/3}; zero at the root
cplx robin_mode_residual(cplx k, int m, double lambda, double beta, double gamma, double l);

// G(k_m): moment of q1 + abar^m q2 + alpha^m q3 from oblique Robin data f_j
cplx robin_mode_moment(const std::array<BoundaryTrace, 3>& f, const ModeRoot& root, double lambda, double beta,
                       double gamma, double l, int order = kDefaultOrder);

// T(k) of the oblique Robin elimination (includes the 1/Hbar(k) factor)
cplx robin_T(const std::array<BoundaryTrace, 3>& f, cplx k, double lambda, double beta, double gamma, double l,
             int order = kDefaultOrder);

}  // namespace tri
