#pragma once

#include <string>
#include <vector>

#include "trispec/global_relation.hpp"

namespace tri {

enum class Family { PLANE_WAVE, REAL_EXP, SYMMETRIZED, SUM };

// Exact solutions of q_xx + q_yy = 4 lambda q built from terms Re(A exp(p z + c conj z)), p c = lambda.
class ManufacturedSolution {
public:
    struct Term {
        cplx amp, p, c;
    };

    // exp(i k0 z + lambda conj(z)/(i k0))
    static ManufacturedSolution plane_wave(cplx k0, double lambda, cplx amp = 1.0);
    // exp(a x) cos(b y + phase), needs a^2 - b^2 = 4 lambda
    static ManufacturedSolution real_exp(double a, double b, double phase, double lambda);
    static ManufacturedSolution constant(double c);  // lambda = 0 only
    // sum of q(w z) over w = 1, alpha, abar
    static ManufacturedSolution symmetrized(const ManufacturedSolution& base);
    static ManufacturedSolution sum(const ManufacturedSolution& a, const ManufacturedSolution& b);

    ManufacturedSolution rotated(cplx w) const;  // z -> q(w z), |w| = 1
    ManufacturedSolution scaled(double s) const;

    double q(cplx z) const;
    cplx grad(cplx z) const;  // q_x + i q_y
    void hessian(cplx z, double& qxx, double& qyy, double& qxy) const;

    double lambda() const { return lambda_; }
    Family family() const { return family_; }
    const std::vector<Term>& terms() const { return terms_; }

private:
    std::vector<Term> terms_;
    double lambda_ = 0.0;
    Family family_ = Family::SUM;
};

const char* family_name(Family f);

BoundaryTrace dirichlet_trace(const ManufacturedSolution& sol, const TriangleGeometry& g, int j);
BoundaryTrace neumann_trace(const ManufacturedSolution& sol, const TriangleGeometry& g, int j);
// sin(beta) q_N + cos(beta) q_T + gamma q on side j
BoundaryTrace robin_trace(const ManufacturedSolution& sol, const TriangleGeometry& g, int j, double beta,
                          double gamma);

TraceSet manufactured_traces(const ManufacturedSolution& sol, const TriangleGeometry& g);

enum class Norm { MAX, L2 };

// discrepancy on [-l/2 + c, l/2 - c], c = corner_margin * l; MAX samples a uniform grid, L2 uses Gauss nodes
double compare_traces(const BoundaryTrace& a, const BoundaryTrace& b, double l, Norm norm = Norm::MAX,
                      double corner_margin = 0.02, int samples = 401);

}  // namespace tri
