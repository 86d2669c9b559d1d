#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace tri {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int degree = 0;  // exact for polynomials up to this degree
};

// n-point Gauss-Legendre rule on [-1, 1]; cached, thread-safe.
const QuadratureRule& gauss_legendre(int n);

// Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

// Rule on the side interval [-l/2, l/2].
QuadratureRule side_rule(int n, double l);

// Order used for integrands exp(mu s) f(s) on a side: at least `base`, and
// growing linearly with |mu| l so oscillation and growth stay resolved.
int transform_order(std::complex<double> mu, double l, int base);

// Legendre polynomials P_0..P_n at x (and optionally derivatives).
void legendre_values(int n, double x, double* p, double* dp = nullptr);

}  // namespace tri
