#pragma once

namespace tri {

// Modified Bessel functions of the second kind, orders 0 and 1, x > 0.
double bessel_k0(double x);
double bessel_k1(double x);

// Free-space kernel: K_0(x) for lambda > 0, -ln x for lambda = 0.
double kernel_K(double x, double lambda);
// d/dx of kernel_K
double kernel_K_prime(double x, double lambda);

}  // namespace tri
