#include "trispec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trispec/errors.hpp"

namespace tri {

cplx alpha_pow(int p) {
    switch (((p % 3) + 3) % 3) {
        case 0: return 1.0;
        case 1: return kAlpha;
        default: return kAlphaBar;
    }
}

cplx mu(cplx k, double lambda) {
    if (k == 0.0) throw DomainError("k = 0 is a pole of the spectral kernels");
    return k + lambda / k;
}

cplx mu_prime(cplx k, double lambda) {
    if (k == 0.0) throw DomainError("k = 0 is a pole of the spectral kernels");
    return 1.0 - lambda / (k * k);
}

cplx exp_E(cplx k, double lambda, double l) { return std::exp(mu(k, lambda) * (l / (2.0 * kSqrt3))); }

cplx exp_e(cplx k, double lambda, double l) { return std::exp(mu(k, lambda) * (0.5 * l)); }

void check_side(int j) {
    if (j < 1 || j > 3) throw DomainError("side index must be 1, 2 or 3, got " + std::to_string(j));
}

TriangleGeometry::TriangleGeometry(double side_length) : l_(side_length) {
    if (!(side_length > 0.0) || !std::isfinite(side_length))
        throw ParameterError("side length must be positive");
    const double r = l_ / kSqrt3;
    z_[0] = std::polar(r, kPi / 3.0);
    z_[1] = std::conj(z_[0]);
    z_[2] = -r;
}

cplx TriangleGeometry::vertex(int j) const {
    check_side(j);
    return z_[j - 1];
}

cplx TriangleGeometry::normal(int j) const {
    check_side(j);
    return j == 1 ? cplx(1.0) : (j == 2 ? kAlphaBar : kAlpha);
}

cplx TriangleGeometry::tangent(int j) const { return kI * normal(j); }

cplx TriangleGeometry::side_point(int j, double s) const {
    check_side(j);
    const double h = 0.5 * l_;
    // tolerate rounding at the endpoints
    if (!(s >= -h * (1.0 + 1e-14) && s <= h * (1.0 + 1e-14)))
        throw DomainError("arclength outside [-l/2, l/2]");
    return normal(j) * cplx(apothem(), s);
}

double TriangleGeometry::margin(cplx z) const {
    double m = 1e300;
    for (int j = 1; j <= 3; ++j) {
        const cplx n = normal(j);
        const double d = apothem() - (z.real() * n.real() + z.imag() * n.imag());
        m = std::min(m, d);
    }
    return m;
}

}  // namespace tri
