#pragma once

#include <array>
#include <complex>
#include <numbers>

namespace tri {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt3 = std::numbers::sqrt3;
inline constexpr cplx kI{0.0, 1.0};

// alpha = exp(2 i pi / 3)
struct UnityRoot {
    cplx alpha{-0.5, 0.5 * kSqrt3};
    cplx alpha_bar{-0.5, -0.5 * kSqrt3};
};

inline constexpr cplx kAlpha{-0.5, 0.5 * kSqrt3};
inline constexpr cplx kAlphaBar{-0.5, -0.5 * kSqrt3};

// integer power of alpha, any sign
cplx alpha_pow(int p);

// mu(k) = k + lambda/k; every kernel goes through this
cplx mu(cplx k, double lambda);
cplx mu_prime(cplx k, double lambda);

// E(k) = exp(mu l / (2 sqrt3)), e(k) = exp(mu l / 2)
cplx exp_E(cplx k, double lambda, double l);
cplx exp_e(cplx k, double lambda, double l);

// Equilateral triangle centred at the origin with side 1 vertical on the right.
// Side j is z(s) = N_j (l/(2 sqrt3) + i s), N_1 = 1, N_2 = alpha_bar, N_3 = alpha.
class TriangleGeometry {
public:
    explicit TriangleGeometry(double side_length = 1.0);

    double side_length() const { return l_; }
    cplx vertex(int j) const;  // z1, z2, z3
    const std::array<cplx, 3>& vertices() const { return z_; }

    cplx side_point(int j, double s) const;
    cplx normal(int j) const;   // outward unit normal as a complex number
    cplx tangent(int j) const;  // direction of increasing s

    // distance from an interior point to the nearest side (negative outside)
    double margin(cplx z) const;
    bool contains(cplx z) const { return margin(z) > 0.0; }

    double apothem() const { return l_ / (2.0 * kSqrt3); }

private:
    double l_;
    std::array<cplx, 3> z_;
};

void check_side(int j);

}  // namespace tri
