#include "trispec/bessel.hpp"

#include <cmath>
#include <numbers>

#include "trispec/errors.hpp"

namespace tri {

namespace {

constexpr double kEuler = std::numbers::egamma;

// power series, x <= 2
void k01_series(double x, double& k0, double& k1) {
    const double t = 0.25 * x * x, lg = std::log(0.5 * x);
    // I0, I1 and the harmonic-weighted sums
    double term = 1.0, i0 = 0.0, s0 = 0.0, h = 0.0;
    for (int k = 0; k < 60; ++k) {
        if (k > 0) {
            term *= t / (double(k) * k);
            h += 1.0 / k;
        }
        i0 += term;
        s0 += term * h;
        if (term < 1e-18 * i0) break;
    }
    k0 = -(lg + kEuler) * i0 + s0;
    // K1 = 1/x + I1 ln(x/2) - (x/4) sum (psi(k+1) + psi(k+2)) t^k / (k! (k+1)!)
    double tk = 1.0, i1 = 0.0, s1 = 0.0, hk = 0.0;
    for (int k = 0; k < 60; ++k) {
        if (k > 0) {
            tk *= t / (double(k) * (k + 1));
            hk += 1.0 / k;
        }
        const double psi_sum = (hk - kEuler) + (hk + 1.0 / (k + 1) - kEuler);
        i1 += tk;
        s1 += tk * psi_sum;
        if (tk < 1e-18 * i1) break;
    }
    i1 *= 0.5 * x;
    k1 = 1.0 / x + i1 * lg - 0.25 * x * s1;
}

// Steed's continued fraction for K_0, K_1, x > 2
void k01_cf2(double x, double& k0, double& k1) {
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x), d = 1.0 / b, h = d, delh = d;
    double q1 = 0.0, q2 = 1.0, q = a1, c = a1, a = -a1, s = 1.0 + q * delh;
    for (int i = 1; i < 100000; ++i) {
        a -= 2.0 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < 1e-16) break;
    }
    h *= a1;
    k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    k1 = k0 * (x + 0.5 - h) / x;
}

void k01(double x, double& k0, double& k1) {
    if (!(x > 0.0)) throw DomainError("Bessel K needs x > 0");
    if (x <= 2.0)
        k01_series(x, k0, k1);
    else
        k01_cf2(x, k0, k1);
}

}  // namespace

double bessel_k0(double x) {
    double a, b;
    k01(x, a, b);
    return a;
}

double bessel_k1(double x) {
    double a, b;
    k01(x, a, b);
    return b;
}

double kernel_K(double x, double lambda) {
    if (!(x > 0.0)) throw DomainError("kernel argument must be positive");
    return lambda > 0.0 ? bessel_k0(x) : -std::log(x);
}

double kernel_K_prime(double x, double lambda) {
    if (!(x > 0.0)) throw DomainError("kernel argument must be positive");
    return lambda > 0.0 ? -bessel_k1(x) : -1.0 / x;
}

}  // namespace tri
