#include "trispec/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "trispec/errors.hpp"
#include "trispec/geometry.hpp"

namespace tri {

namespace {

QuadratureRule build_rule(int n) {
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    r.degree = 2 * n - 1;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    if (n % 2 == 1) r.nodes[m - 1] = 0.0;
    return r;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
    if (n < 1) throw ParameterError("quadrature order must be positive");
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<QuadratureRule>(build_rule(n));
    return *slot;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
    const QuadratureRule& base = gauss_legendre(n);
    QuadratureRule r = base;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = c + h * base.nodes[i];
        r.weights[i] = h * base.weights[i];
    }
    return r;
}

QuadratureRule side_rule(int n, double l) { return gauss_legendre(n, -0.5 * l, 0.5 * l); }

int transform_order(std::complex<double> m, double l, int base) {
    const double need = 48.0 + 0.75 * std::abs(m) * l;
    int n = base;
    if (need > n) n = static_cast<int>(std::ceil(need));
    return (n + 15) / 16 * 16;
}

void legendre_values(int n, double x, double* p, double* dp) {
    p[0] = 1.0;
    if (dp) dp[0] = 0.0;
    if (n == 0) return;
    p[1] = x;
    if (dp) dp[1] = 1.0;
    for (int j = 1; j < n; ++j) {
        p[j + 1] = ((2.0 * j + 1.0) * x * p[j] - j * p[j - 1]) / (j + 1);
        // P'_{j+1} = P'_{j-1} + (2j+1) P_j
        if (dp) dp[j + 1] = dp[j - 1] + (2.0 * j + 1.0) * p[j];
    }
}

}  // namespace tri
