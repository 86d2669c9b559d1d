#pragma once

#include <random>
#include <vector>

#include "trispec/geometry.hpp"

namespace tri::test {

// random k in the annulus rmin <= |k| <= rmax
inline cplx random_k(std::mt19937_64& rng, double rmin, double rmax) {
    std::uniform_real_distribution<double> r(rmin, rmax), th(0.0, 2.0 * kPi);
    return std::polar(r(rng), th(rng));
}

// n points of the triangle with margin >= min_margin * l, fixed seed
inline std::vector<cplx> interior_points(const TriangleGeometry& g, int n, double min_margin, unsigned seed = 7) {
    std::mt19937_64 rng(seed);
    const double l = g.side_length();
    std::uniform_real_distribution<double> x(-l / kSqrt3, 0.5 * l / kSqrt3), y(-0.5 * l, 0.5 * l);
    std::vector<cplx> out;
    while (static_cast<int>(out.size()) < n) {
        const cplx z(x(rng), y(rng));
        if (g.margin(z) >= min_margin * l) out.push_back(z);
    }
    return out;
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace tri::test
