#include "trispec/manufactured.hpp"

#include <cmath>

#include "trispec/errors.hpp"
#include "trispec/quadrature.hpp"

namespace tri {

ManufacturedSolution ManufacturedSolution::plane_wave(cplx k0, double lambda, cplx amp) {
    if (k0 == 0.0) throw ParameterError("plane wave needs k0 != 0");
    ManufacturedSolution s;
    s.terms_.push_back({amp, kI * k0, lambda / (kI * k0)});
    s.lambda_ = lambda;
    s.family_ = Family::PLANE_WAVE;
    return s;
}

ManufacturedSolution ManufacturedSolution::real_exp(double a, double b, double phase, double lambda) {
    if (std::abs(a * a - b * b - 4.0 * lambda) > 1e-12 * (1.0 + a * a + b * b))
        throw ParameterError("real exponential needs a^2 - b^2 = 4 lambda");
    // a x + i b y = ((a+b)/2) z + ((a-b)/2) conj(z)
    ManufacturedSolution s;
    s.terms_.push_back({std::polar(1.0, phase), 0.5 * (a + b), 0.5 * (a - b)});
    s.lambda_ = lambda;
    s.family_ = Family::REAL_EXP;
    return s;
}

ManufacturedSolution ManufacturedSolution::constant(double c) {
    ManufacturedSolution s;
    s.terms_.push_back({c, 0.0, 0.0});
    s.lambda_ = 0.0;
    s.family_ = Family::REAL_EXP;
    return s;
}

ManufacturedSolution ManufacturedSolution::symmetrized(const ManufacturedSolution& base) {
    ManufacturedSolution s = sum(sum(base, base.rotated(kAlpha)), base.rotated(kAlphaBar));
    s.family_ = Family::SYMMETRIZED;
    return s;
}

ManufacturedSolution ManufacturedSolution::sum(const ManufacturedSolution& a, const ManufacturedSolution& b) {
    if (a.lambda_ != b.lambda_) throw ParameterError("cannot add solutions with different lambda");
    ManufacturedSolution s = a;
    s.terms_.insert(s.terms_.end(), b.terms_.begin(), b.terms_.end());
    s.family_ = Family::SUM;
    return s;
}

ManufacturedSolution ManufacturedSolution::rotated(cplx w) const {
    ManufacturedSolution s = *this;
    for (auto& t : s.terms_) {
        t.p *= w;
        t.c *= std::conj(w);
    }
    return s;
}

ManufacturedSolution ManufacturedSolution::scaled(double f) const {
    ManufacturedSolution s = *this;
    for (auto& t : s.terms_) t.amp *= f;
    return s;
}

double ManufacturedSolution::q(cplx z) const {
    double v = 0.0;
    for (const auto& t : terms_) v += std::real(t.amp * std::exp(t.p * z + t.c * std::conj(z)));
    return v;
}

cplx ManufacturedSolution::grad(cplx z) const {
    // q_x + i q_y = 2 dq/dzbar = c u + conj(p u)
    cplx g = 0.0;
    for (const auto& t : terms_) {
        const cplx u = t.amp * std::exp(t.p * z + t.c * std::conj(z));
        g += t.c * u + std::conj(t.p * u);
    }
    return g;
}

void ManufacturedSolution::hessian(cplx z, double& qxx, double& qyy, double& qxy) const {
    cplx qzz = 0.0;
    for (const auto& t : terms_) {
        const cplx u = t.amp * std::exp(t.p * z + t.c * std::conj(z));
        qzz += 0.5 * (t.p * t.p * u + std::conj(t.c * t.c * u));
    }
    // q_xx - q_yy = 4 Re q_zz, q_xy = -2 Im q_zz, q_xx + q_yy = 4 lambda q
    const double lap = 4.0 * lambda_ * q(z);
    qxx = 2.0 * qzz.real() + 0.5 * lap;
    qyy = -2.0 * qzz.real() + 0.5 * lap;
    qxy = -2.0 * qzz.imag();
}

const char* family_name(Family f) {
    switch (f) {
        case Family::PLANE_WAVE: return "plane_wave";
        case Family::REAL_EXP: return "real_exp";
        case Family::SYMMETRIZED: return "symmetrized";
        case Family::SUM: return "sum";
    }
    return "?";
}

namespace {

// a^T H b for real 2-vectors given as complex numbers
double hform(const ManufacturedSolution& sol, cplx z, cplx a, cplx b) {
    double xx, yy, xy;
    sol.hessian(z, xx, yy, xy);
    return a.real() * (xx * b.real() + xy * b.imag()) + a.imag() * (xy * b.real() + yy * b.imag());
}

double dot(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }

}  // namespace

BoundaryTrace dirichlet_trace(const ManufacturedSolution& sol, const TriangleGeometry& g, int j) {
    const cplx t = g.tangent(j);
    return BoundaryTrace(
        j, [=](double s) { return sol.q(g.side_point(j, s)); },
        [=](double s) { return dot(sol.grad(g.side_point(j, s)), t); });
}

BoundaryTrace neumann_trace(const ManufacturedSolution& sol, const TriangleGeometry& g, int j) {
    return robin_trace(sol, g, j, kPi / 2, 0.0);
}

BoundaryTrace robin_trace(const ManufacturedSolution& sol, const TriangleGeometry& g, int j, double beta,
                          double gamma) {
    const cplx n = g.normal(j), t = g.tangent(j);
    const double sb = std::sin(beta), cb = std::abs(std::cos(beta)) < 1e-15 ? 0.0 : std::cos(beta);
    return BoundaryTrace(
        j,
        [=](double s) {
            const cplx z = g.side_point(j, s), gr = sol.grad(z);
            return sb * dot(gr, n) + cb * dot(gr, t) + gamma * sol.q(z);
        },
        [=](double s) {
            const cplx z = g.side_point(j, s);
            return sb * hform(sol, z, n, t) + cb * hform(sol, z, t, t) + gamma * dot(sol.grad(z), t);
        });
}

TraceSet manufactured_traces(const ManufacturedSolution& sol, const TriangleGeometry& g) {
    TraceSet ts;
    ts.lambda = sol.lambda();
    ts.geometry = g;
    for (int j = 1; j <= 3; ++j) {
        ts.dirichlet[j - 1] = dirichlet_trace(sol, g, j);
        ts.neumann[j - 1] = neumann_trace(sol, g, j);
    }
    return ts;
}

double compare_traces(const BoundaryTrace& a, const BoundaryTrace& b, double l, Norm norm, double corner_margin,
                      int samples) {
    if (a.side_index() != b.side_index()) throw ParameterError("compare_traces: traces live on different sides");
    const double lo = -0.5 * l + corner_margin * l, hi = 0.5 * l - corner_margin * l;
    if (!(hi > lo)) throw ParameterError("compare_traces: corner margin leaves no interval");
    if (norm == Norm::MAX) {
        double m = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double s = lo + (hi - lo) * i / std::max(1, samples - 1);
            m = std::max(m, std::abs(a.value(s) - b.value(s)));
        }
        return m;
    }
    const QuadratureRule r = gauss_legendre(std::max(samples, 16), lo, hi);
    double acc = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        const double d = a.value(r.nodes[i]) - b.value(r.nodes[i]);
        acc += r.weights[i] * d * d;
    }
    return std::sqrt(acc);
}

}  // namespace tri
