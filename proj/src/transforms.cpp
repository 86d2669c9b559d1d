#include "trispec/transforms.hpp"

#include <cmath>

#include "trispec/errors.hpp"
#include "trispec/quadrature.hpp"

namespace tri {

namespace {

double robin_sin(double beta) {
    const double sb = std::sin(beta);
    if (std::abs(sb) < 1e-14) throw ParameterError("sin(beta) = 0: Robin kernels are undefined");
    return sb;
}

}  // namespace

const char* kernel_name(KernelKind k) {
    switch (k) {
        case KernelKind::PSI: return "PSI";
        case KernelKind::PHI: return "PHI";
        case KernelKind::F_DIRICHLET: return "F_DIRICHLET";
        case KernelKind::F_ROBIN: return "F_ROBIN";
        case KernelKind::Y: return "Y";
    }
    return "?";
}

cplx trace_moment(const BoundaryTrace& q, cplx m, cplx cv, cplx cd, double l, int base_order, cplx shift) {
    if (q.is_zero()) return 0.0;
    const int n = transform_order(m, l, base_order);
    const TraceSamples& ts = q.samples(n, l);
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx g = cv * ts.v[i] + cd * ts.dv[i];
        if (g == 0.0) continue;
        acc += ts.w[i] * std::exp(m * ts.s[i] + shift) * g;
    }
    return acc;
}

cplx spectral_transform(const BoundaryTrace& trace, KernelKind kind, cplx k, double lambda, double l, double beta,
                        int order) {
    const cplx m = mu(k, lambda);  // throws at k = 0
    switch (kind) {
        case KernelKind::PSI: return trace_moment(trace, m, 1.0, 0.0, l, order);
        case KernelKind::PHI:
        case KernelKind::F_DIRICHLET: return trace_moment(trace, m, lambda / k, 0.5, l, order);
        case KernelKind::F_ROBIN:
        case KernelKind::Y: return trace_moment(trace, m, 1.0 / (2.0 * robin_sin(beta)), 0.0, l, order);
    }
    return 0.0;
}

cplx corner_term(const BoundaryTrace& q, cplx k, double lambda, double beta, double l) {
    const double sb = robin_sin(beta);
    return std::polar(1.0 / (2.0 * sb), beta) *
           (exp_e(-k, lambda, l) * q.value(-0.5 * l) - exp_e(k, lambda, l) * q.value(0.5 * l));
}

cplx corner_term_conj(const BoundaryTrace& q, cplx k, double lambda, double beta, double l) {
    const double sb = robin_sin(beta);
    return std::polar(1.0 / (2.0 * sb), -beta) *
           (exp_e(-k, lambda, l) * q.value(-0.5 * l) - exp_e(k, lambda, l) * q.value(0.5 * l));
}

SpectralFunction::SpectralFunction(BoundaryTrace source, KernelKind kind, double lambda, double l, double beta,
                                   int order)
    : src_(std::move(source)), kind_(kind), lambda_(lambda), l_(l), beta_(beta), order_(order) {
    if (kind == KernelKind::F_ROBIN || kind == KernelKind::Y) robin_sin(beta);
}

cplx SpectralFunction::operator()(cplx k) const {
    return spectral_transform(src_, kind_, k, lambda_, l_, beta_, order_);
}

}  // namespace tri
