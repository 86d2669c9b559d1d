#pragma once

#include "trispec/geometry.hpp"
#include "trispec/trace.hpp"

namespace tri {

inline constexpr int kDefaultOrder = 64;

enum class KernelKind { PSI, PHI, F_DIRICHLET, F_ROBIN, Y };

const char* kernel_name(KernelKind k);

// int_{-l/2}^{l/2} exp(mu s + shift) (cv q(s) + cd q'(s)) ds, order grown with |mu| l
cplx trace_moment(const BoundaryTrace& q, cplx mu, cplx cv, cplx cd, double l, int base_order = kDefaultOrder,
                  cplx shift = 0.0);

// PSI:         int e^{mu s} q ds                      (q a Neumann trace)
// PHI:         int e^{mu s} (q'/2 + lambda q / k) ds  (q a Dirichlet trace)
// F_DIRICHLET: same kernel as PHI applied to given Dirichlet data
// F_ROBIN:     int e^{mu s} f ds / (2 sin beta)
// Y:           int e^{mu s} q ds / (2 sin beta)
cplx spectral_transform(const BoundaryTrace& trace, KernelKind kind, cplx k, double lambda, double l,
                        double beta = kPi / 2, int order = kDefaultOrder);

// C_j(k) = e^{i beta}/(2 sin beta) [e(-k) q(-l/2) - e(k) q(l/2)]
cplx corner_term(const BoundaryTrace& q, cplx k, double lambda, double beta, double l);
// same with e^{-i beta}: the corner part of the Schwarz conjugate relation
cplx corner_term_conj(const BoundaryTrace& q, cplx k, double lambda, double beta, double l);

class SpectralFunction {
public:
    SpectralFunction(BoundaryTrace source, KernelKind kind, double lambda, double l, double beta = kPi / 2,
                     int order = kDefaultOrder);
    cplx operator()(cplx k) const;
    KernelKind kind() const { return kind_; }
    const BoundaryTrace& source() const { return src_; }
    double lambda() const { return lambda_; }
    double beta() const { return beta_; }

private:
    BoundaryTrace src_;
    KernelKind kind_;
    double lambda_, l_, beta_;
    int order_;
};

}  // namespace tri
