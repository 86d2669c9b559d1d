#pragma once

#include <functional>

#include "trispec/global_relation.hpp"

namespace tri {

struct InteriorPoint {
    cplx z;
    double margin = 0.0;  // distance to the nearest side
    InteriorPoint(cplx z_, const TriangleGeometry& g);
};

// Ray from 0 to infinity at a fixed argument; the integrand is sampled on
// Gauss panels in log r, extended in both directions until it has decayed.
struct RayRule {
    double angle = 0.0;
    int panel_order = 20;
    double r_floor = 0.0;     // lower cutoff (set from the side length when zero)
    double tail_tol = 1e-16;  // relative size of the last panels that ends the march
    int max_panels = 40000;
};

struct RayResult {
    cplx value;
    double tail = 0.0;  // |contribution| of the last panel, relative to the running scale
    double r_lo = 0.0, r_hi = 0.0;
};

// int_ray g(k) dk/k (over_k) or int_ray g(k) dk; `L` bounds the phase rate of g in r (a length)
RayResult integrate_ray(const std::function<cplx(cplx)>& g, const RayRule& rule, double L, double lambda,
                        bool over_k);

// the three rays of the interior representations: -pi/2, pi/6, 5 pi/6
inline constexpr double kRayAngles[3] = {-kPi / 2, kPi / 6, 5 * kPi / 6};

struct InteriorOptions {
    double min_margin = 1e-3;  // in units of l; below this the quadratures are not trusted
    int panel_order = 16;
    int order = kDefaultOrder;
    double tail_tol = 1e-9;    // relative ray tail above this raises NumericalError
};

// Classical Green representation with the normal kernel derivative in closed form.
double greens_eval(const TraceSet& t, cplx z, const InteriorOptions& opt = {});

// Ray representation (lambda > 0) built from rho~_j.
double fokas_eval(const TraceSet& t, cplx z, const InteriorOptions& opt = {});

// dq/dz for lambda = 0 from the ray representation of the Laplace case.
cplx dq_dz(const TraceSet& t, cplx z, const InteriorOptions& opt = {});

// Symmetric Dirichlet problem: known-data ray integrals plus the residue series over the
// zeros s_n of Delta (full weight for Im s_n > 0, half weights split over two rays otherwise).
struct SymmetricInteriorOptions {
    InteriorOptions interior;
    int max_modes = 400;      // |n| cut-off of the residue series
    double series_tol = 1e-16;
};
struct SymmetricInteriorValue {
    double value = 0.0;
    double known = 0.0;     // ray integrals of the given data
    double residues = 0.0;  // unknown part J
    int modes_used = 0;
    double last_term = 0.0;
};
SymmetricInteriorValue symmetric_interior_detail(const BoundaryTrace& f, double lambda, double l, cplx z,
                                                 const SymmetricInteriorOptions& opt = {});
double symmetric_interior(const BoundaryTrace& f, double lambda, double l, cplx z,
                          const SymmetricInteriorOptions& opt = {});

// exp(+-2 sqrt((n pi/l)^2 + lambda) x) exp(-2 i n pi y / l)
cplx eigensolution(int n, double lambda, double l, int sign, cplx z);
// the same through exp(i s z + lambda conj(z)/(i s)); sign + uses Im s < 0
cplx eigensolution_exponential(int n, double lambda, double l, int sign, cplx z);

}  // namespace tri
