#pragma once

#include <functional>
#include <vector>

#include "trispec/geometry.hpp"

namespace tri {

// Point on the inversion line arg k = pi/6 (ray = +1) or 7pi/6 (ray = -1)
// with Fourier variable t: mu(alpha_bar k) = -i ray t.
cplx ray_point(double t, int ray, double lambda);

// Generalized exponential integral E_p(z) = int_1^inf e^{-z u} u^{-p} du, Re z >= 0, p >= 1.
cplx expint_p(int p, cplx z);

struct ContourOptions {
    double periods = 24.0;   // T = periods * 2 pi / l
    int panel_order = 24;    // Gauss points per panel of width 2 pi / l
    double fit_span = 2.5;   // tail fitted on [T, fit_span T]
    int fit_points = 160;
    double fit_tol = 1e-9;   // relative fit residual above this is reported
};

// J[phi](s) = (i abar / 2 pi) int_L exp(-mu(abar k) s) (1 - lambda/(abar k)^2) phi(k) dk
//           = (1/2 pi) int_R [e^{its} phi(k_+(t)) + e^{-its} phi(k_-(t))] dt.
// phi is sampled once; evaluation at many s is cheap.  For lambda = 0 only t > 0 exists.
class RayIntegral {
public:
    using Fn = std::function<cplx(cplx)>;
    RayIntegral(const Fn& phi, double lambda, double l, const ContourOptions& opt = {});

    cplx operator()(double s) const;
    // relative residual of the worst tail fit
    double tail_residual() const { return tail_res_; }
    bool accurate() const { return tail_res_ <= opt_.fit_tol; }
    double T() const { return T_; }

private:
    struct Tail {
        int ray, sign;  // sign of t on this tail
        std::vector<double> phases;
        std::vector<cplx> c;  // c[i*4 + p-1] multiplies e^{i phase t} (T/|t|)^p
    };
    void fit_tail(const Fn& phi, int ray, int sign);

    double lambda_, l_, T_;
    ContourOptions opt_;
    std::vector<double> t_, w_;
    std::vector<cplx> gp_, gm_;
    std::vector<Tail> tails_;
    double tail_res_ = 0.0;
};

// g(s) from F(k) = int e^{mu(k) s} g(s) ds: (1/2) J[F(abar .)] for lambda > 0, J for lambda = 0.
class RayInversion {
public:
    RayInversion(const std::function<cplx(cplx)>& F, double lambda, double l, const ContourOptions& opt = {});
    double operator()(double s) const;
    double tail_residual() const { return J_.tail_residual(); }

private:
    RayIntegral J_;
    double fac_;
};

double inversion_integral(const std::function<cplx(cplx)>& F, double s, double lambda, double l);

// Values on n+1 uniform points of [-l/2, l/2]; the two endpoints are extrapolated
// from interior points since the inversion integral converges only conditionally there.
std::vector<double> sample_with_endpoint_limits(const std::function<double(double)>& g, double l, int n);

}  // namespace tri
