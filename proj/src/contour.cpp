#include "trispec/contour.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "trispec/errors.hpp"
#include "trispec/quadrature.hpp"

namespace tri {

cplx ray_point(double t, int ray, double lambda) {
    if (lambda < 0.0) throw DomainError("inversion contour needs lambda >= 0");
    // |k| - lambda/|k| = t, solved without cancellation
    const double u = t;
    const double disc = std::sqrt(u * u + 4.0 * lambda);
    const double r = u >= 0.0 ? 0.5 * (u + disc) : 2.0 * lambda / (disc - u);
    if (!(r > 0.0)) throw DomainError("t = 0 maps to k = 0 when lambda = 0");
    return double(ray) * std::polar(r, kPi / 6.0);
}

cplx expint_p(int p, cplx z) {
    if (p < 1) throw DomainError("expint_p needs p >= 1");
    if (z.real() < 0.0) throw DomainError("expint_p needs Re z >= 0");
    if (z == 0.0) {
        if (p == 1) throw DomainError("E_1 diverges at 0");
        return 1.0 / (p - 1.0);
    }
    const double eps = 1e-16;
    if (std::abs(z) > 1.0) {
        // modified Lentz continued fraction
        cplx b = z + double(p);
        cplx c = 1.0 / 1e-300;
        cplx d = 1.0 / b;
        cplx h = d;
        for (int i = 1; i < 100000; ++i) {
            const double an = -double(i) * (p - 1 + i);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            const cplx del = c * d;
            h *= del;
            if (std::abs(del - 1.0) < eps) return h * std::exp(-z);
        }
        throw NumericalError("expint_p continued fraction did not converge");
    }
    // power series
    const double euler = 0.5772156649015328606;
    cplx ans = p - 1 != 0 ? cplx(1.0 / (p - 1)) : -std::log(z) - euler;
    cplx fact = 1.0;
    for (int i = 1; i < 1000; ++i) {
        fact *= -z / double(i);
        cplx del;
        if (i != p - 1) {
            del = -fact / double(i - p + 1);
        } else {
            double psi = -euler;
            for (int ii = 1; ii <= p - 1; ++ii) psi += 1.0 / ii;
            del = fact * (-std::log(z) + psi);
        }
        ans += del;
        if (std::abs(del) < std::abs(ans) * eps) return ans;
    }
    throw NumericalError("expint_p series did not converge");
}

RayIntegral::RayIntegral(const Fn& phi, double lambda, double l, const ContourOptions& opt)
    : lambda_(lambda), l_(l), opt_(opt) {
    if (lambda < 0.0) throw DomainError("inversion contour needs lambda >= 0");
    if (!(l > 0.0)) throw ParameterError("side length must be positive");
    const double width = 2.0 * kPi / l;
    const int npan = static_cast<int>(std::ceil(opt.periods));
    T_ = npan * width;
    const int first = lambda > 0.0 ? -npan : 0;
    const QuadratureRule& g = gauss_legendre(opt.panel_order);
    for (int p = first; p < npan; ++p) {
        const double a = p * width, h = 0.5 * width;
        for (int i = 0; i < opt.panel_order; ++i) {
            t_.push_back(a + h + h * g.nodes[i]);
            w_.push_back(h * g.weights[i]);
        }
    }
    gp_.resize(t_.size());
    gm_.resize(t_.size());
    for (size_t i = 0; i < t_.size(); ++i) {
        gp_[i] = phi(ray_point(t_[i], 1, lambda));
        gm_[i] = phi(ray_point(t_[i], -1, lambda));
        if (!std::isfinite(std::abs(gp_[i])) || !std::isfinite(std::abs(gm_[i])))
            throw NumericalError("non-finite integrand on the inversion contour at t = " + std::to_string(t_[i]));
    }
    for (int ray : {1, -1}) {
        fit_tail(phi, ray, 1);
        if (lambda > 0.0) fit_tail(phi, ray, -1);
    }
}

void RayIntegral::fit_tail(const Fn& phi, int ray, int sign) {
    const int m = opt_.fit_points;
    std::vector<double> ts(m);
    Eigen::VectorXcd rhs(m);
    double scale = 0.0;
    for (int i = 0; i < m; ++i) {
        // Chebyshev spacing on [T, span T]
        const double x = 0.5 * (1.0 - std::cos(kPi * (i + 0.5) / m));
        ts[i] = T_ * (1.0 + (opt_.fit_span - 1.0) * x);
        rhs[i] = phi(ray_point(sign * ts[i], ray, lambda_));
        if (!std::isfinite(std::abs(rhs[i]))) throw NumericalError("non-finite integrand in contour tail");
        scale = std::max(scale, std::abs(rhs[i]));
    }
    const double h = 0.5 * l_;
    const std::vector<std::vector<double>> candidates = {
        {-h, h}, {-h, h, -3 * h, 3 * h}, {0.0, -h, h, -2 * h, 2 * h, -3 * h, 3 * h}};
    Tail best;
    double best_res = 1e300;
    for (const auto& ph : candidates) {
        const int nc = 4 * static_cast<int>(ph.size());
        Eigen::MatrixXcd M(m, nc);
        for (int i = 0; i < m; ++i)
            for (size_t a = 0; a < ph.size(); ++a)
                for (int p = 1; p <= 4; ++p)
                    M(i, 4 * a + p - 1) = std::exp(kI * (ph[a] * sign * ts[i])) * std::pow(T_ / ts[i], p);
        Eigen::VectorXcd c = M.colPivHouseholderQr().solve(rhs);
        const double res = scale > 0.0 ? (M * c - rhs).cwiseAbs().maxCoeff() / scale : 0.0;
        if (res < best_res * 0.1) {
            best_res = res;
            best.phases = ph;
            best.c.assign(c.data(), c.data() + nc);
        }
        if (best_res <= opt_.fit_tol) break;
    }
    best.ray = ray;
    best.sign = sign;
    tails_.push_back(best);
    tail_res_ = std::max(tail_res_, best_res);
}

cplx RayIntegral::operator()(double s) const {
    cplx acc = 0.0;
    for (size_t i = 0; i < t_.size(); ++i)
        acc += w_[i] * (std::exp(kI * (t_[i] * s)) * gp_[i] + std::exp(-kI * (t_[i] * s)) * gm_[i]);
    for (const Tail& tl : tails_) {
        const double nu = tl.ray * s;  // e^{i ray s t}
        for (size_t a = 0; a < tl.phases.size(); ++a) {
            // int over sign*t in [T, inf) of e^{i (nu + phase) t} (T/|t|)^p
            const double om = tl.sign * (nu + tl.phases[a]);
            const cplx z(0.0, -om * T_);
            for (int p = 1; p <= 4; ++p) {
                const cplx c = tl.c[4 * a + p - 1];
                if (c == 0.0) continue;
                acc += c * T_ * expint_p(p, z);
            }
        }
    }
    return acc / (2.0 * kPi);
}

RayInversion::RayInversion(const std::function<cplx(cplx)>& F, double lambda, double l, const ContourOptions& opt)
    : J_([&F](cplx k) { return F(kAlphaBar * k); }, lambda, l, opt), fac_(lambda > 0.0 ? 0.5 : 1.0) {}

double RayInversion::operator()(double s) const { return fac_ * J_(s).real(); }

double inversion_integral(const std::function<cplx(cplx)>& F, double s, double lambda, double l) {
    return RayInversion(F, lambda, l)(s);
}

std::vector<double> sample_with_endpoint_limits(const std::function<double(double)>& g, double l, int n) {
    if (n < 2) throw ParameterError("need at least two intervals");
    std::vector<double> out(n + 1);
    const double h = l / n;
    for (int i = 1; i < n; ++i) out[i] = g(-0.5 * l + i * h);
    // cubic extrapolation from d, 2d, 3d, 4d inside each endpoint
    const double d = 0.25 * h;
    const double wts[4] = {4.0, -6.0, 4.0, -1.0};
    double lo = 0.0, hi = 0.0;
    for (int j = 0; j < 4; ++j) {
        lo += wts[j] * g(-0.5 * l + (j + 1) * d);
        hi += wts[j] * g(0.5 * l - (j + 1) * d);
    }
    out[0] = lo;
    out[n] = hi;
    return out;
}

}  // namespace tri
