#include "trispec/interior.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trispec/bessel.hpp"
#include "trispec/errors.hpp"
#include "trispec/poincare.hpp"
#include "trispec/quadrature.hpp"

namespace tri {

InteriorPoint::InteriorPoint(cplx z_, const TriangleGeometry& g) : z(z_), margin(g.margin(z_)) {
    if (!(margin > 0.0)) throw DomainError("point is not inside the triangle");
}

RayResult integrate_ray(const std::function<cplx(cplx)>& g, const RayRule& rule, double L, double lambda,
                        bool over_k) {
    if (!(L > 0.0)) throw ParameterError("ray length scale must be positive");
    const QuadratureRule& gl = gauss_legendre(rule.panel_order);
    const cplx dir = std::polar(1.0, rule.angle);
    auto width = [&](double r) { return std::min(0.25, 2.0 / (L * (r + lambda / r))); };
    auto panel = [&](double ua, double ub) {
        const double h = 0.5 * (ub - ua), c = 0.5 * (ua + ub);
        cplx acc = 0.0;
        for (int i = 0; i < rule.panel_order; ++i) {
            const cplx k = std::exp(c + h * gl.nodes[i]) * dir;
            cplx v = g(k);
            if (!over_k) v *= k;
            acc += gl.weights[i] * v;
        }
        acc *= h;
        if (!std::isfinite(std::abs(acc))) throw NumericalError("non-finite ray integrand");
        return acc;
    };
    RayResult out;
    const double u0 = std::log(lambda > 0.0 ? std::max(1.0 / L, std::sqrt(lambda)) : 1.0 / L);
    cplx acc = 0.0;
    double scale = 0.0;
    int panels = 0;
    for (int dirn : {1, -1}) {
        double u = u0, last = 0.0;
        int quiet = 0;
        while (quiet < 4) {
            double h = width(std::exp(u));
            h = std::min(h, width(std::exp(u + dirn * h)));
            const double ua = dirn > 0 ? u : u - h, ub = dirn > 0 ? u + h : u;
            const cplx p = panel(ua, ub);
            acc += p;
            scale = std::max({scale, std::abs(p), std::abs(acc)});
            last = scale > 0.0 ? std::abs(p) / scale : 0.0;
            quiet = last <= rule.tail_tol ? quiet + 1 : 0;
            u += dirn * h;
            if (dirn < 0 && rule.r_floor > 0.0 && std::exp(u) < rule.r_floor) break;
            if (++panels > rule.max_panels) throw NumericalError("ray integrand did not decay");
        }
        out.tail = std::max(out.tail, last);
        (dirn > 0 ? out.r_hi : out.r_lo) = std::exp(u);
    }
    out.value = acc;
    return out;
}

namespace {

double check_point(const TriangleGeometry& g, cplx z, const InteriorOptions& opt) {
    const double m = InteriorPoint(z, g).margin;
    if (m < opt.min_margin * g.side_length())
        throw NumericalError("point too close to the boundary for the interior quadrature (margin " +
                             std::to_string(m) + ")");
    return m;
}

RayRule ray_rule(int j, const InteriorOptions& opt) {
    RayRule r;
    r.angle = kRayAngles[j];
    r.panel_order = std::max(opt.panel_order, 20);
    return r;
}

}  // namespace

double greens_eval(const TraceSet& t, cplx z, const InteriorOptions& opt) {
    const TriangleGeometry& g = t.geometry;
    const double l = g.side_length(), lam = t.lambda;
    if (lam < 0.0) throw ParameterError("Green representation is implemented for lambda >= 0");
    const double margin = check_point(g, z, opt);
    const double kappa = 2.0 * std::sqrt(lam);
    const int npan = std::max(4, static_cast<int>(std::ceil(2.0 * l / margin)));
    const QuadratureRule& gl = gauss_legendre(opt.panel_order);
    double acc = 0.0;
    for (int j = 1; j <= 3; ++j) {
        const cplx n = g.normal(j);
        const BoundaryTrace &q = t.dirichlet[j - 1], &qn = t.neumann[j - 1];
        for (int p = 0; p < npan; ++p) {
            const double a = -0.5 * l + l * p / npan, h = 0.5 * l / npan;
            for (int i = 0; i < opt.panel_order; ++i) {
                const double s = a + h + h * gl.nodes[i];
                const cplx d = g.side_point(j, s) - z;
                const double rho = std::abs(d);
                const double dn = (d * std::conj(n)).real() / rho;  // d rho / d n'
                double K, dK;
                if (lam > 0.0) {
                    K = kernel_K(kappa * rho, lam);
                    dK = kappa * kernel_K_prime(kappa * rho, lam) * dn;
                } else {
                    K = -std::log(rho);
                    dK = -dn / rho;
                }
                acc += h * gl.weights[i] * (K * qn.value(s) - q.value(s) * dK);
            }
        }
    }
    return acc / (2.0 * kPi);
}

double fokas_eval(const TraceSet& t, cplx z, const InteriorOptions& opt) {
    const double lam = t.lambda, l = t.geometry.side_length();
    if (!(lam > 0.0)) throw ParameterError("the ray representation of q needs lambda > 0");
    check_point(t.geometry, z, opt);
    cplx acc = 0.0;
    for (int j = 0; j < 3; ++j) {
        auto g = [&](cplx k) {
            const cplx theta = kI * k * z + lam * std::conj(z) / (kI * k);
            return rho_tilde_shifted(t, j + 1, k, theta, opt.order);
        };
        const RayResult r = integrate_ray(g, ray_rule(j, opt), l, lam, true);
        if (r.tail > opt.tail_tol)
            throw NumericalError("ray integral " + std::to_string(j + 1) + " truncated with tail " +
                                 std::to_string(r.tail));
        acc += r.value;
    }
    return (acc / (2.0 * kPi * kI)).real();
}

cplx dq_dz(const TraceSet& t, cplx z, const InteriorOptions& opt) {
    const double l = t.geometry.side_length();
    if (t.lambda != 0.0) throw ParameterError("dq/dz representation is implemented for lambda = 0");
    check_point(t.geometry, z, opt);
    cplx acc = 0.0;
    for (int j = 0; j < 3; ++j) {
        auto g = [&](cplx k) { return rho_tilde_shifted(t, j + 1, k, kI * k * z, opt.order); };
        const RayResult r = integrate_ray(g, ray_rule(j, opt), l, 0.0, false);
        if (r.tail > opt.tail_tol) throw NumericalError("ray integral truncated in dq/dz");
        acc += r.value;
    }
    return acc / (2.0 * kPi);
}

SymmetricInteriorValue symmetric_interior_detail(const BoundaryTrace& f, double lambda, double l, cplx z,
                                                 const SymmetricInteriorOptions& opt) {
    if (!(lambda > 0.0)) throw ParameterError("symmetric interior series needs lambda > 0");
    const TriangleGeometry g(l);
    check_point(g, z, opt.interior);
    const double lam = lambda, a = g.apothem();
    const int order = opt.interior.order;
    const cplx zb = std::conj(z);
    auto theta = [&](cplx k) { return kI * k * z + lam * zb / (kI * k); };
    auto m = [&](cplx k) { return mu(k, lam); };
    // F(kappa) with an extra exponent folded into the quadrature
    auto F = [&](cplx kappa, cplx shift) { return trace_moment(f, m(kappa), lam / kappa, 0.5, l, order, shift); };
    auto Eexp = [&](cplx kappa) { return m(-kI * kappa) * a; };  // log E(-i kappa)

    // known data on all three rays
    cplx known = 0.0;
    const cplx omega[3] = {1.0, kAlphaBar, kAlpha};
    for (int j = 0; j < 3; ++j) {
        auto gk = [&](cplx k) {
            const cplx kap = omega[j] * k;
            return F(kap, theta(k) + Eexp(kap)) / (2.0 * kPi * kI);
        };
        const RayResult r = integrate_ray(gk, ray_rule(j, opt.interior), l, lam, true);
        if (r.tail > opt.interior.tail_tol) throw NumericalError("known-data ray integral truncated");
        known += r.value;
    }
    // G terms left over after eliminating Psi(abar k) on l_2 and Psi(alpha k) on l_3
    const double h = 0.5 * l;
    auto g2 = [&](cplx k) {  // Re mu(k) > 0 here
        const cplx s0 = theta(k) + Eexp(kAlphaBar * k), mk = m(k) * h, mb = m(kAlphaBar * k) * h;
        const cplx e2 = std::exp(-2.0 * mk);
        const cplx br = F(k, s0 + mb - mk) + F(k, s0 - mb - mk) + (1.0 + e2) * F(kAlphaBar * k, s0) +
                        2.0 * F(kAlpha * k, s0 - mk);
        return -2.0 * kI * br / (1.0 - e2) / (4.0 * kPi);
    };
    auto g3 = [&](cplx k) {  // Re mu(k) < 0 here
        const cplx s0 = theta(k) + Eexp(kAlpha * k), mk = m(k) * h, ma = m(kAlpha * k) * h;
        const cplx e2 = std::exp(2.0 * mk);
        const cplx br = (1.0 + e2) * F(kAlpha * k, s0) + F(k, s0 + ma + mk) + F(k, s0 - ma + mk) +
                        2.0 * F(kAlphaBar * k, s0 + mk);
        return -2.0 * kI * br / (1.0 - e2) / (4.0 * kPi);
    };
    for (int j : {1, 2}) {
        const RayResult r = integrate_ray(j == 1 ? std::function<cplx(cplx)>(g2) : std::function<cplx(cplx)>(g3),
                                          ray_rule(j, opt.interior), l, lam, true);
        if (r.tail > opt.interior.tail_tol) throw NumericalError("known-data ray integral truncated");
        known += r.value;
    }

    // residues at the zeros of Delta
    auto term = [&](cplx s, bool plus) {
        const cplx sb = kAlphaBar * s, mb = m(sb);
        const double c = std::abs(mb.real()) * h;
        const cplx G = scaled_G(f, s, lam, l, c, order);
        const cplx den = std::exp(mb * h - c) - std::exp(-mb * h - c);
        const cplx dD = h * mu_prime(s, lam) * (exp_e(s, lam, l) + exp_e(-s, lam, l));
        cplx ex;
        if (plus)
            ex = std::exp(theta(s) + 2.0 * m(kI * s) * a);
        else
            ex = 0.5 * (std::exp(theta(s) + 2.0 * m(kI * kAlpha * s) * a) +
                        std::exp(theta(s) + 2.0 * m(kI * kAlphaBar * s) * a));
        if (std::abs(den) < 1e-13) throw ResonanceError("Delta(abar s_n) vanishes");
        return ex * G / (s * dD * den);
    };
    cplx J = 0.0;
    int quiet = 0, n = 0;
    double last = 0.0;
    for (; n <= opt.max_modes && quiet < 3; ++n) {
        double biggest = 0.0;
        for (int sg : {1, -1}) {
            if (n == 0 && sg < 0) continue;
            const double an = sg * n * kPi / l, b = std::sqrt(an * an + lam);
            // the two roots of k + lambda/k = 2 i an, written without cancellation
            const double up = an >= 0.0 ? an + b : lam / (b - an);
            const double dn = an >= 0.0 ? -lam / (an + b) : an - b;
            const cplx tp = term(cplx(0.0, up), true), tm = term(cplx(0.0, dn), false);
            J += tp + tm;
            biggest = std::max({biggest, std::abs(tp), std::abs(tm)});
        }
        const double sc = std::max(std::abs(J), 1e-300);
        last = biggest / sc;
        quiet = (biggest == 0.0 || last <= opt.series_tol) ? quiet + 1 : 0;
    }
    if (quiet < 3 && last > 1e-10)
        throw NumericalError("residue series not converged after " + std::to_string(opt.max_modes) + " modes");
    SymmetricInteriorValue out;
    out.known = known.real();
    out.residues = J.real();
    out.value = (known + J).real();
    out.modes_used = n;
    out.last_term = last;
    return out;
}

double symmetric_interior(const BoundaryTrace& f, double lambda, double l, cplx z,
                          const SymmetricInteriorOptions& opt) {
    return symmetric_interior_detail(f, lambda, l, z, opt).value;
}

cplx eigensolution(int n, double lambda, double l, int sign, cplx z) {
    const double a = n * kPi / l, d = a * a + lambda;
    if (d < 0.0) throw DomainError("eigensolution needs (n pi/l)^2 + lambda >= 0");
    const double b = std::sqrt(d);
    return std::exp(2.0 * (sign >= 0 ? 1.0 : -1.0) * b * z.real()) * std::exp(cplx(0.0, -2.0 * a * z.imag()));
}

cplx eigensolution_exponential(int n, double lambda, double l, int sign, cplx z) {
    const double a = n * kPi / l, d = a * a + lambda;
    if (d < 0.0) throw DomainError("eigensolution needs (n pi/l)^2 + lambda >= 0");
    const double b = std::sqrt(d);
    const cplx s = sign >= 0 ? cplx(0.0, a - b) : cplx(0.0, a + b);
    if (s == 0.0) throw DomainError("s_n = 0 has no exponential form");
    return std::exp(kI * s * z + lambda * std::conj(z) / (kI * s));
}

}  // namespace tri
