#include "trispec/series.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "trispec/errors.hpp"
#include "trispec/quadrature.hpp"

namespace tri {

const char* halfplane_name(HalfPlane h) {
    switch (h) {
        case HalfPlane::PLUS: return "D+";
        case HalfPlane::MINUS: return "D-";
        case HalfPlane::AXIS: return "axis";
    }
    return "?";
}

HalfPlane classify_halfplane(cplx k, double tol) {
    // signed distance from the line through 0 with direction e^{i pi/6}
    const double d = std::imag(k * std::polar(1.0, -kPi / 6));
    if (std::abs(d) <= tol * std::max(1.0, std::abs(k))) return HalfPlane::AXIS;
    return d > 0 ? HalfPlane::PLUS : HalfPlane::MINUS;
}

cplx quadratic_mode_root(cplx m, double lambda, int branch) {
    if (lambda == 0.0) {
        if (m == 0.0) throw DegenerateModeError("lambda = 0 and mu = 0: mode sits at the kernel pole k = 0");
        if (branch != 0) throw DegenerateModeError("lambda = 0 has a single mode root");
        return m;
    }
    cplx d = std::sqrt(m * m - 4.0 * lambda);
    if (std::real(std::conj(m) * d) < 0.0) d = -d;
    // small root from r1 r2 = lambda; m - d cancels for large |m|
    cplx r1 = 0.5 * (m + d), r2 = lambda / r1;
    const double a1 = std::abs(r1), a2 = std::abs(r2);
    bool first = a1 > a2;
    if (std::abs(a1 - a2) <= 1e-14 * std::max(a1, a2)) {
        if (std::abs(r1.real() - r2.real()) > 1e-14 * a1) first = r1.real() > r2.real();
        else first = r1.imag() >= r2.imag();
    }
    if (!first) std::swap(r1, r2);
    return branch == 0 ? r1 : r2;
}

namespace {

ModeRoot make_mode(int idx, cplx target, double lambda, int branch) {
    ModeRoot r;
    r.index = idx;
    r.branch = branch;
    r.k = quadratic_mode_root(target, lambda, branch);
    r.halfplane = classify_halfplane(r.k);
    r.residual = std::abs(mu(r.k, lambda) - target) / std::max(1.0, std::abs(target));
    return r;
}

}  // namespace

ModeRoot symmetric_mode(int n, double lambda, double l, int branch) {
    return make_mode(n, cplx(0.0, 2.0 * kPi * n / l), lambda, branch);
}

ModeRoot dirichlet_mode(int m, double lambda, double l, int branch) {
    return make_mode(m, cplx(0.0, 2.0 * kPi * m / (3.0 * l)), lambda, branch);
}

namespace {

// Neumaier-compensated complex sum
struct CSum {
    double sr = 0, cr = 0, si = 0, ci = 0;
    static void add1(double& s, double& c, double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x)) c += (s - t) + x;
        else c += (x - t) + s;
        s = t;
    }
    void add(cplx z) {
        add1(sr, cr, z.real());
        add1(si, ci, z.imag());
    }
    cplx value() const { return {sr + cr, si + ci}; }
};

// Reconstructs S(s) on [-l/2, l/2] from moments c_n = int e^{2 i pi n s/l} S(s) ds, n = -N..N.
struct ClassSynth {
    bool legendre = true;
    int N = 0;
    double l = 1.0;
    std::vector<cplx> c;  // moments
    std::vector<cplx> a;  // Legendre coefficients

    cplx eval(double s, cplx* ds) const {
        if (legendre) {
            const int M = static_cast<int>(a.size());
            std::vector<double> p(M + 1), dp(M + 1);
            legendre_values(M, 2.0 * s / l, p.data(), dp.data());
            cplx v = 0.0, d = 0.0;
            for (int i = 0; i < M; ++i) {
                v += a[i] * p[i];
                d += a[i] * dp[i];
            }
            if (ds) *ds = d * (2.0 / l);
            return v;
        }
        CSum v, d;
        for (int n = -N; n <= N; ++n) {
            const cplx t = c[n + N] * std::polar(1.0 / l, -2.0 * kPi * n * s / l);
            v.add(t);
            d.add(t * cplx(0.0, -2.0 * kPi * n / l));
        }
        if (ds) *ds = d.value();
        return v.value();
    }
};

std::vector<cplx> legendre_fit(const std::vector<cplx>& c, int N, int M, double l) {
    const int nq = std::max(96, 2 * N + 2 * M + 64);
    const QuadratureRule r = side_rule(nq, l);
    Eigen::MatrixXcd W(2 * N + 1, M);
    std::vector<double> p(M + 1);
    W.setZero();
    for (int q = 0; q < nq; ++q) {
        legendre_values(M, 2.0 * r.nodes[q] / l, p.data());
        for (int n = -N; n <= N; ++n) {
            const cplx e = r.weights[q] * std::polar(1.0, 2.0 * kPi * n * r.nodes[q] / l);
            for (int i = 0; i < M; ++i) W(n + N, i) += e * p[i];
        }
    }
    Eigen::VectorXcd rhs(2 * N + 1);
    for (int i = 0; i < 2 * N + 1; ++i) rhs(i) = c[i];
    Eigen::VectorXcd a = W.colPivHouseholderQr().solve(rhs);
    return std::vector<cplx>(a.data(), a.data() + M);
}

struct MixedTraces {
    std::vector<ClassSynth> cls;
    std::vector<double> omega;               // carrier frequency per class
    std::array<std::vector<cplx>, 3> wts;  // side weights per class

    cplx eval(int j, double s, cplx* ds) const {
        cplx v = 0.0, d = 0.0;
        for (size_t r = 0; r < cls.size(); ++r) {
            cplx sd;
            const cplx sv = cls[r].eval(s, &sd);
            const cplx car = std::polar(1.0, -omega[r] * s);
            v += wts[j][r] * car * sv;
            d += wts[j][r] * car * (sd - cplx(0.0, omega[r]) * sv);
        }
        if (ds) *ds = d;
        return v;
    }
};

int default_terms(const SeriesOptions& opt) {
    if (opt.legendre_terms > 0) return opt.legendre_terms;
    return std::clamp(opt.truncation / 2, 4, 32);
}

SeriesResult finish(std::shared_ptr<MixedTraces> mt, const SeriesOptions& opt, double l, int nsides) {
    SeriesResult res;
    res.legendre_terms = opt.resynthesis == Resynthesis::LEGENDRE ? default_terms(opt) : 0;
    for (auto& c : mt->cls) {
        c.legendre = opt.resynthesis == Resynthesis::LEGENDRE;
        if (c.legendre) c.a = legendre_fit(c.c, c.N, res.legendre_terms, l);
        res.moments.push_back(c.c);
    }
    for (int j = 0; j < 3; ++j) {
        const int jj = nsides == 1 ? 0 : j;
        res.traces[j] = BoundaryTrace(
            j + 1, [mt, jj](double s) { return mt->eval(jj, s, nullptr).real(); },
            [mt, jj](double s) {
                cplx d;
                mt->eval(jj, s, &d);
                return d.real();
            });
    }
    for (int i = 0; i <= 100; ++i) {
        const double s = -0.5 * l + l * i / 100.0;
        for (int j = 0; j < nsides; ++j) res.max_imag = std::max(res.max_imag, std::abs(mt->eval(j, s, nullptr).imag()));
    }
    return res;
}

double typical(cplx a, cplx b) { return std::max({std::abs(a), std::abs(b), 1e-300}); }

void check_finite(cplx v, const char* what, int m) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NumericalError(std::string(what) + ": overflow at mode " + std::to_string(m) + " (truncation too large)");
}

cplx E3(cplx x, double lambda, double l) { return std::exp(mu(x, lambda) * (0.5 * kSqrt3 * l)); }

}  // namespace

SeriesResult symmetric_dirichlet_dtn(const BoundaryTrace& f, double lambda, double l, const SeriesOptions& opt) {
    const int N = opt.truncation;
    if (N < 1) throw ParameterError("truncation must be positive");
    auto mt = std::make_shared<MixedTraces>();
    ClassSynth cs;
    cs.N = N;
    cs.l = l;
    cs.c.assign(2 * N + 1, 0.0);
    std::vector<ModeRoot> roots;
    std::vector<int> resonant;
    for (int n = -N; n <= N; ++n) {
        if (lambda == 0.0 && n == 0) continue;  // closed by int q_N = 0
        const ModeRoot r = symmetric_mode(n, lambda, l);
        roots.push_back(r);
        const cplx sn = r.k;
        auto F = [&](cplx x) { return spectral_transform(f, KernelKind::F_DIRICHLET, x, lambda, l, kPi / 2, opt.order); };
        const cplx h = mu(kAlphaBar * sn, lambda) * (0.5 * l);
        const cplx sh = std::sinh(h), ch = std::cosh(h);
        if (std::abs(sh) < 1e-10 * typical(sh, ch)) {
            resonant.push_back(n);
            continue;
        }
        const cplx G = 2.0 * ch * F(sn) + 2.0 * (n % 2 == 0 ? 1.0 : -1.0) * F(kAlphaBar * sn) + 2.0 * F(kAlpha * sn);
        cs.c[n + N] = kI * G / sh;
        check_finite(cs.c[n + N], "symmetric Dirichlet series", n);
    }
    if (!resonant.empty()) {
        std::string msg = "resonance: vanishing denominator at n =";
        for (int n : resonant) msg += " " + std::to_string(n);
        throw ResonanceError(msg);
    }
    mt->cls.push_back(cs);
    mt->omega.push_back(0.0);
    for (int j = 0; j < 3; ++j) mt->wts[j] = {1.0};
    SeriesResult res = finish(mt, opt, l, 1);
    res.roots = std::move(roots);
    return res;
}

cplx combined_moment(const std::array<BoundaryTrace, 3>& g, int m, cplx k, double lambda, double l, int order) {
    const cplx m_ = mu(k, lambda);
    return trace_moment(g[0], m_, 1.0, 0.0, l, order) + trace_moment(g[1], m_, alpha_pow(-m), 0.0, l, order) +
           trace_moment(g[2], m_, alpha_pow(m), 0.0, l, order);
}

namespace {

cplx mode_denominator(int m, cplx k, double lambda, double l, cplx ratio = 1.0) {
    const cplx a = alpha_pow(-m) * ratio * exp_e(kAlphaBar * k, lambda, l), b = exp_e(-kAlphaBar * k, lambda, l);
    const cplx d = a - b;
    if (std::abs(d) < 1e-10 * typical(a, b))
        throw ResonanceError("resonance: vanishing mode denominator at m = " + std::to_string(m));
    return d;
}

}  // namespace

cplx dirichlet_mode_moment(const std::array<BoundaryTrace, 3>& f, int m, double lambda, double l, int order) {
    const cplx k = dirichlet_mode(m, lambda, l).k;
    auto F = [&](int j, cplx x) {
        return spectral_transform(f[j - 1], KernelKind::F_DIRICHLET, x, lambda, l, kPi / 2, order);
    };
    auto e = [&](cplx x) { return exp_e(x, lambda, l); };
    const cplx a = kAlpha, ab = kAlphaBar;
    const cplx em = e(-k), ep = e(k);
    const cplx X = (em * em * e(ab * k) + e(-ab * k)) * (F(1, k) + ep * ep * F(3, k)) +
                   (ep * ep * e(ab * k) + em * em * e(-ab * k)) * F(2, k) + 2.0 * ep * ep * F(1, a * k) +
                   2.0 * F(2, a * k) + 2.0 * em * em * F(3, a * k) + 2.0 * em * F(1, ab * k) +
                   (ep * ep * ep + em * em * em) * F(2, ab * k) + 2.0 * ep * F(3, ab * k);
    const cplx M = 2.0 * kI * X / mode_denominator(m, k, lambda, l);
    check_finite(M, "Dirichlet moment", m);
    return M;
}

cplx neumann_mode_moment(const std::array<BoundaryTrace, 3>& f, int m, double lambda, double l, int order) {
    const cplx k = dirichlet_mode(m, lambda, l).k;
    auto F = [&](int j, cplx x) {
        return spectral_transform(f[j - 1], KernelKind::F_ROBIN, x, lambda, l, kPi / 2, order);
    };
    auto e = [&](cplx x) { return exp_e(x, lambda, l); };
    const cplx a = kAlpha, ab = kAlphaBar;
    const cplx em = e(-k), ep = e(k);
    const cplx ea = E3(-kI * a * k, lambda, l) + E3(kI * a * k, lambda, l);
    const cplx eb = E3(-kI * ab * k, lambda, l) + E3(kI * ab * k, lambda, l);
    const cplx rhs = em * ea * F(1, k) + eb * F(2, k) + ep * ea * F(3, k) + 2.0 * ep * ep * F(1, a * k) +
                     2.0 * F(2, a * k) + 2.0 * em * em * F(3, a * k) + 2.0 * em * F(1, ab * k) +
                     (ep * ep * ep + em * em * em) * F(2, ab * k) + 2.0 * ep * F(3, ab * k);
    const cplx TN = rhs / (-(kI * k + lambda / (kI * k)));
    const cplx Nm = 2.0 * TN / mode_denominator(m, k, lambda, l);
    check_finite(Nm, "Neumann moment", m);
    return Nm;
}

namespace {

using MomentFn = cplx (*)(const std::array<BoundaryTrace, 3>&, int, double, double, int);

SeriesResult three_class_series(const std::array<BoundaryTrace, 3>& f, double lambda, double l,
                                const SeriesOptions& opt, MomentFn moment) {
    const int N = opt.truncation;
    if (N < 1) throw ParameterError("truncation must be positive");
    auto mt = std::make_shared<MixedTraces>();
    std::vector<ModeRoot> roots;
    std::vector<int> resonant;
    // residue classes m = 3n + r with r = 0, 1, -1: conjugate-symmetric truncation keeps the sum real
    for (int r : {0, 1, -1}) {
        ClassSynth cs;
        cs.N = N;
        cs.l = l;
        cs.c.assign(2 * N + 1, 0.0);
        for (int n = -N; n <= N; ++n) {
            const int m = 3 * n + r;
            if (lambda == 0.0 && m == 0) continue;  // gauge mode, moment fixed to 0
            roots.push_back(dirichlet_mode(m, lambda, l));
            try {
                cs.c[n + N] = moment(f, m, lambda, l, opt.order);
            } catch (const ResonanceError&) {
                resonant.push_back(m);
            }
        }
        mt->cls.push_back(cs);
        mt->omega.push_back(2.0 * kPi * r / (3.0 * l));
        for (int j = 0; j < 3; ++j) mt->wts[j].push_back(alpha_pow(j == 0 ? 0 : (j == 1 ? r : -r)) / 3.0);
    }
    if (!resonant.empty()) {
        std::string msg = "resonance: vanishing denominator at m =";
        for (int m : resonant) msg += " " + std::to_string(m);
        throw ResonanceError(msg);
    }
    SeriesResult res = finish(mt, opt, l, 3);
    res.roots = std::move(roots);
    return res;
}

}  // namespace

SeriesResult general_dirichlet_dtn(const std::array<BoundaryTrace, 3>& f, double lambda, double l,
                                   const SeriesOptions& opt) {
    return three_class_series(f, lambda, l, opt, &dirichlet_mode_moment);
}

SeriesResult neumann_ntd(const std::array<BoundaryTrace, 3>& f, double lambda, double l, const SeriesOptions& opt) {
    if (lambda == 0.0) {
        double tot = 0.0, mag = 0.0;
        const QuadratureRule r = side_rule(std::max(opt.order, 64), l);
        for (const auto& t : f)
            for (size_t i = 0; i < r.nodes.size(); ++i) {
                const double v = t.value(r.nodes[i]);
                tot += r.weights[i] * v;
                mag += r.weights[i] * std::abs(v);
            }
        if (std::abs(tot) > 1e-8 * mag + 1e-12)
            throw SolvabilityError("Laplace Neumann data violate the compatibility condition (net flux " +
                                   std::to_string(tot) + ")");
    }
    return three_class_series(f, lambda, l, opt, &neumann_mode_moment);
}

// ---------------------------------------------------------------- oblique Robin modes

namespace {

struct RobinP {
    double lambda, beta, gamma;
    cplx H_fn(cplx w) const {
        const cplx wb = w * std::polar(1.0, beta);
        return wb + lambda / wb - gamma;
    }
    cplx Hb(cplx w) const {
        const cplx wb = w * std::polar(1.0, -beta);
        return wb + lambda / wb - gamma;
    }
    cplx P(cplx w) const { return H_fn(w) / Hb(w); }
    // P'/P
    cplx dlogP(cplx w) const {
        const cplx dh = std::polar(1.0, beta) - lambda * std::polar(1.0, -beta) / (w * w);
        const cplx dhb = std::polar(1.0, -beta) - lambda * std::polar(1.0, beta) / (w * w);
        return dh / H_fn(w) - dhb / Hb(w);
    }
};

cplx robin_logQ(cplx k, int m, const RobinP& p, double l, cplx* dlog) {
    const cplx q = std::exp(mu(k, p.lambda) * l) * p.P(kAlpha * k) / p.P(kAlphaBar * k) * alpha_pow(-m);
    if (dlog)
        *dlog = mu_prime(k, p.lambda) * l + kAlpha * p.dlogP(kAlpha * k) - kAlphaBar * p.dlogP(kAlphaBar * k);
    return std::log(q);
}

bool newton(cplx& k, int m, const RobinP& p, double l, const RobinRootOptions& opt) {
    for (int it = 0; it < opt.max_iter; ++it) {
        cplx d;
        const cplx g = robin_logQ(k, m, p, l, &d);
        if (!std::isfinite(g.real()) || !std::isfinite(d.real()) || d == 0.0) return false;
        const cplx step = g / d;
        k -= step;
        if (std::abs(step) <= opt.tol * std::max(1.0, std::abs(k))) return std::abs(robin_logQ(k, m, p, l, nullptr)) < 1e-10;
    }
    return false;
}

}  // namespace

cplx robin_mode_residual(cplx k, int m, double lambda, double beta, double gamma, double l) {
    return robin_logQ(k, m, RobinP{lambda, beta, gamma}, l, nullptr);
}

ModeRoot robin_mode_root(int m, double lambda, double beta, double gamma, double l, const RobinRootOptions& opt) {
    if (std::abs(std::sin(beta)) < 1e-14) throw ParameterError("sin(beta) = 0 in the Robin condition");
    ModeRoot r = dirichlet_mode(m, lambda, l);  // beta = pi/2, gamma = 0 start
    cplx k = r.k;
    double t = 0.0, dt = 1.0 / std::max(1, opt.steps);
    int halvings = 0;
    while (t < 1.0) {
        const double tn = std::min(1.0, t + dt);
        const RobinP p{lambda, kPi / 2 + tn * (beta - kPi / 2), tn * gamma};
        cplx kn = k;
        if (newton(kn, m, p, l, opt)) {
            k = kn;
            t = tn;
            continue;
        }
        if (++halvings > 30) {
            throw RootError("Robin mode m = " + std::to_string(m) + ": Newton failed to converge (last iterate " +
                            std::to_string(kn.real()) + (kn.imag() < 0 ? "" : "+") + std::to_string(kn.imag()) + "i)");
        }
        dt *= 0.5;
    }
    r.k = k;
    r.halfplane = classify_halfplane(k);
    r.residual = std::abs(robin_mode_residual(k, m, lambda, beta, gamma, l));
    return r;
}

cplx robin_T(const std::array<BoundaryTrace, 3>& f, cplx k, double lambda, double beta, double gamma, double l,
             int order) {
    const RobinP p{lambda, beta, gamma};
    auto F = [&](int j, cplx x) { return spectral_transform(f[j - 1], KernelKind::F_ROBIN, x, lambda, l, beta, order); };
    auto e = [&](cplx x) { return exp_e(x, lambda, l); };
    const cplx a = kAlpha, ab = kAlphaBar;
    const cplx Pa = p.P(a * k), Pb = p.P(ab * k);
    const cplx em = e(-k), ep = e(k);
    const cplx Ema = E3(-kI * a * k, lambda, l), Epa = E3(kI * a * k, lambda, l);
    const cplx Emb = E3(-kI * ab * k, lambda, l), Epb = E3(kI * ab * k, lambda, l);
    const cplx r = em * (Ema - Epa * Pb / (Pa * Pa)) * F(1, k) + (Emb * Pb / Pa - Epb / Pb) * F(2, k) +
                   ep * (Ema * Pa / Pb - Epa / Pa) * F(3, k) + ep * ep * (Pa - 1.0) / Pb * F(1, a * k) +
                   (Pa - 1.0) / Pa * F(2, a * k) + em * em * Pb * (Pa - 1.0) / (Pa * Pa) * F(3, a * k) +
                   em * (Pb - 1.0) / Pa * F(1, ab * k) +
                   (ep * ep * ep * Pa / Pb - em * em * em * Pb / (Pa * Pa)) * F(2, ab * k) +
                   ep * (Pb - 1.0) / Pb * F(3, ab * k);
    return r / p.Hb(k);
}

cplx robin_mode_moment(const std::array<BoundaryTrace, 3>& f, const ModeRoot& root, double lambda, double beta,
                       double gamma, double l, int order) {
    const RobinP p{lambda, beta, gamma};
    const cplx k = root.k;
    const cplx T = robin_T(f, k, lambda, beta, gamma, l, order);
    const cplx G = 2.0 * T * std::sin(beta) / mode_denominator(root.index, k, lambda, l, p.P(k) / p.P(kAlpha * k));
    check_finite(G, "Robin moment", root.index);
    return G;
}

}  // namespace tri
