#include "trispec/poincare.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "trispec/errors.hpp"

namespace tri {

namespace {

const int kY2Abar = 4;  // Y_2(abar k) inside the 6-vector of unknowns at alpha k, abar k

bool constant_P(double lambda, double beta, double gamma) {
    return gamma == 0.0 && (lambda == 0.0 || std::abs(std::cos(beta)) < 1e-15);
}

}  // namespace

PoincareSpec PoincareSpec::oblique(double lambda, double l, double beta, double gamma) {
    PoincareSpec s;
    s.lambda = lambda;
    s.l = l;
    s.beta = {beta, beta, beta};
    s.gamma = {gamma, gamma, gamma};
    return s;
}

PoincareSpec PoincareSpec::mixed_nr(double lambda, double l) {
    if (!(lambda > 0.0)) throw ParameterError("the mixed Neumann-Robin problem needs lambda > 0");
    PoincareSpec s;
    s.lambda = lambda;
    s.l = l;
    s.gamma = {std::sqrt(3.0 * lambda), 0.0, 0.0};
    return s;
}

ProblemSpec PoincareSpec::problem(const std::array<BoundaryTrace, 3>& data) const {
    ProblemSpec p;
    p.lambda = lambda;
    p.geometry = TriangleGeometry(l);
    for (int j = 0; j < 3; ++j) {
        const BoundaryTrace d = data[j].with_side(j + 1);
        if (beta[j] == kPi / 2 && gamma[j] == 0.0) p.sides[j] = SideCondition::neumann(d);
        else p.sides[j] = SideCondition::robin(beta[j], gamma[j], d);
    }
    return p;
}

HP H_and_P(cplx k, double lambda, double beta, double gamma) {
    if (k == 0.0) throw DomainError("k = 0 is a pole of H");
    const cplx h = H_fn(k, lambda, beta, gamma), hb = Hbar_fn(k, lambda, beta, gamma);
    const double scale = std::abs(k) + lambda / std::abs(k) + std::abs(gamma);
    if (std::abs(hb) <= 1e-14 * scale) {
        std::ostringstream os;
        os.precision(17);
        os << "P has a pole at k = " << k.real() << (k.imag() < 0 ? " - " : " + ") << std::abs(k.imag()) << "i";
        throw DomainError(os.str());
    }
    return {h, h / hb};
}

cplx dlogP(cplx k, double lambda, double beta, double gamma) {
    const cplx eb = std::polar(1.0, beta);
    const cplx dh = eb - lambda / (eb * k * k);
    const cplx dhb = std::conj(eb) - lambda * eb / (k * k);
    return dh / H_fn(k, lambda, beta, gamma) - dhb / Hbar_fn(k, lambda, beta, gamma);
}

std::string AdmissibilityReport::message() const {
    std::ostringstream os;
    if (integral_solvable) os << "admissible";
    else os << "inadmissible";
    os << (corner_cancelling ? ", corner terms cancel" : ", corner terms do not cancel");
    if (!violated.empty()) {
        os << "; violated:";
        for (const auto& v : violated) os << " " << v;
    }
    return os.str();
}

AdmissibilityReport admissibility_check(const PoincareSpec& spec, double tol) {
    AdmissibilityReport r;
    bool ok = true;
    for (int j = 0; j < 3; ++j)
        if (std::abs(std::sin(spec.beta[j])) < tol) {
            r.violated.push_back("sin-beta-" + std::to_string(j + 1));
            ok = false;
        }
    auto offset = [&](double b, int& n) {
        const double d = (b - spec.beta[0]) / (kPi / 3);
        n = static_cast<int>(std::lround(d));
        return std::abs(d - n) <= tol;
    };
    const bool a2 = offset(spec.beta[1], r.n), a3 = offset(spec.beta[2], r.m);
    if (!a2 || !a3) {
        r.violated.push_back("beta-offset");
        ok = false;
    } else {
        auto g = [&](double c) { return c * (3.0 * spec.lambda - c * c); };
        const double s3 = std::sin(3.0 * spec.beta[0]);
        const double g1 = g(spec.gamma[0]);
        auto check = [&](double gj, int n, const char* name) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            const double v = s3 * (gj - sign * g1);
            if (std::abs(v) > tol * (1.0 + std::abs(gj) + std::abs(g1))) {
                r.violated.push_back(name);
                ok = false;
            }
        };
        check(g(spec.gamma[1]), r.n, "gamma-cubic-2");
        check(g(spec.gamma[2]), r.m, "gamma-cubic-3");
    }
    r.integral_solvable = ok;
    const cplx e1 = std::polar(1.0, 2 * spec.beta[0]);
    r.corner_cancelling = std::abs(std::polar(1.0, 2 * spec.beta[1]) - e1) <= tol &&
                          std::abs(std::polar(1.0, 2 * spec.beta[2]) - e1) <= tol;
    if (!r.corner_cancelling) r.violated.push_back("corner-cancel");
    return r;
}

EliminationResult eliminate_numeric(const ProblemSpec& spec, cplx k) {
    const RelationSystem rs = relation_system(spec, k);
    Eigen::Matrix<cplx, 6, 6> M = rs.A.block<6, 6>(0, 3);
    Eigen::Matrix<cplx, 6, 4> B;
    B.block<6, 3>(0, 0) = rs.A.block<6, 3>(0, 0);
    B.col(3) = rs.rhs;
    // equilibrate rows, then columns
    for (int i = 0; i < 6; ++i) {
        const double m = M.row(i).cwiseAbs().maxCoeff();
        if (!(m > 0.0) || !std::isfinite(m)) throw EliminationError("degenerate relation row at elimination");
        M.row(i) /= m;
        B.row(i) /= m;
    }
    Eigen::Matrix<double, 6, 1> cs;
    for (int j = 0; j < 6; ++j) {
        cs(j) = M.col(j).cwiseAbs().maxCoeff();
        if (!(cs(j) > 0.0)) throw EliminationError("unknown absent from the relations at this k");
        M.col(j) /= cs(j);
    }
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 6, 6>> svd(M);
    const auto sv = svd.singularValues();
    const double cond = sv(0) / sv(5);
    if (!std::isfinite(cond) || cond > 1e14) {
        std::ostringstream os;
        os << "singular 6x6 block at k = " << k << ", condition " << cond;
        throw EliminationError(os.str());
    }
    const Eigen::Matrix<cplx, 6, 4> X = M.fullPivLu().solve(B);
    EliminationResult r;
    r.target = 1.0;
    for (int j = 0; j < 3; ++j) r.coeff[j] = -X(kY2Abar, j) / cs(kY2Abar);
    r.inhom = X(kY2Abar, 3) / cs(kY2Abar);
    r.condition = cond;
    return r;
}

cplx y2_known(const ProblemSpec& spec, cplx k) { return eliminate_numeric(spec, k).inhom; }

EliminationResult eliminate_oblique_closed(const std::array<BoundaryTrace, 3>& f, double lambda, double beta,
                                           double gamma, double l, cplx k, int order) {
    auto P = [&](cplx x) { return H_and_P(x, lambda, beta, gamma).P; };
    auto e = [&](cplx x) { return exp_e(x, lambda, l); };
    const cplx a = kAlpha, ab = kAlphaBar;
    const cplx Pk = P(k), Pa = P(a * k), Pb = P(ab * k);
    const cplx ep = e(k), em = e(-k);
    const cplx e3p = ep * ep * ep, e3m = em * em * em;
    EliminationResult r;
    r.target = (e3m * Pb * Pb / (Pa * Pa) - e3p * Pa / Pb) * Hbar_fn(ab * k, lambda, beta, gamma) /
               Hbar_fn(k, lambda, beta, gamma);
    const cplx c1 = e(-ab * k) - em * em * Pb * Pk / (Pa * Pa) * e(ab * k);
    r.coeff[0] = c1;
    r.coeff[2] = c1 * ep * ep * Pa / Pb;
    r.coeff[1] = em * em * Pb / Pa *
                 (e(-ab * k) - ep * ep * ep * ep * (Pa * Pa * Pa) / (Pb * Pb * Pb) * Pb * Pk / (Pa * Pa) * e(ab * k));
    r.inhom = robin_T(f, k, lambda, beta, gamma, l, order);
    return r;
}

EliminationResult eliminate_poincare_closed(const PoincareSpec& spec, cplx k) {
    const double lam = spec.lambda, l = spec.l;
    auto HPj = [&](int j, cplx x) { return H_and_P(x, lam, spec.beta[j - 1], spec.gamma[j - 1]); };
    auto P = [&](int j, cplx x) { return HPj(j, x).P; };
    auto e = [&](cplx x) { return exp_e(x, lam, l); };
    const cplx a = kAlpha, ab = kAlphaBar;
    const cplx ep = e(k), em = e(-k), eb = e(ab * k), emb = e(-ab * k);
    const cplx pa = P(1, a * k) * P(2, a * k) * P(3, a * k), pb = P(1, ab * k) * P(2, ab * k) * P(3, ab * k);
    const cplx D = P(1, ab * k) / (P(2, a * k) * P(3, a * k)) * (em * em * em - ep * ep * ep * pa / pb);
    const cplx G1 = (emb - em * em * eb * P(1, k) * P(1, ab * k) / (P(2, a * k) * P(3, a * k))) / P(1, k);
    const cplx G2 = em * em * P(1, ab * k) / (P(2, k) * P(2, a * k)) *
                    (emb - ep * ep * ep * ep * eb * P(2, k) * P(2, a * k) / (P(1, ab * k) * P(3, ab * k)));
    const cplx G3 = ep * ep * P(1, a * k) / (P(3, k) * P(3, ab * k)) *
                    (emb - em * em * eb * P(3, k) * P(3, ab * k) / (P(1, a * k) * P(2, a * k)));
    EliminationResult r;
    r.target = D * HPj(2, ab * k).H;
    r.coeff = {G1 * HPj(1, k).H, G2 * HPj(2, k).H, G3 * HPj(3, k).H};
    r.inhom = 0.0;
    r.has_inhom = false;
    return r;
}

cplx poincare_Q(const PoincareSpec& spec, cplx k) {
    cplx q = std::exp(3.0 * mu(k, spec.lambda) * spec.l);
    for (int j = 0; j < 3; ++j) {
        if (constant_P(spec.lambda, spec.beta[j], spec.gamma[j])) continue;
        q *= H_and_P(kAlpha * k, spec.lambda, spec.beta[j], spec.gamma[j]).P /
             H_and_P(kAlphaBar * k, spec.lambda, spec.beta[j], spec.gamma[j]).P;
    }
    return q;
}

namespace {

// principal log of Q and its derivative
cplx logQ(const PoincareSpec& spec, cplx k, cplx* d) {
    const double lam = spec.lambda;
    cplx dd = 3.0 * spec.l * mu_prime(k, lam);
    for (int j = 0; j < 3; ++j) {
        if (constant_P(lam, spec.beta[j], spec.gamma[j])) continue;
        dd += kAlpha * dlogP(kAlpha * k, lam, spec.beta[j], spec.gamma[j]) -
              kAlphaBar * dlogP(kAlphaBar * k, lam, spec.beta[j], spec.gamma[j]);
    }
    *d = dd;
    return std::log(poincare_Q(spec, k));
}

bool newton_Q(const PoincareSpec& spec, cplx& k, const RootSearchOptions& opt) {
    const double cap = 0.5 * 2.0 * kPi / (3.0 * spec.l);
    for (int it = 0; it < opt.max_iter; ++it) {
        cplx d, g;
        try {
            g = logQ(spec, k, &d);
        } catch (const DomainError&) {
            return false;
        }
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag()) || d == 0.0) return false;
        cplx step = g / d;
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        k -= step;
        if (k == 0.0) return false;
        if (std::abs(step) <= opt.tol * std::max(1.0, std::abs(k))) {
            // one polishing step
            try {
                g = logQ(spec, k, &d);
                if (std::isfinite(g.real())) k -= g / d;
            } catch (const DomainError&) {
            }
            return true;
        }
    }
    return false;
}

PoincareSpec interpolate(const PoincareSpec& s, double tau) {
    PoincareSpec t = s;
    for (int j = 0; j < 3; ++j) {
        const double b0 = std::sin(s.beta[j]) > 0 ? kPi / 2 : -kPi / 2;
        double b = s.beta[j];
        // nearest representative of beta around b0
        while (b - b0 > kPi) b -= 2 * kPi;
        while (b - b0 < -kPi) b += 2 * kPi;
        t.beta[j] = b0 + tau * (b - b0);
        t.gamma[j] = tau * s.gamma[j];
    }
    return t;
}

bool continue_root(const PoincareSpec& spec, cplx& k, const RootSearchOptions& opt) {
    double tau = 0.0, h = 1.0 / opt.steps;
    int halvings = 0;
    while (tau < 1.0) {
        const double next = std::min(1.0, tau + h);
        cplx trial = k;
        if (newton_Q(interpolate(spec, next), trial, opt) && std::abs(trial - k) < 0.5 * std::max(1.0, std::abs(k))) {
            k = trial;
            tau = next;
            h = std::min(2.0 * h, 1.0 / opt.steps);
        } else {
            h *= 0.5;
            if (++halvings > 30) return false;
        }
    }
    return true;
}

// Z(k) = e^3(-k) A - e^3(k) B, both terms scaled by e^{-c}; zeros are the roots of Q = 1
void cleared_terms(const PoincareSpec& spec, cplx k, double c, cplx& t1, cplx& t2) {
    const double lam = spec.lambda, l = spec.l;
    cplx A = 1.0, B = 1.0;
    for (int j = 0; j < 3; ++j) {
        const double b = spec.beta[j], g = spec.gamma[j];
        if (constant_P(lam, b, g)) continue;
        const cplx xa = kAlpha * k, xb = kAlphaBar * k;
        const cplx ha = H_fn(xa, lam, b, g), hba = Hbar_fn(xa, lam, b, g);
        const cplx hb = H_fn(xb, lam, b, g), hbb = Hbar_fn(xb, lam, b, g);
        const double sc = 1.0 / (std::abs(k) + lam / std::abs(k) + std::abs(g));
        A *= hba * hb * sc * sc;
        B *= ha * hbb * sc * sc;
    }
    const cplx m = mu(k, lam);
    t1 = A * std::exp(-1.5 * m * l - c);
    t2 = B * std::exp(1.5 * m * l - c);
}

double scale_c(const PoincareSpec& spec, cplx k) { return 1.5 * std::abs(mu(k, spec.lambda).real()) * spec.l; }

cplx cleared_D(const PoincareSpec& spec, cplx k) {
    cplx t1, t2;
    cleared_terms(spec, k, scale_c(spec, k), t1, t2);
    return t1 - t2;
}

// Newton on the analytic Z with a frozen scale; robust next to near-cancelling zero/pole pairs of Q
bool newton_Z(const PoincareSpec& spec, cplx& k, const RootSearchOptions& opt) {
    const double c = scale_c(spec, k);
    auto Z = [&](cplx x) {
        cplx t1, t2;
        cleared_terms(spec, x, c, t1, t2);
        return t1 - t2;
    };
    const double cap = 0.25 * 2.0 * kPi / (3.0 * spec.l);
    for (int it = 0; it < opt.max_iter; ++it) {
        if (k == 0.0) return false;
        const double h = 1e-6 * std::max(1e-3, std::abs(k));
        const cplx z = Z(k), dz = (Z(k + h) - Z(k - h)) / (2.0 * h);
        if (!std::isfinite(std::abs(z)) || !std::isfinite(std::abs(dz)) || dz == 0.0) return false;
        cplx step = z / dz;
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        k -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(k))) return k != 0.0;
    }
    return false;
}

double root_residual(const PoincareSpec& spec, cplx k) {
    cplx t1, t2;
    cleared_terms(spec, k, scale_c(spec, k), t1, t2);
    const double sc = std::abs(t1) + std::abs(t2);
    return sc > 0.0 ? std::abs(t1 - t2) / sc : 0.0;
}

double seed_spacing(const PoincareSpec& spec) { return 2.0 * kPi / (3.0 * spec.l); }

ModeRoot certify(const PoincareSpec& spec, cplx k, int m, int branch) {
    ModeRoot r;
    r.index = m;
    r.branch = branch;
    r.k = k;
    r.halfplane = classify_halfplane(k, 1e-10);
    r.residual = root_residual(spec, k);
    return r;
}

}  // namespace

int winding_count(const PoincareSpec& spec, double r) {
    const int n0 = 1024;
    double total = 0.0;
    auto z = [&](double th) { return cleared_D(spec, std::polar(r, th)); };
    // adaptive: split any step whose phase change exceeds 0.5 rad
    struct Seg {
        double a, b;
        cplx za, zb;
        int depth;
    };
    std::vector<Seg> stack;
    for (int i = n0 - 1; i >= 0; --i) {
        const double a = 2 * kPi * i / n0, b = 2 * kPi * (i + 1) / n0;
        stack.push_back({a, b, z(a), z(b), 0});
    }
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.za == 0.0 || s.zb == 0.0) throw RootError("argument-principle contour passes through a root");
        const double d = std::arg(s.zb / s.za);
        if (std::abs(d) > 0.5 && s.depth < 40) {
            const double mid = 0.5 * (s.a + s.b);
            const cplx zm = z(mid);
            stack.push_back({mid, s.b, zm, s.zb, s.depth + 1});
            stack.push_back({s.a, mid, s.za, zm, s.depth + 1});
            continue;
        }
        total += d;
    }
    return static_cast<int>(std::lround(total / (2 * kPi)));
}

std::vector<ModeRoot> HalfPlaneRootSet::all() const {
    std::vector<ModeRoot> v = plus;
    v.insert(v.end(), minus.begin(), minus.end());
    return v;
}

HalfPlaneRootSet D_root_set(const PoincareSpec& spec, int count, const RootSearchOptions& opt) {
    if (spec.lambda < 0.0) throw ParameterError("root sets are computed for lambda >= 0");
    if (count < 1) throw ParameterError("root count must be positive");
    const double lam = spec.lambda, l = spec.l;
    const int mmax = count + 2;
    std::vector<ModeRoot> found;
    auto add = [&](cplx k, int m, int branch) {
        for (const auto& f : found)
            if (std::abs(f.k - k) <= 1e-9 * std::max(1.0, std::abs(k))) return;
        found.push_back(certify(spec, k, m, branch));
    };
    const int nb = lam > 0.0 ? 2 : 1;
    for (int m = -mmax; m <= mmax; ++m)
        for (int b = 0; b < nb; ++b) {
            if (lam == 0.0 && m == 0) continue;
            cplx k = quadratic_mode_root(cplx(0.0, 2 * kPi * m / (3 * l)), lam, b);
            if (continue_root(spec, k, opt)) add(k, m, b);
        }
    // audit annulus: outer radius in the widest gap of root moduli above the target
    const double target = 2 * kPi * (count + 2) / (3 * l) + std::sqrt(lam);
    std::vector<double> mods;
    for (const auto& f : found) mods.push_back(std::abs(f.k));
    std::sort(mods.begin(), mods.end());
    auto gap_radius = [&](double lo, double hi) {
        double best = 0.5 * (lo + hi), bestd = -1.0;
        for (int i = 0; i <= 64; ++i) {
            const double r = lo + (hi - lo) * i / 64.0;
            double d = 1e300;
            for (double m : mods) d = std::min(d, std::abs(m - r));
            if (d > bestd) {
                bestd = d;
                best = r;
            }
        }
        return best;
    };
    HalfPlaneRootSet out;
    out.r_out = gap_radius(target, target + seed_spacing(spec));
    if (lam > 0.0) {
        out.r_in = gap_radius(lam / (target + seed_spacing(spec)), lam / target);
    } else {
        double lo = 1e300;
        for (double m : mods) lo = std::min(lo, m);
        out.r_in = gap_radius(0.05 * std::min(lo, seed_spacing(spec)), 0.5 * std::min(lo, seed_spacing(spec)));
    }
    auto inside = [&](const ModeRoot& r) {
        const double a = std::abs(r.k);
        return a > out.r_in && a < out.r_out;
    };
    const int w_in = winding_count(spec, out.r_in), w_out = winding_count(spec, out.r_out);
    out.audited_count = w_out - w_in;
    auto n_inside = [&]() { return static_cast<int>(std::count_if(found.begin(), found.end(), inside)); };
    if (n_inside() < out.audited_count) {
        // near-cancelling zero/pole pairs of P_j hide roots next to the zeros of H_j and Hbar_j
        for (int j = 0; j < 3; ++j) {
            const double b = spec.beta[j], g = spec.gamma[j];
            if (constant_P(lam, b, g)) continue;
            const cplx disc = std::sqrt(cplx(g * g - 4.0 * lam));
            for (cplx u : {0.5 * (g + disc), 0.5 * (g - disc)}) {
                if (u == 0.0) continue;
                for (cplx w : {u * std::polar(1.0, -b), u * std::polar(1.0, b)})
                    for (cplx rot : {kAlpha, kAlphaBar})
                        for (int q = 0; q < 8; ++q) {
                            cplx k = rot * w * (1.0 + std::polar(1e-3, kPi * q / 4));
                            if (newton_Z(spec, k, opt)) add(k, 9998, 0);
                        }
            }
        }
    }
    if (n_inside() < out.audited_count) {
        // bisect the annulus down to thin shells whose count disagrees, then seed densely there
        auto have_in = [&](double a, double b) {
            return static_cast<int>(std::count_if(found.begin(), found.end(), [&](const ModeRoot& r) {
                const double x = std::abs(r.k);
                return x > a && x < b;
            }));
        };
        std::function<void(double, double, int, int, int)> refine = [&](double a, double b, int wa, int wb, int depth) {
            if (have_in(a, b) >= wb - wa) return;
            if (depth >= 16 || b - a < 0.01 * b) {
                for (int i = 0; i <= 4; ++i)
                    for (int q = 0; q < 256; ++q) {
                        cplx k = std::polar(a + (b - a) * i / 4.0, 2 * kPi * (q + 0.5) / 256);
                        if (newton_Z(spec, k, opt)) add(k, 9999, 0);
                    }
                return;
            }
            double mid = std::sqrt(a * b);
            int wm = 0;
            for (int tries = 0;; ++tries) {
                try {
                    wm = winding_count(spec, mid);
                    break;
                } catch (const RootError&) {
                    if (tries > 4) throw;
                    mid *= 1.0 + 1e-6;
                }
            }
            refine(a, mid, wa, wm, depth + 1);
            refine(mid, b, wm, wb, depth + 1);
        };
        refine(out.r_in, out.r_out, w_in, w_out, 0);
    }
    const int have = n_inside();
    if (have != out.audited_count) {
        std::ostringstream os;
        os << "incomplete root set: argument principle counts " << out.audited_count << " roots in " << out.r_in
           << " < |k| < " << out.r_out << ", found " << have;
        throw RootError(os.str());
    }
    for (const auto& r : found) {
        if (!inside(r)) continue;
        if (r.halfplane == HalfPlane::AXIS)
            throw ClassificationError("root on the inversion contour at |k| = " + std::to_string(std::abs(r.k)));
        out.max_residual = std::max(out.max_residual, r.residual);
        (r.halfplane == HalfPlane::PLUS ? out.plus : out.minus).push_back(r);
    }
    auto by_mu = [&](const ModeRoot& a, const ModeRoot& b) {
        const double ia = std::abs(mu(a.k, lam).imag()), ib = std::abs(mu(b.k, lam).imag());
        if (ia != ib) return ia < ib;
        if (a.k.real() != b.k.real()) return a.k.real() < b.k.real();
        return a.k.imag() < b.k.imag();
    };
    std::sort(out.plus.begin(), out.plus.end(), by_mu);
    std::sort(out.minus.begin(), out.minus.end(), by_mu);
    return out;
}

// ---------------------------------------------------------------- symmetric Dirichlet

cplx scaled_G(const BoundaryTrace& f, cplx k, double lam, double l, double c, int order) {
    auto F = [&](cplx x) { return trace_moment(f, mu(x, lam), lam / x, 0.5, l, order, -c); };
    auto es = [&](cplx x) { return std::exp(mu(x, lam) * (0.5 * l) - c); };
    auto e = [&](cplx x) { return exp_e(x, lam, l); };
    const cplx a = kAlpha, ab = kAlphaBar;
    return (es(ab * k) + es(-ab * k)) * trace_moment(f, mu(k, lam), lam / k, 0.5, l, order) +
           (e(-k) + e(k)) * F(ab * k) + 2.0 * F(a * k);
}

SymmetricDirichletIntegral::SymmetricDirichletIntegral(const BoundaryTrace& f, double lambda, double l,
                                                       const IntegralOptions& opt)
    : f_(f), lambda_(lambda), l_(l), opt_(opt) {
    if (lambda < 0.0) throw ParameterError("integral representation needs lambda >= 0");
    const double lam = lambda;
    const int order = opt.order;
    // on the contour mu(abar k) is imaginary: G and Delta both grow like e^{|Re mu(k)| l/2}
    auto phi = [&](cplx k) {
        const cplx m = mu(k, lam);
        const double c = std::abs(m.real()) * 0.5 * l;
        auto F = [&](cplx x) { return trace_moment(f, mu(x, lam), lam / x, 0.5, l, order, -c); };
        auto es = [&](cplx x) { return std::exp(mu(x, lam) * (0.5 * l) - c); };
        auto e = [&](cplx x) { return exp_e(x, lam, l); };
        const cplx kb = kAlphaBar * k;
        const cplx Fb = trace_moment(f, mu(kb, lam), lam / kb, 0.5, l, order);
        const cplx G = (e(kb) + e(-kb)) * F(k) + (es(-k) + es(k)) * Fb + 2.0 * F(kAlpha * k);
        return -kI * G / (es(k) - es(-k));
    };
    J_ = std::make_unique<RayIntegral>(phi, lam, l, opt.contour);
    const int nb = lam > 0.0 ? 2 : 1;
    for (int n = -opt.roots; n <= opt.roots; ++n)
        for (int b = 0; b < nb; ++b) {
            if (lam == 0.0 && n == 0) continue;
            ModeRoot r = symmetric_mode(n, lam, l, b);
            if (r.halfplane == HalfPlane::AXIS) throw ClassificationError("zero of Delta on the inversion contour");
            const cplx k = r.k, mb = mu(kAlphaBar * k, lam);
            const double c = std::abs(mb.real()) * 0.5 * l;
            const cplx dDelta = 0.5 * l * mu_prime(k, lam) * (exp_e(k, lam, l) + exp_e(-k, lam, l));
            const bool plus = r.halfplane == HalfPlane::PLUS;
            const cplx den = std::exp(-2.0 * c) - std::exp((plus ? 1.0 : -1.0) * mb * l - 2.0 * c);
            if (std::abs(den) <= 1e-12 * std::max(std::exp(-2.0 * c), 1.0))
                throw ResonanceError("vanishing residue denominator at n = " + std::to_string(n));
            const cplx G = scaled_G(f, k, lam, l, c, order);
            const cplx w = 1.0 - lam / ((kAlphaBar * k) * (kAlphaBar * k));
            const cplx pre = (plus ? -1.0 : 1.0) * kI * kAlphaBar * w * G / (dDelta * den);
            if (!std::isfinite(std::abs(pre))) throw NumericalError("overflow in residue term n = " + std::to_string(n));
            roots_.push_back(r);
            gs_.push_back(pre);
            cn_.push_back(c);
        }
}

double SymmetricDirichletIntegral::operator()(double s) const {
    cplx acc = (*J_)(s);
    for (size_t i = 0; i < roots_.size(); ++i) {
        const cplx mb = mu(kAlphaBar * roots_[i].k, lambda_);
        acc += gs_[i] * std::exp(-mb * s - cn_[i]);
    }
    const double fac = lambda_ > 0.0 ? 1.0 : 2.0;
    return fac * acc.real();
}

double symmetric_dirichlet_integral(const BoundaryTrace& f, double lambda, double l, double s) {
    return SymmetricDirichletIntegral(f, lambda, l)(s);
}

// ---------------------------------------------------------------- mixed Neumann-Robin

namespace {

cplx contour_residue(const std::function<cplx(cplx)>& g, cplx k, double rr) {
    const int n = 32;
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx u = std::polar(1.0, 2 * kPi * (i + 0.5) / n);
        acc += g(k + rr * u) * rr * u;
    }
    return acc / double(n);
}

}  // namespace

MixedNRTrace::MixedNRTrace(const std::array<BoundaryTrace, 3>& f, double lambda, double l, const IntegralOptions& opt)
    : lambda_(lambda), l_(l) {
    const PoincareSpec ps = PoincareSpec::mixed_nr(lambda, l);
    ProblemSpec spec = ps.problem(f);
    spec.order = opt.order;
    auto row0 = [&spec](cplx k) { return y2_known(spec, k); };
    J_ = std::make_unique<RayIntegral>(row0, lambda, l, opt.contour);
    roots_ = D_root_set(ps, opt.roots);
    const auto all = roots_.all();
    for (size_t i = 0; i < all.size(); ++i) {
        const cplx k = all[i].k;
        double dmin = std::abs(k);
        for (size_t j = 0; j < all.size(); ++j)
            if (j != i) dmin = std::min(dmin, std::abs(all[j].k - k));
        const double rr = std::min(1e-2 * std::min(std::abs(k), 1.0), 0.1 * dmin);
        const cplx R = contour_residue(row0, k, rr);
        const HP hp = H_and_P(kAlpha * k, lambda, ps.beta[0], ps.gamma[0]);
        const cplx E6 = std::exp(6.0 * mu((all[i].halfplane == HalfPlane::PLUS ? kI : -kI) * kAlpha * k, lambda) *
                                 (l / (2.0 * kSqrt3)));
        const bool plus = all[i].halfplane == HalfPlane::PLUS;
        const cplx den = plus ? 1.0 + E6 / hp.P : 1.0 + hp.P * E6;
        min_den_ = std::min(min_den_, std::abs(den) / std::max(1.0, std::abs(den - 1.0)));
        if (min_den_ < 1e-10) throw ResonanceError("vanishing residue denominator at root index " +
                                                   std::to_string(all[i].index));
        const cplx w = 1.0 - lambda / ((kAlphaBar * k) * (kAlphaBar * k));
        const cplx term = (plus ? 1.0 : -1.0) * kAlphaBar * w * R / den;
        if (!std::isfinite(std::abs(term))) throw NumericalError("overflow in residue sum");
        k_.push_back(k);
        res_.push_back(term);
    }
}

double MixedNRTrace::operator()(double s) const {
    cplx acc = (*J_)(s);
    for (size_t i = 0; i < k_.size(); ++i) acc += res_[i] * std::exp(-mu(kAlphaBar * k_[i], lambda_) * s);
    return acc.real();
}

double mixed_nr_trace(const std::array<BoundaryTrace, 3>& f, double lambda, double l, double s) {
    return MixedNRTrace(f, lambda, l)(s);
}

std::array<BoundaryTrace, 3> reflect_mixed_data(const std::array<BoundaryTrace, 3>& f) {
    return {f[0].reversed().with_side(1), f[2].reversed().with_side(2), f[1].reversed().with_side(3)};
}

}  // namespace tri
