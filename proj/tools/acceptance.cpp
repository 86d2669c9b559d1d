// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [path/to/trisolve]   (the binary is used for the determinism check)

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trispec/config.hpp"
#include "trispec/fd.hpp"
#include "trispec/interior.hpp"
#include "trispec/manufactured.hpp"
#include "trispec/poincare.hpp"
#include "trispec/run.hpp"
#include "trispec/series.hpp"

using namespace tri;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", v);
    return b;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

cplx random_k(std::mt19937_64& rng, double rmin, double rmax) {
    std::uniform_real_distribution<double> r(rmin, rmax), th(0.0, 2.0 * kPi);
    return std::polar(r(rng), th(rng));
}

ManufacturedSolution sym_solution(double lam) {
    return ManufacturedSolution::symmetrized(ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam));
}

ManufacturedSolution general_solution(double lam) {
    return ManufacturedSolution::sum(ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam),
                                     ManufacturedSolution::plane_wave(cplx(-0.7, 1.9), lam, 0.5));
}

std::vector<ManufacturedSolution> families(double lam) {
    return {ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam),
            ManufacturedSolution::real_exp(std::sqrt(4 * lam + 4.0), 2.0, 0.3, lam),
            ManufacturedSolution::symmetrized(ManufacturedSolution::plane_wave(cplx(1.1, -0.6), lam))};
}

using Three = std::array<BoundaryTrace, 3>;

Three dir3(const ManufacturedSolution& s, const TriangleGeometry& g) {
    return {dirichlet_trace(s, g, 1), dirichlet_trace(s, g, 2), dirichlet_trace(s, g, 3)};
}
Three neu3(const ManufacturedSolution& s, const TriangleGeometry& g) {
    return {neumann_trace(s, g, 1), neumann_trace(s, g, 2), neumann_trace(s, g, 3)};
}

double max_err(const Three& a, const Three& b, double l) {
    double m = 0.0;
    for (int j = 0; j < 3; ++j) m = std::max(m, compare_traces(a[j], b[j], l));
    return m;
}

Three demean(const Three& t, double l) {
    double mean = 0.0;
    const int n = 400;
    for (const auto& tr : t)
        for (int i = 0; i < n; ++i) mean += tr.value(-0.5 * l + l * (i + 0.5) / n);
    mean /= 3.0 * n;
    Three out;
    for (int j = 0; j < 3; ++j) out[j] = t[j].axpy(1.0, BoundaryTrace::constant(j + 1, 1.0), -mean);
    return out;
}

std::vector<cplx> interior_points(const TriangleGeometry& g, int n, double min_margin) {
    std::mt19937_64 rng(7);
    const double l = g.side_length();
    std::uniform_real_distribution<double> x(-l / kSqrt3, 0.5 * l / kSqrt3), y(-0.5 * l, 0.5 * l);
    std::vector<cplx> out;
    while (static_cast<int>(out.size()) < n) {
        const cplx z(x(rng), y(rng));
        if (g.margin(z) >= min_margin * l) out.push_back(z);
    }
    return out;
}

// 1: exponential and unity-root relations, corner cancellation
Verdict identities() {
    std::mt19937_64 rng(101);
    const double l = 1.0;
    double worst = 0.0, worst_corner = 0.0;
    const double h = 0.5 * l;
    for (double lam : {0.0, 1.0, 5.0})
        for (int i = 0; i < 100; ++i) {
            const cplx k = random_k(rng, 0.1, 10.0);
            const cplx a = kAlpha, ab = kAlphaBar;
            worst = std::max({worst, std::abs(a * a - ab), std::abs(a * ab - 1.0), std::abs(1.0 + a + ab),
                              std::abs(kI * ab - kI * a - kSqrt3) / kSqrt3,
                              std::abs(kI * a - kI - kSqrt3 * ab) / kSqrt3});
            worst = std::max({worst, rel(exp_E(k, lam, l) * exp_E(a * k, lam, l) * exp_E(ab * k, lam, l), 1.0),
                              rel(exp_E(kI * ab * k, lam, l) * exp_E(-kI * a * k, lam, l), exp_e(k, lam, l)),
                              rel(exp_E(kI * a * k, lam, l) * exp_E(-kI * k, lam, l), exp_e(ab * k, lam, l)),
                              rel(exp_E(-kI * k, lam, l) * exp_e(-k, lam, l),
                                  exp_E(-kI * ab * k, lam, l) * exp_e(ab * k, lam, l))});
            // vertex terms of continuous traces cancel when the beta_j agree
            const double v1 = 0.7, v2 = -1.3, v3 = 2.1, beta = 0.4 + 0.02 * i;
            auto tr = [&](int j, double lo, double hi) {
                return BoundaryTrace(
                    j, [=](double s) { return lo + (hi - lo) * (s + h) / l + 0.3 * std::sin(kPi * s) + 0.3; },
                    [=](double s) { return (hi - lo) / l + 0.3 * kPi * std::cos(kPi * s); });
            };
            const BoundaryTrace q1 = tr(1, v2, v1 - 0.6), q2 = tr(2, v3, v2 - 0.6), q3 = tr(3, v1, v3 - 0.6);
            const cplx t1 = exp_E(-kI * k, lam, l) * corner_term(q1, k, lam, beta, l);
            const cplx t2 = exp_E(-kI * ab * k, lam, l) * corner_term(q2, ab * k, lam, beta, l);
            const cplx t3 = exp_E(-kI * a * k, lam, l) * corner_term(q3, a * k, lam, beta, l);
            const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
            worst_corner = std::max(worst_corner, std::abs(t1 + t2 + t3) / scale);
        }
    return {worst <= 1e-12 && worst_corner <= 1e-12,
            "max relative defect " + fmt(worst) + ", corner cancellation " + fmt(worst_corner) + " (limit 1e-12)"};
}

// 2: global relation of exact trace sets
Verdict global_relation() {
    std::mt19937_64 rng(202);
    const TriangleGeometry g(1.0);
    double worst = 0.0;
    for (double lam : {0.0, 1.0})
        for (const auto& sol : families(lam)) {
            const TraceSet t = manufactured_traces(sol, g);
            for (int i = 0; i < 50; ++i) {
                const cplx k = random_k(rng, 0.2, 5.0);
                const double scale =
                    std::max({std::abs(rho_tilde(t, 1, k)), std::abs(rho_tilde(t, 2, k)), std::abs(rho_tilde(t, 3, k))});
                worst = std::max(worst, std::abs(global_residual(t, k)) / scale);
            }
        }
    return {worst <= 1e-8, "max relative residual " + fmt(worst) + " (limit 1e-8)"};
}

// 3: symmetric Dirichlet series against the exact Neumann trace
Verdict symmetric_dirichlet() {
    const TriangleGeometry g(1.0);
    double worst = 0.0;
    for (double lam : {1.0, 0.0}) {
        const auto sol = sym_solution(lam);
        SeriesOptions o;
        o.truncation = 64;
        const auto r = symmetric_dirichlet_dtn(dirichlet_trace(sol, g, 1), lam, 1.0, o);
        for (int j = 1; j <= 3; ++j)
            worst = std::max(worst, compare_traces(r.traces[j - 1], neumann_trace(sol, g, j), 1.0, Norm::MAX, 0.02));
    }
    return {worst <= 1e-6, "max-norm error " + fmt(worst) + " at N = 64 (limit 1e-6)"};
}

// 4: D -> N -> D and N -> D -> N
Verdict round_trips() {
    const double l = 1.0;
    const TriangleGeometry g(l);
    SeriesOptions o;
    o.truncation = 64;
    double e1 = 0.0, e0 = 0.0;
    for (double lam : {1.0, 0.0}) {
        const auto sol = general_solution(lam);
        const Three f = dir3(sol, g), fn = neu3(sol, g);
        const auto dn = general_dirichlet_dtn(f, lam, l, o);
        const auto back = neumann_ntd(dn.traces, lam, l, o);
        const auto nd = neumann_ntd(fn, lam, l, o);
        const auto back2 = general_dirichlet_dtn(nd.traces, lam, l, o);
        // Laplace: Dirichlet traces are fixed up to a constant
        const Three fref = lam == 0.0 ? demean(f, l) : f;
        const double e = std::max(max_err(back.traces, fref, l), max_err(back2.traces, fn, l));
        (lam == 0.0 ? e0 : e1) = e;
    }
    return {e1 <= 1e-6 && e0 <= 1e-6, "lambda = 1: " + fmt(e1) + ", lambda = 0 (gauge removed): " + fmt(e0) +
                                          " (limit 1e-6)"};
}

// 5: series vs contour/residue, closed vs numeric elimination
Verdict dual_representation() {
    const double l = 1.0;
    const TriangleGeometry g(l);
    double e_rep = 0.0;
    for (double lam : {1.0, 0.0}) {
        const auto sol = sym_solution(lam);
        const BoundaryTrace f = dirichlet_trace(sol, g, 1);
        const SymmetricDirichletIntegral rep(f, lam, l);
        SeriesOptions o;
        o.truncation = 64;
        const auto ser = symmetric_dirichlet_dtn(f, lam, l, o);
        for (int i = 0; i <= 96; ++i) {
            const double s = -0.48 * l + 0.96 * l * i / 96;
            e_rep = std::max(e_rep, std::abs(rep(s) - ser.traces[0].value(s)));
        }
    }
    std::mt19937_64 rng(505);
    double e_el = 0.0;
    for (double lam : {1.0, 0.0}) {
        const auto sol = general_solution(lam);
        for (auto [beta, gamma] : {std::pair{1.1, 0.4}, std::pair{2.0, -0.3}}) {
            const auto ps = PoincareSpec::oblique(lam, l, beta, gamma);
            Three f;
            for (int j = 1; j <= 3; ++j) f[j - 1] = robin_trace(sol, g, j, beta, gamma);
            const ProblemSpec spec = ps.problem(f);
            for (int i = 0; i < 20; ++i) {
                const cplx k = random_k(rng, 0.5, 4.0);
                const auto num = eliminate_numeric(spec, k);
                const auto cf = eliminate_oblique_closed(f, lam, beta, gamma, l, k);
                for (int j = 0; j < 3; ++j) e_el = std::max(e_el, rel(cf.ratio(j), num.ratio(j)));
                e_el = std::max(e_el, rel(cf.inhom_ratio(), num.inhom_ratio()));
            }
        }
    }
    return {e_rep <= 1e-6 && e_el <= 1e-8,
            "series vs residue " + fmt(e_rep) + " (limit 1e-6); closed vs numeric elimination " + fmt(e_el) +
                " (limit 1e-8)"};
}

// 6: mixed Neumann-Robin Dirichlet value on side 2
Verdict mixed_trace() {
    const double lam = 1.0, l = 1.0, margin = 0.05;
    const TriangleGeometry g(l);
    const auto sol = general_solution(lam);
    const auto ps = PoincareSpec::mixed_nr(lam, l);
    Three f;
    for (int j = 1; j <= 3; ++j) f[j - 1] = robin_trace(sol, g, j, ps.beta[j - 1], ps.gamma[j - 1]);
    IntegralOptions opt;
    opt.roots = 150;
    const MixedNRTrace q2(f, lam, l, opt);
    const BoundaryTrace ex = dirichlet_trace(sol, g, 2);
    const FDSolution fd =
        fd_solve(manufactured_problem(sol, l, {BcKind::ROBIN, BcKind::NEUMANN, BcKind::NEUMANN}, ps.gamma), 128);
    const BoundaryTrace& q2fd = fd.traces.dirichlet[1];
    double e_exact = 0.0, e_fd = 0.0, d_fd = 0.0;
    for (int i = 0; i <= 90; ++i) {
        const double s = (-0.5 + margin) * l + (1.0 - 2 * margin) * l * i / 90;
        const double v = q2(s);
        e_exact = std::max(e_exact, std::abs(v - ex.value(s)));
        e_fd = std::max(e_fd, std::abs(q2fd.value(s) - ex.value(s)));
        d_fd = std::max(d_fd, std::abs(v - q2fd.value(s)));
    }
    return {e_exact <= 1e-5 && d_fd <= 3.0 * e_fd,
            "vs exact " + fmt(e_exact) + " (limit 1e-5); vs lattice at h = l/128 " + fmt(d_fd) +
                ", lattice error " + fmt(e_fd) + " (limit 3x)"};
}

// 7: interior representations
Verdict interior() {
    const TriangleGeometry g(1.0);
    const auto pts = interior_points(g, 25, 0.1);
    double worst = 0.0;
    for (double lam : {0.0, 1.0}) {
        const auto sol = lam > 0 ? ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam)
                                 : ManufacturedSolution::real_exp(2.0, 2.0, 0.3, 0.0);
        const TraceSet t = manufactured_traces(sol, g);
        for (cplx z : pts) {
            const double gv = greens_eval(t, z);
            worst = std::max(worst, std::abs(gv - sol.q(z)));
            if (lam > 0) {
                const double fv = fokas_eval(t, z);
                worst = std::max({worst, std::abs(fv - sol.q(z)), std::abs(fv - gv)});
            }
        }
    }
    return {worst <= 1e-6, "max discrepancy " + fmt(worst) + " over 25 points, margin 0.1 l (limit 1e-6)"};
}

// 8: every root used is certified; argument-principle counts match
Verdict roots() {
    const double l = 1.0;
    const TriangleGeometry g(l);
    double worst = 0.0;
    int used = 0;
    std::string miss, where;
    auto take = [&](const std::vector<ModeRoot>& rs, const std::string& src) {
        for (const ModeRoot& r : rs)
            if (r.residual > worst) worst = r.residual, where = src;
        used += static_cast<int>(rs.size());
    };
    SeriesOptions o;
    o.truncation = 64;
    for (double lam : {1.0, 0.0, 5.0}) {
        const auto sol = general_solution(lam);
        take(symmetric_dirichlet_dtn(dirichlet_trace(sym_solution(lam), g, 1), lam, l, o).roots, "symmetric series");
        take(general_dirichlet_dtn(dir3(sol, g), lam, l, o).roots, "Dirichlet series");
        take(neumann_ntd(neu3(sol, g), lam, l, o).roots, "Neumann series");
    }
    for (int m = -20; m <= 20; ++m) take({robin_mode_root(m, 1.0, 1.1, 0.4, l)}, "Robin modes");
    take(SymmetricDirichletIntegral(dirichlet_trace(sym_solution(1.0), g, 1), 1.0, l).roots(), "residue sum");
    for (auto ps : {PoincareSpec::mixed_nr(1.0, l), PoincareSpec::oblique(1.0, l, 2 * kPi / 3, 0.5),
                    PoincareSpec::oblique(0.0, l, 1.1, 0.4), PoincareSpec::oblique(2.0, 1.5, 1.0, 0.0)}) {
        const HalfPlaneRootSet rs = D_root_set(ps, 40);
        take(rs.all(), "half-plane set");
        if (rs.audited_count != static_cast<int>(rs.all().size()))
            miss += " count " + std::to_string(rs.audited_count) + " vs found " + std::to_string(rs.all().size());
    }
    return {worst <= 1e-12 && miss.empty(), std::to_string(used) + " roots, max residual " + fmt(worst) + " (" + where + ")" +
                                                " (limit 1e-12); argument-principle counts " +
                                                (miss.empty() ? "all match" : "mismatch:" + miss)};
}

// 9: lattice oracle converges at second order
Verdict richardson() {
    const std::vector<std::pair<std::array<BcKind, 3>, std::array<double, 3>>> kinds = {
        {{BcKind::DIRICHLET, BcKind::DIRICHLET, BcKind::DIRICHLET}, {0, 0, 0}},
        {{BcKind::NEUMANN, BcKind::NEUMANN, BcKind::NEUMANN}, {0, 0, 0}},
        {{BcKind::ROBIN, BcKind::ROBIN, BcKind::ROBIN}, {0.7, 0.7, 0.7}},
        {{BcKind::ROBIN, BcKind::NEUMANN, BcKind::NEUMANN}, {std::sqrt(3.0), 0, 0}},
        {{BcKind::DIRICHLET, BcKind::NEUMANN, BcKind::ROBIN}, {0, 0, 1.5}}};
    double lo = 1e300, hi = 0.0;
    for (const auto& sol : families(1.0))
        for (const auto& [k, gm] : kinds) {
            const double r = richardson_ratio(sol, manufactured_problem(sol, 1.0, k, gm), 16);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    return {lo >= 3.5 && hi <= 4.5, "ratios in [" + fmt(lo) + ", " + fmt(hi) + "] over 3 families x 5 boundary sets"};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// 10: repeated runs give identical bytes
Verdict determinism(const std::string& trisolve) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "trisolve_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string cfg = R"({"lambda": 1.0, "truncation": 64, "samples": 257, "sides": [
        {"kind": "dirichlet", "data": "cosh(2*s) + s^2"},
        {"kind": "dirichlet", "data": "cosh(2*s) + s^2"},
        {"kind": "dirichlet", "data": "cosh(2*s) + s^2"}]})";
    std::ofstream(dir / "cfg.json") << cfg;
    std::vector<std::string> files = {"traces.csv", "manifest.json"};
    for (const char* run_dir : {"a", "b"}) {
        if (!trisolve.empty()) {
            const std::string cmd = "\"" + trisolve + "\" solve --config \"" + (dir / "cfg.json").string() +
                                    "\" --out \"" + (dir / run_dir).string() + "\" > /dev/null";
            if (std::system(cmd.c_str()) != 0) return {false, "trisolve failed"};
        } else {
            emit(run(load_config((dir / "cfg.json").string()), Command::SOLVE), (dir / run_dir).string());
        }
    }
    for (const auto& f : files)
        if (slurp(dir / "a" / f).empty() || slurp(dir / "a" / f) != slurp(dir / "b" / f))
            return {false, f + " differs between runs"};
    fs::remove_all(dir);
    return {true, std::string(trisolve.empty() ? "in-process" : "trisolve") + " runs byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string trisolve = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"identity suite", identities},
        {"global-relation audit", global_relation},
        {"symmetric Dirichlet to Neumann", symmetric_dirichlet},
        {"round trips", round_trips},
        {"dual representation", dual_representation},
        {"mixed Neumann-Robin trace", mixed_trace},
        {"interior field", interior},
        {"root certification", roots},
        {"lattice oracle quality", richardson},
        {"determinism", [&] { return determinism(trisolve); }},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
