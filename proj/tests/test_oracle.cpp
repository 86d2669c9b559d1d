#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "common.hpp"
#include "trispec/errors.hpp"
#include "trispec/fd.hpp"
#include "trispec/manufactured.hpp"
#include "trispec/series.hpp"
#include "trispec/spline.hpp"

using namespace tri;

namespace {

std::vector<ManufacturedSolution> families(double lam) {
    if (lam == 0.0)
        return {ManufacturedSolution::plane_wave(cplx(2.1, 0.7), 0.0), ManufacturedSolution::real_exp(2.0, 2.0, 0.3, 0.0),
                ManufacturedSolution::symmetrized(ManufacturedSolution::plane_wave(cplx(1.5, -0.9), 0.0))};
    return {ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam),
            ManufacturedSolution::real_exp(std::sqrt(4 * lam + 4.0), 2.0, 0.3, lam),
            ManufacturedSolution::symmetrized(ManufacturedSolution::plane_wave(cplx(1.1, -0.6), lam))};
}

}  // namespace

TEST_CASE("manufactured families solve the PDE") {
    TriangleGeometry g(1.0);
    for (double lam : {0.0, 1.0, 5.0})
        for (const auto& sol : families(lam)) {
            double worst = 0.0;
            for (cplx z : test::interior_points(g, 100, 0.0, 13)) {
                double qxx, qyy, qxy;
                sol.hessian(z, qxx, qyy, qxy);
                const double sc = std::abs(qxx) + std::abs(qyy) + 4 * lam * std::abs(sol.q(z)) + 1e-300;
                worst = std::max(worst, std::abs(qxx + qyy - 4 * lam * sol.q(z)) / sc);
            }
            CHECK(worst <= 1e-10);
        }
}

TEST_CASE("manufactured traces") {
    TriangleGeometry g(1.0);
    const TraceSet one = manufactured_traces(ManufacturedSolution::constant(1.0), g);
    for (int j = 0; j < 3; ++j)
        for (double s : {-0.5, -0.1, 0.3, 0.5}) {
            CHECK(one.dirichlet[j].value(s) == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(std::abs(one.neumann[j].value(s)) < 1e-15);
        }
    // side 1 has outward normal +x
    const double a = 2.5, b = 1.5;
    const auto re = ManufacturedSolution::real_exp(a, b, 0.0, (a * a - b * b) / 4);
    const BoundaryTrace n1 = neumann_trace(re, g, 1);
    for (double s : {-0.4, 0.0, 0.2}) {
        const cplx z = g.side_point(1, s);
        CHECK(n1.value(s) == doctest::Approx(a * std::exp(a * z.real()) * std::cos(b * z.imag())).epsilon(1e-13));
    }
    for (const auto& sol : families(1.0)) CHECK(manufactured_traces(sol, g).corner_mismatch() <= 1e-13);
    // symmetrized solutions are invariant under 120 degree rotation
    const auto sym = families(1.0)[2];
    for (cplx z : test::interior_points(g, 10, 0.0)) CHECK(std::abs(sym.q(kAlpha * z) - sym.q(z)) < 1e-13);
}

TEST_CASE("compare_traces") {
    const double l = 1.0, eps = 1e-3;
    const BoundaryTrace a(1, [](double s) { return std::cos(3 * s); }, [](double s) { return -3 * std::sin(3 * s); });
    const BoundaryTrace b = a.axpy(1.0,
                                   BoundaryTrace(
                                       1, [=](double s) { return std::sin(2 * kPi * s / l); },
                                       [=](double s) { return 2 * kPi / l * std::cos(2 * kPi * s / l); }),
                                   eps);
    CHECK(compare_traces(a, a, l) == 0.0);
    CHECK(compare_traces(a, b, l, Norm::MAX, 0.0, 2001) == doctest::Approx(eps).epsilon(1e-6));
    // series vs exact at N = 64
    TriangleGeometry g(l);
    const auto sol = ManufacturedSolution::symmetrized(ManufacturedSolution::plane_wave(cplx(1.3, 0.8), 1.0));
    const auto r = symmetric_dirichlet_dtn(dirichlet_trace(sol, g, 1), 1.0, l);
    CHECK(compare_traces(r.traces[0], neumann_trace(sol, g, 1), l) <= 1e-6);
    CHECK(compare_traces(r.traces[0], neumann_trace(sol, g, 1), l, Norm::L2) <= 1e-6);
}

TEST_CASE("cubic spline") {
    auto errors = [](int n) {
        std::vector<double> x, y;
        for (int i = 0; i <= n; ++i) {
            x.push_back(-0.5 + double(i) / n);
            y.push_back(std::sin(3 * x.back()) + x.back());
        }
        CubicSpline sp(x, y);
        double ev = 0.0, ed = 0.0;
        for (int i = 0; i <= 500; ++i) {
            const double t = -0.5 + i / 500.0;
            ev = std::max(ev, std::abs(sp(t) - std::sin(3 * t) - t));
            ed = std::max(ed, std::abs(sp.derivative(t) - 3 * std::cos(3 * t) - 1));
        }
        return std::pair{ev, ed};
    };
    const auto [ev, ed] = errors(40);
    const auto [ev2, ed2] = errors(80);
    CHECK(ev < 1e-6);
    CHECK(ed < 1e-3);
    // value O(h^4), slope O(h^3)
    CHECK(ev / ev2 > 12.0);
    CHECK(ed / ed2 > 6.0);
    std::vector<double> x, y;
    for (int i = 0; i <= 40; ++i) {
        x.push_back(-0.5 + i / 40.0);
        y.push_back(std::sin(3 * x.back()) + x.back());
    }
    CubicSpline sp(x, y);
    // reproduces cubics exactly
    std::vector<double> c;
    for (double t : x) c.push_back(t * t * t - 2 * t);
    CubicSpline cs(x, c);
    CHECK(std::abs(cs(0.123) - (std::pow(0.123, 3) - 2 * 0.123)) < 1e-13);
    CHECK(std::abs(cs.derivative(-0.31) - (3 * 0.31 * 0.31 - 2)) < 1e-12);
    // derivative matches differences of the spline itself
    const double t = 0.211, h = 1e-6;
    CHECK(std::abs(sp.derivative(t) - (sp(t + h) - sp(t - h)) / (2 * h)) < 1e-8);
    CHECK_THROWS_AS(CubicSpline({0.0, 0.0, 1.0}, {1.0, 2.0, 3.0}), ParameterError);
}

TEST_CASE("sample files") {
    const std::string path = "oracle_samples.txt";
    {
        std::ofstream f(path);
        f << "# s, value\n";
        for (int i = 0; i <= 64; ++i) {
            const double s = -0.5 + i / 64.0;
            f << s << ", " << std::cos(2 * kPi * s) << "\n";
        }
    }
    const CubicSpline sp = read_sample_file(path);
    CHECK(std::abs(sp(0.1) - std::cos(0.2 * kPi)) < 1e-5);
    {
        std::ofstream f(path);
        f << "0 1\n0.1 2\n0.05 3\n";
    }
    CHECK_THROWS_AS(read_sample_file(path), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_sample_file("/nonexistent/file"), ConfigError);
}

TEST_CASE("triangular lattice") {
    TriangularGrid g(1.0, 8);
    TriangleGeometry geo(1.0);
    CHECK(g.size() == 45);
    for (int s = 1; s <= 3; ++s)
        for (int k = 0; k <= 8; ++k) {
            const auto [i, j] = g.side_node(s, k);
            CHECK(std::abs(g.node(i, j) - geo.side_point(s, -0.5 + k / 8.0)) < 1e-14);
            CHECK((g.sides(i, j) & (1u << (s - 1))));
        }
    // interior nodes have six neighbours inside
    for (int j = 1; j < 8; ++j)
        for (int i = 1; i + j < 8; ++i) {
            CHECK(g.sides(i, j) == 0u);
            CHECK(geo.contains(g.node(i, j)));
        }
}

TEST_CASE("lattice solver") {
    const double l = 1.0;
    TriangleGeometry g(l);
    SUBCASE("zero data") {
        const ProblemSpec p = manufactured_problem(ManufacturedSolution::plane_wave(1.0, 1.0).scaled(0.0), l,
                                                   {BcKind::DIRICHLET, BcKind::NEUMANN, BcKind::ROBIN}, {0, 0, 1.0});
        const FDSolution s = fd_solve(p, 16);
        for (double v : s.u) CHECK(v == 0.0);
    }
    SUBCASE("Richardson ratios") {
        const std::vector<std::pair<std::array<BcKind, 3>, std::array<double, 3>>> kinds = {
            {{BcKind::DIRICHLET, BcKind::DIRICHLET, BcKind::DIRICHLET}, {0, 0, 0}},
            {{BcKind::NEUMANN, BcKind::NEUMANN, BcKind::NEUMANN}, {0, 0, 0}},
            {{BcKind::ROBIN, BcKind::ROBIN, BcKind::ROBIN}, {0.7, 0.7, 0.7}},
            {{BcKind::ROBIN, BcKind::NEUMANN, BcKind::NEUMANN}, {std::sqrt(3.0), 0, 0}},
            {{BcKind::DIRICHLET, BcKind::NEUMANN, BcKind::ROBIN}, {0, 0, 1.5}}};
        for (const auto& sol : families(1.0))
            for (const auto& [k, gm] : kinds) {
                const double r = richardson_ratio(sol, manufactured_problem(sol, l, k, gm), 16);
                const std::string tag = std::string(family_name(sol.family())) + " " + bc_name(k[0]) + "/" + bc_name(k[1]) + "/" + bc_name(k[2]);
                INFO(tag);
                CHECK(r >= 3.5);
                CHECK(r <= 4.5);
            }
    }
    SUBCASE("pure Neumann Laplace is gauge fixed") {
        const auto sol = ManufacturedSolution::real_exp(2.0, 2.0, 0.3, 0.0);
        const ProblemSpec p = manufactured_problem(sol, l, {BcKind::NEUMANN, BcKind::NEUMANN, BcKind::NEUMANN});
        const FDSolution a = fd_solve(p, 32), b = fd_solve(p, 64);
        CHECK(a.gauge_fixed);
        // harmonic data: the stencil's leading error term (a multiple of the bilaplacian) vanishes,
        // so convergence is faster than second order
        const double ratio = a.max_error(sol) / b.max_error(sol);
        CHECK(ratio >= 3.5);
        CHECK(std::abs(b.compatibility) < 1e-9);
    }
    SUBCASE("extracted Neumann traces converge at second order") {
        const auto sol = families(1.0)[0];
        const ProblemSpec p = manufactured_problem(sol, l, {BcKind::DIRICHLET, BcKind::DIRICHLET, BcKind::DIRICHLET});
        double e[2];
        for (int t = 0; t < 2; ++t) {
            const FDSolution s = fd_solve(p, 32 << t);
            e[t] = 0.0;
            for (int j = 1; j <= 3; ++j)
                e[t] = std::max(e[t], compare_traces(s.traces.neumann[j - 1], neumann_trace(sol, g, j), l));
        }
        CHECK(e[0] / e[1] >= 3.5);
        CHECK(e[0] / e[1] <= 4.5);
        CHECK(e[1] < 1e-2);
    }
    SUBCASE("mixed problem recovers the side-2 Dirichlet trace") {
        const auto sol = families(1.0)[1];
        const ProblemSpec p =
            manufactured_problem(sol, l, {BcKind::ROBIN, BcKind::NEUMANN, BcKind::NEUMANN}, {std::sqrt(3.0), 0, 0});
        const double e1 = compare_traces(fd_solve(p, 32).traces.dirichlet[1], dirichlet_trace(sol, g, 2), l);
        const double e2 = compare_traces(fd_solve(p, 64).traces.dirichlet[1], dirichlet_trace(sol, g, 2), l);
        CHECK(e1 / e2 >= 3.5);
        CHECK(e1 / e2 <= 4.5);
    }
    SUBCASE("errors") {
        const ProblemSpec p = manufactured_problem(families(1.0)[0], l, {BcKind::DIRICHLET, BcKind::DIRICHLET, BcKind::DIRICHLET});
        CHECK_THROWS_AS(fd_solve_h(p, 0.3), ParameterError);
        ProblemSpec q = p;
        q.sides[0] = SideCondition::robin(1.0, 0.5, BoundaryTrace::zero(1));
        CHECK_THROWS_AS(fd_solve(q, 16), ParameterError);
    }
}
