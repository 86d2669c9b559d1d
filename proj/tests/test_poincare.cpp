#include <chrono>
#include <cmath>
#include <random>

#include "common.hpp"
#include "doctest.h"
#include "trispec/errors.hpp"
#include "trispec/manufactured.hpp"
#include "trispec/poincare.hpp"

using namespace tri;
using tri::test::random_k;
using tri::test::rel;

namespace {

ManufacturedSolution general_solution(double lam) {
    return ManufacturedSolution::sum(ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam),
                                     ManufacturedSolution::plane_wave(cplx(-0.7, 1.9), lam, 0.5));
}

std::array<BoundaryTrace, 3> poincare_data(const ManufacturedSolution& s, const PoincareSpec& p) {
    TriangleGeometry g(p.l);
    std::array<BoundaryTrace, 3> f;
    for (int j = 1; j <= 3; ++j) f[j - 1] = robin_trace(s, g, j, p.beta[j - 1], p.gamma[j - 1]);
    return f;
}

}  // namespace

TEST_CASE("H and P") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const cplx k = random_k(rng, 0.2, 5.0);
        // Laplace, gamma = 0: P = e^{2 i beta}
        CHECK(std::abs(H_and_P(k, 0.0, 1.1, 0.0).P - std::polar(1.0, 2.2)) < 1e-14);
        // beta = pi/2
        CHECK(std::abs(H_and_P(k, 2.0, kPi / 2, 0.7).H - (kI * (k - 2.0 / k) - 0.7)) < 1e-13 * std::abs(k));
        // gamma^2 = 3 lambda: P(k) P(alpha k) P(abar k) = -1
        const double lam = 1.7, g = std::sqrt(3 * lam);
        const cplx p = H_and_P(k, lam, kPi / 2, g).P * H_and_P(kAlpha * k, lam, kPi / 2, g).P *
                       H_and_P(kAlphaBar * k, lam, kPi / 2, g).P;
        CHECK(std::abs(p + 1.0) < 1e-12);
        // derivative of log P against a central difference
        const double h = 1e-6;
        const cplx num = (std::log(H_and_P(k + h, lam, 1.2, 0.3).P) - std::log(H_and_P(k - h, lam, 1.2, 0.3).P)) / (2 * h);
        CHECK(std::abs(num - dlogP(k, lam, 1.2, 0.3)) < 1e-6 * (1 + std::abs(num)));
    }
    // pole of P: Hbar(k) = 0 at k = e^{i beta} gamma for lambda = 0
    CHECK_THROWS_AS(H_and_P(std::polar(0.5, 0.9), 0.0, 0.9, 0.5), DomainError);
}

TEST_CASE("admissibility") {
    PoincareSpec ex1;
    ex1.lambda = 2.0;
    ex1.beta = {2 * kPi / 3, 2 * kPi / 3, 2 * kPi / 3};
    ex1.gamma = {0.3, -1.2, 4.0};
    auto r1 = admissibility_check(ex1);
    CHECK(r1.integral_solvable);
    CHECK(r1.corner_cancelling);
    auto r2 = admissibility_check(PoincareSpec::mixed_nr(1.5, 1.0));
    CHECK(r2.integral_solvable);
    CHECK(r2.corner_cancelling);
    PoincareSpec bad = PoincareSpec::oblique(1.0, 1.0, 1.0, 0.2);
    bad.beta[1] = 1.0 + kPi / 4;
    auto r3 = admissibility_check(bad);
    CHECK_FALSE(r3.integral_solvable);
    REQUIRE(!r3.violated.empty());
    CHECK(r3.violated[0] == "beta-offset");
    // offset pi/3 is admissible for the angles but flips the corner condition
    PoincareSpec off = PoincareSpec::oblique(1.0, 1.0, 1.0, 0.0);
    off.beta[2] = 1.0 + kPi / 3;
    auto r4 = admissibility_check(off);
    CHECK(r4.integral_solvable);
    CHECK_FALSE(r4.corner_cancelling);
    // mixed problem with the wrong gamma
    PoincareSpec wrong = PoincareSpec::mixed_nr(1.0, 1.0);
    wrong.gamma[0] = 1.0;
    auto r5 = admissibility_check(wrong);
    CHECK_FALSE(r5.integral_solvable);
    CHECK(r5.violated[0] == "gamma-cubic-2");
    CHECK(r5.message().find("inadmissible") == 0);
}

TEST_CASE("numeric elimination is satisfied by exact spectral values") {
    std::mt19937_64 rng(5);
    for (double lam : {0.0, 1.0}) {
        const auto sol = general_solution(lam);
        TriangleGeometry g(1.0);
        const TraceSet ts = manufactured_traces(sol, g);
        for (auto ps : {PoincareSpec::oblique(lam, 1.0, 1.1, 0.4), PoincareSpec::oblique(lam, 1.0, kPi / 2, 0.0)}) {
            const ProblemSpec spec = ps.problem(poincare_data(sol, ps));
            for (int i = 0; i < 10; ++i) {
                const cplx k = random_k(rng, 0.5, 6.0);
                const auto er = eliminate_numeric(spec, k);
                const auto x = unknown_values(spec, ts, k);
                const cplx lhs = x(7);
                const cplx rhs = er.coeff[0] * x(0) + er.coeff[1] * x(1) + er.coeff[2] * x(2) + er.inhom;
                CHECK(rel(lhs, rhs) < 1e-8);
            }
        }
    }
}

TEST_CASE("dual-path elimination, oblique Robin") {
    std::mt19937_64 rng(21);
    for (double lam : {1.0, 0.0, 3.0}) {
        const auto sol = general_solution(lam);
        for (auto bg : {std::pair{1.1, 0.4}, std::pair{kPi / 2, 0.8}, std::pair{2.0, -0.3}}) {
            const auto ps = PoincareSpec::oblique(lam, 1.0, bg.first, bg.second);
            const auto f = poincare_data(sol, ps);
            const ProblemSpec spec = ps.problem(f);
            for (int i = 0; i < 20; ++i) {
                const cplx k = random_k(rng, 0.5, 4.0);
                const auto num = eliminate_numeric(spec, k);
                const auto cf = eliminate_oblique_closed(f, lam, bg.first, bg.second, 1.0, k);
                const auto pc = eliminate_poincare_closed(ps, k);
                for (int j = 0; j < 3; ++j) {
                    CHECK(rel(cf.ratio(j), num.ratio(j)) < 1e-8);
                    CHECK(rel(pc.ratio(j), num.ratio(j)) < 1e-8);
                }
                CHECK(rel(cf.inhom_ratio(), num.inhom_ratio()) < 1e-8);
            }
        }
    }
}

TEST_CASE("general Poincare closed form matches the numeric path") {
    std::mt19937_64 rng(8);
    PoincareSpec ex1;
    ex1.lambda = 1.0;
    ex1.beta = {2 * kPi / 3, 2 * kPi / 3, 2 * kPi / 3};
    ex1.gamma = {0.3, -1.2, 0.9};
    PoincareSpec mixed = PoincareSpec::mixed_nr(1.0, 1.0);
    PoincareSpec ex2 = PoincareSpec::mixed_nr(2.0, 1.0);
    ex2.beta = {1.2, 1.2, 1.2};
    for (const auto& ps : {ex1, mixed, ex2}) {
        const auto f = poincare_data(general_solution(ps.lambda), ps);
        const ProblemSpec spec = ps.problem(f);
        for (int i = 0; i < 20; ++i) {
            const cplx k = random_k(rng, 0.5, 4.0);
            const auto num = eliminate_numeric(spec, k);
            const auto pc = eliminate_poincare_closed(ps, k);
            for (int j = 0; j < 3; ++j) CHECK(rel(pc.ratio(j), num.ratio(j)) < 1e-8);
        }
    }
}

TEST_CASE("Dirichlet specialization of the elimination") {
    std::mt19937_64 rng(3);
    const double lam = 1.0, l = 1.0;
    const auto sol = general_solution(lam);
    TriangleGeometry g(l);
    ProblemSpec spec;
    spec.lambda = lam;
    spec.geometry = g;
    std::array<BoundaryTrace, 3> f;
    for (int j = 1; j <= 3; ++j) {
        f[j - 1] = dirichlet_trace(sol, g, j);
        spec.sides[j - 1] = SideCondition::dirichlet(f[j - 1]);
    }
    auto e = [&](cplx x) { return exp_e(x, lam, l); };
    for (int i = 0; i < 20; ++i) {
        const cplx k = random_k(rng, 0.5, 4.0);
        const auto num = eliminate_numeric(spec, k);
        const cplx a = kAlpha, ab = kAlphaBar, ep = e(k), em = e(-k);
        const cplx lhs = em * em * em - ep * ep * ep;
        const cplx c1 = e(-ab * k) - em * em * e(ab * k);
        CHECK(rel(num.ratio(0), c1 / lhs) < 1e-8);
        CHECK(rel(num.ratio(2), c1 * ep * ep / lhs) < 1e-8);
        CHECK(rel(num.ratio(1), em * em * (e(-ab * k) - ep * ep * ep * ep * e(ab * k)) / lhs) < 1e-8);
        auto F = [&](int j, cplx x) { return spectral_transform(f[j - 1], KernelKind::F_DIRICHLET, x, lam, l); };
        const cplx X = (em * em * e(ab * k) + e(-ab * k)) * (F(1, k) + ep * ep * F(3, k)) +
                       (ep * ep * e(ab * k) + em * em * e(-ab * k)) * F(2, k) + 2.0 * ep * ep * F(1, a * k) +
                       2.0 * F(2, a * k) + 2.0 * em * em * F(3, a * k) + 2.0 * em * F(1, ab * k) +
                       (ep * ep * ep + em * em * em) * F(2, ab * k) + 2.0 * ep * F(3, ab * k);
        CHECK(rel(num.inhom_ratio(), 2.0 * kI * X / lhs) < 1e-8);
    }
}

TEST_CASE("zero data gives zero inhomogeneity") {
    const auto ps = PoincareSpec::oblique(1.0, 1.0, 1.1, 0.4);
    std::array<BoundaryTrace, 3> z{BoundaryTrace::zero(1), BoundaryTrace::zero(2), BoundaryTrace::zero(3)};
    CHECK(eliminate_numeric(ps.problem(z), cplx(0.7, 1.3)).inhom == 0.0);
    CHECK(eliminate_oblique_closed(z, 1.0, 1.1, 0.4, 1.0, cplx(0.7, 1.3)).inhom == 0.0);
}

TEST_CASE("root sets of D") {
    SUBCASE("mixed problem") {
        const auto ps = PoincareSpec::mixed_nr(1.0, 1.0);
        const auto rs = D_root_set(ps, 20);
        CHECK(rs.max_residual <= 1e-12);
        CHECK(rs.audited_count == static_cast<int>(rs.plus.size() + rs.minus.size()));
        CHECK(rs.plus.size() >= 20);
        CHECK(rs.minus.size() >= 20);
        for (const auto& r : rs.plus) CHECK(classify_halfplane(r.k) == HalfPlane::PLUS);
        for (const auto& r : rs.minus) CHECK(classify_halfplane(r.k) == HalfPlane::MINUS);
        // the mu-values solve e^{3 mu l} = (mu - 1)(mu - 2)/((mu + 1)(mu + 2)) at lambda = 1
        for (const auto& r : rs.all()) {
            const cplx m = mu(r.k, 1.0);
            const cplx R = (m - 1.0) * (m - 2.0) / ((m + 1.0) * (m + 2.0));
            CHECK(std::abs(std::exp(3.0 * m) - R) < 1e-10 * std::max(1.0, std::abs(R)));
        }
    }
    SUBCASE("Neumann limit") {
        auto ps = PoincareSpec::mixed_nr(1.0, 1.0);
        ps.gamma[0] = 1e-7;
        const auto rs = D_root_set(ps, 8);
        CHECK(rs.audited_count == static_cast<int>(rs.all().size()));
        // every root is a Neumann mode 2 pi i n / 3 or sits on a near-cancelling zero/pole pair of P_1
        auto near_pair = [&](cplx k) {
            double h = 1e300;
            for (cplx x : {kAlpha * k, kAlphaBar * k})
                h = std::min({h, std::abs(H_fn(x, 1.0, kPi / 2, 1e-7)), std::abs(Hbar_fn(x, 1.0, kPi / 2, 1e-7))});
            return h < 1e-3;
        };
        int modes = 0;
        for (const auto& r : rs.all()) {
            const cplx m = mu(r.k, 1.0);
            const double n = std::round(m.imag() * 3.0 / (2 * kPi));
            const bool mode = std::abs(m - cplx(0, 2 * kPi * n / 3)) < 1e-6;
            modes += mode;
            CHECK((mode || near_pair(r.k)));
        }
        // each Neumann mode inside the audited band is present
        for (int n = -8; n <= 8; ++n)
            for (int b = 0; b < 2; ++b) {
                const cplx k = quadratic_mode_root(cplx(0, 2 * kPi * n / 3), 1.0, b);
                if (std::abs(k) <= rs.r_in || std::abs(k) >= rs.r_out) continue;
                bool hit = false;
                for (const auto& r : rs.all()) hit = hit || std::abs(r.k - k) < 1e-5 * std::max(1.0, std::abs(k));
                CHECK(hit);
            }
        CHECK(modes > 0);
    }
    SUBCASE("oblique and Laplace cases") {
        for (auto ps : {PoincareSpec::oblique(1.0, 1.0, 2 * kPi / 3, 0.5), PoincareSpec::oblique(0.0, 1.0, 1.1, 0.4),
                        PoincareSpec::oblique(2.0, 1.5, 1.0, 0.0)}) {
            const auto rs = D_root_set(ps, 10);
            CHECK(rs.max_residual <= 1e-12);
            CHECK(rs.audited_count == static_cast<int>(rs.all().size()));
        }
    }
}

TEST_CASE("symmetric Dirichlet integral representation") {
    const double l = 1.0;
    TriangleGeometry g(l);
    for (double lam : {1.0, 0.0}) {
        const auto sol =
            ManufacturedSolution::symmetrized(ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam));
        const BoundaryTrace f = dirichlet_trace(sol, g, 1), qn = neumann_trace(sol, g, 1);
        SymmetricDirichletIntegral rep(f, lam, l);
        const auto ser = symmetric_dirichlet_dtn(f, lam, l);
        double e_exact = 0.0, e_series = 0.0;
        for (int i = 0; i <= 96; ++i) {
            const double s = -0.48 * l + 0.96 * l * i / 96;
            const double v = rep(s);
            e_exact = std::max(e_exact, std::abs(v - qn.value(s)));
            e_series = std::max(e_series, std::abs(v - ser.traces[0].value(s)));
        }
        CHECK(e_exact < 1e-6);
        CHECK(e_series < 1e-6);
    }
    SymmetricDirichletIntegral z(BoundaryTrace::zero(1), 1.0, l);
    CHECK(z(0.1) == 0.0);
}

TEST_CASE("mixed Neumann-Robin trace") {
    const double lam = 1.0, l = 1.0;
    TriangleGeometry g(l);
    const auto sol = general_solution(lam);
    const auto ps = PoincareSpec::mixed_nr(lam, l);
    const auto f = poincare_data(sol, ps);
    IntegralOptions opt;
    opt.roots = 150;
    MixedNRTrace q2(f, lam, l, opt);
    const BoundaryTrace ex2 = dirichlet_trace(sol, g, 2);
    double err = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double s = -0.45 * l + 0.9 * l * i / 60;
        err = std::max(err, std::abs(q2(s) - ex2.value(s)));
    }
    CHECK(err < 1e-5);
    // side 3 by reflection
    MixedNRTrace q3(reflect_mixed_data(f), lam, l, opt);
    const BoundaryTrace ex3 = dirichlet_trace(sol, g, 3);
    double err3 = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double s = -0.45 * l + 0.9 * l * i / 20;
        err3 = std::max(err3, std::abs(q3(-s) - ex3.value(s)));
    }
    CHECK(err3 < 1e-5);
    std::array<BoundaryTrace, 3> z{BoundaryTrace::zero(1), BoundaryTrace::zero(2), BoundaryTrace::zero(3)};
    MixedNRTrace q0(z, lam, l, opt);
    CHECK(std::abs(q0(0.2)) == 0.0);
}
