#include <cmath>
#include <random>

#include "common.hpp"
#include "doctest.h"
#include "trispec/errors.hpp"
#include "trispec/global_relation.hpp"
#include "trispec/manufactured.hpp"

using namespace tri;
using tri::test::rel;

namespace {

std::vector<ManufacturedSolution> families(double lam) {
    std::vector<ManufacturedSolution> out;
    out.push_back(ManufacturedSolution::plane_wave(cplx(1.1, 0.4), lam));
    const double b = 2.3;
    out.push_back(ManufacturedSolution::real_exp(std::sqrt(b * b + 4 * lam), b, 0.3, lam));
    out.push_back(ManufacturedSolution::symmetrized(ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam)));
    return out;
}

double max_rho(const TraceSet& t, cplx k) {
    return std::max({std::abs(rho_tilde(t, 1, k)), std::abs(rho_tilde(t, 2, k)), std::abs(rho_tilde(t, 3, k))});
}

ProblemSpec spec_from(const ManufacturedSolution& sol, const TriangleGeometry& g, std::array<BcKind, 3> kinds,
                      std::array<double, 3> beta, std::array<double, 3> gamma) {
    ProblemSpec sp;
    sp.lambda = sol.lambda();
    sp.geometry = g;
    for (int j = 1; j <= 3; ++j) {
        SideCondition& sc = sp.sides[j - 1];
        sc.kind = kinds[j - 1];
        sc.beta = beta[j - 1];
        sc.gamma = gamma[j - 1];
        switch (sc.kind) {
            case BcKind::DIRICHLET: sc.data = dirichlet_trace(sol, g, j); break;
            case BcKind::NEUMANN: sc.data = neumann_trace(sol, g, j); break;
            default: sc.data = robin_trace(sol, g, j, sc.beta, sc.gamma);
        }
    }
    return sp;
}

}  // namespace

TEST_CASE("rho examples") {
    TriangleGeometry g(1.0);
    const TraceSet z = TraceSet::zero(1.0, 1.0);
    CHECK(rho_side(z, 1, cplx(0.3, 1.0)) == cplx(0.0));
    const TraceSet one = manufactured_traces(ManufacturedSolution::constant(1.0), g);
    CHECK(std::abs(rho_side(one, 1, cplx(0.7, -0.2))) < 1e-14);
    const TraceSet t = manufactured_traces(ManufacturedSolution::plane_wave(cplx(0.9, 0.3), 1.0), g);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
        const cplx k = test::random_k(rng, 0.2, 5.0);
        CHECK(rel(rho_tilde(t, 2, k), rho_side(t, 2, kAlphaBar * k)) < 1e-14);
        CHECK(rel(rho_tilde_shifted(t, 2, k, 0.0), rho_tilde(t, 2, k)) < 1e-11);
        CHECK(rel(rho_tilde_shifted(t, 3, k, cplx(0.4, 1.0)), std::exp(cplx(0.4, 1.0)) * rho_tilde(t, 3, k)) < 1e-11);
    }
    CHECK_THROWS_AS(rho_side(t, 1, 0.0), DomainError);
}

TEST_CASE("global residual vanishes for manufactured solutions") {
    TriangleGeometry g(1.3);
    std::mt19937_64 rng(2);
    for (double lam : {0.0, 1.0, 5.0})
        for (const auto& sol : families(lam)) {
            const TraceSet t = manufactured_traces(sol, g);
            for (int i = 0; i < 50; ++i) {
                const cplx k = test::random_k(rng, 0.2, 5.0);
                CHECK(std::abs(global_residual(t, k)) <= 1e-8 * max_rho(t, k));
            }
        }
    CHECK(global_residual(TraceSet::zero(1.0, 1.0), cplx(1.0, 1.0)) == cplx(0.0));
}

TEST_CASE("perturbing a Neumann trace moves the residual linearly") {
    TriangleGeometry g(1.0);
    const auto sol = ManufacturedSolution::plane_wave(cplx(1.1, 0.4), 1.0);
    const cplx k(0.8, 0.6);
    double prev = 0.0;
    for (double eps : {1e-3, 2e-3}) {
        TraceSet t = manufactured_traces(sol, g);
        const BoundaryTrace bump(
            2, [](double s) { return std::sin(2 * kPi * s); }, [](double s) { return 2 * kPi * std::cos(2 * kPi * s); });
        t.neumann[1] = t.neumann[1].axpy(1.0, bump, eps);
        const double r = std::abs(global_residual(t, k));
        CHECK(r > 1e-6);
        if (prev > 0) CHECK(r / prev == doctest::Approx(2.0).epsilon(1e-6));
        prev = r;
    }
}

TEST_CASE("Dirichlet rows reproduce the A/B relations") {
    TriangleGeometry g(1.0);
    const double lam = 1.0, l = 1.0;
    const auto sol = ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam);
    const ProblemSpec sp = spec_from(sol, g, {BcKind::DIRICHLET, BcKind::DIRICHLET, BcKind::DIRICHLET}, {}, {});
    const cplx k(1.0, 1.0);
    const RelationSystem rs = relation_system(sp, k);
    auto e = [&](cplx x) { return exp_e(x, lam, l); };
    auto F = [&](int j, cplx x) {
        return spectral_transform(sp.sides[j - 1].data, KernelKind::F_DIRICHLET, x, lam, l);
    };
    const cplx a = kAlpha, ab = kAlphaBar;
    const cplx A = e(ab * k) * F(1, k) + e(-k) * F(2, ab * k) + F(3, a * k);
    const cplx B = e(-ab * k) * F(1, k) + F(2, a * k) + e(k) * F(3, ab * k);
    CHECK(rel(rs.A(0, 0), e(ab * k)) < 1e-13);
    CHECK(rel(rs.A(0, 7), e(-k)) < 1e-13);
    CHECK(rel(rs.A(0, 5), 1.0) < 1e-13);
    CHECK(rel(rs.rhs(0), 2.0 * kI * A) < 1e-12);
    CHECK(rel(rs.A(3, 0), e(-ab * k)) < 1e-13);
    CHECK(rel(rs.A(3, 4), 1.0) < 1e-13);
    CHECK(rel(rs.A(3, 8), e(k)) < 1e-13);
    CHECK(rel(rs.rhs(3), -2.0 * kI * B) < 1e-12);
    CHECK(rs.labels[7] == "Psi_2(abar k)");
    const auto x = unknown_values(sp, manufactured_traces(sol, g), k);
    CHECK((rs.A * x - rs.rhs).norm() < 1e-10 * rs.rhs.norm());
}

TEST_CASE("Robin rows reproduce the H-weighted relations") {
    TriangleGeometry g(1.0);
    const double lam = 1.0, l = 1.0;
    const auto sol = ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam);
    const double hp = kPi / 2;
    const ProblemSpec sp = spec_from(sol, g, {BcKind::ROBIN, BcKind::ROBIN, BcKind::ROBIN}, {hp, hp, hp}, {0, 0, 0});
    const cplx k(0.7, -0.4);
    const RelationSystem rs = relation_system(sp, k);
    auto e = [&](cplx x) { return exp_e(x, lam, l); };
    auto H = [&](cplx x) { return H_fn(x, lam, hp, 0.0); };
    auto Hb = [&](cplx x) { return Hbar_fn(x, lam, hp, 0.0); };
    auto F = [&](int j, cplx x) { return spectral_transform(sp.sides[j - 1].data, KernelKind::F_ROBIN, x, lam, l); };
    const cplx a = kAlpha, ab = kAlphaBar;
    const cplx A = e(ab * k) * F(1, k) + e(-k) * F(2, ab * k) + F(3, a * k);
    const cplx B = e(-ab * k) * F(1, k) + F(2, a * k) + e(k) * F(3, ab * k);
    CHECK(rel(rs.A(0, 0), e(ab * k) * H(k)) < 1e-13);
    CHECK(rel(rs.A(0, 7), e(-k) * H(ab * k)) < 1e-13);
    CHECK(rel(rs.A(0, 5), H(a * k)) < 1e-13);
    CHECK(rel(rs.rhs(0), -A) < 1e-12);
    CHECK(rel(rs.A(3, 0), e(-ab * k) * Hb(k)) < 1e-13);
    CHECK(rel(rs.A(3, 4), Hb(a * k)) < 1e-13);
    CHECK(rel(rs.A(3, 8), e(k) * Hb(ab * k)) < 1e-13);
    CHECK(rel(rs.rhs(3), -B) < 1e-12);
}

TEST_CASE("relation system is satisfied by exact unknowns for every side kind") {
    TriangleGeometry g(1.2);
    std::mt19937_64 rng(4);
    const double lam = 1.0;
    const auto sol = ManufacturedSolution::sum(ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam),
                                               ManufacturedSolution::plane_wave(cplx(-0.7, 1.9), lam, 0.5));
    const TraceSet t = manufactured_traces(sol, g);
    struct Case {
        std::array<BcKind, 3> k;
        std::array<double, 3> b, gm;
        bool corners;
    };
    const std::vector<Case> cases = {
        {{BcKind::NEUMANN, BcKind::NEUMANN, BcKind::NEUMANN}, {}, {}, false},
        {{BcKind::ROBIN, BcKind::ROBIN, BcKind::ROBIN}, {1.1, 1.1, 1.1}, {0.4, 0.4, 0.4}, false},
        {{BcKind::POINCARE, BcKind::POINCARE, BcKind::POINCARE}, {0.6, 1.4, 2.0}, {0.3, -0.2, 0.5}, true},
        {{BcKind::DIRICHLET, BcKind::NEUMANN, BcKind::ROBIN}, {kPi / 2, kPi / 2, 0.8}, {0, 0, 0.7}, false},
        {{BcKind::ROBIN, BcKind::NEUMANN, BcKind::NEUMANN}, {kPi / 2, kPi / 2, kPi / 2}, {std::sqrt(3.0), 0, 0}, false},
    };
    for (const auto& c : cases) {
        ProblemSpec sp = spec_from(sol, g, c.k, c.b, c.gm);
        if (c.corners) {
            CHECK_FALSE(sp.corners_cancel());
            CHECK_THROWS_AS(relation_system(sp, cplx(1.0, 0.3)), ParameterError);
        }
        if (!sp.corners_cancel())
            sp.vertex_values = std::array<double, 3>{sol.q(g.vertex(1)), sol.q(g.vertex(2)), sol.q(g.vertex(3))};
        for (int i = 0; i < 10; ++i) {
            const cplx k = test::random_k(rng, 0.3, 3.0);
            const RelationSystem rs = relation_system(sp, k);
            const auto x = unknown_values(sp, t, k);
            CHECK((rs.A * x - rs.rhs).norm() <= 1e-10 * std::max(rs.rhs.norm(), (rs.A * x).norm()));
            // Schwarz pairing: conjugate row -p at k is proportional to the conjugate of GR row p at conj(k)
            const RelationSystem rc = relation_system(sp, std::conj(k));
            for (int p = 0; p < 3; ++p) {
                const int q = (3 - p) % 3;
                Eigen::Matrix<cplx, 10, 1> v, w;
                v << rs.A.row(3 + q).transpose(), rs.rhs(3 + q);
                // column rotation r at conj(k) becomes rotation -r at k
                for (int c = 0; c < 9; ++c) w((3 * ((3 - c / 3) % 3)) + c % 3) = std::conj(rc.A(p, c));
                w(9) = std::conj(rc.rhs(p));
                const cplx f = w.dot(v) / w.squaredNorm();
                CHECK((v - f * w).norm() <= 1e-10 * v.norm());
            }
        }
    }
}

TEST_CASE("corner values drop out when e^{2i beta} agree") {
    TriangleGeometry g(1.0);
    const double lam = 1.0;
    const auto sol = ManufacturedSolution::plane_wave(cplx(1.3, 0.8), lam);
    ProblemSpec sp = spec_from(sol, g, {BcKind::POINCARE, BcKind::POINCARE, BcKind::POINCARE},
                               {2 * kPi / 3, 2 * kPi / 3 - kPi, 2 * kPi / 3}, {0.2, 0.1, -0.3});
    CHECK(sp.corners_cancel());
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10; ++i) {
        const cplx k = test::random_k(rng, 0.3, 3.0);
        const RelationSystem r0 = relation_system(sp, k);
        ProblemSpec s1 = sp, s2 = sp;
        s1.force_corner_terms = s2.force_corner_terms = true;
        s1.vertex_values = std::array<double, 3>{3.0, -2.0, 7.0};
        s2.vertex_values = std::array<double, 3>{-1.0, 5.0, 0.5};
        const RelationSystem r1 = relation_system(s1, k), r2 = relation_system(s2, k);
        CHECK((r1.rhs - r0.rhs).norm() <= 1e-12 * r0.rhs.norm() * 10);
        CHECK((r2.rhs - r0.rhs).norm() <= 1e-12 * r0.rhs.norm() * 10);
    }
    // unequal angles: the corner values matter
    ProblemSpec sq = spec_from(sol, g, {BcKind::POINCARE, BcKind::POINCARE, BcKind::POINCARE},
                               {0.6, 1.4, 2.0}, {0, 0, 0});
    CHECK_FALSE(sq.corners_cancel());
}
