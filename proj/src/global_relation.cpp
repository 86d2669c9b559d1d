#include "trispec/global_relation.hpp"

#include <algorithm>
#include <cmath>

#include "trispec/errors.hpp"

namespace tri {

TraceSet TraceSet::zero(double lambda, double l) {
    TraceSet t;
    for (int j = 1; j <= 3; ++j) {
        t.dirichlet[j - 1] = BoundaryTrace::zero(j);
        t.neumann[j - 1] = BoundaryTrace::zero(j);
    }
    t.lambda = lambda;
    t.geometry = TriangleGeometry(l);
    return t;
}

double TraceSet::corner_mismatch() const {
    const double h = 0.5 * geometry.side_length();
    const auto& d = dirichlet;
    // z1: end of side 1, start of side 3; z2: end of side 2, start of side 1; z3: end of side 3, start of side 2
    double m = std::abs(d[0].value(h) - d[2].value(-h));
    m = std::max(m, std::abs(d[1].value(h) - d[0].value(-h)));
    m = std::max(m, std::abs(d[2].value(h) - d[1].value(-h)));
    return m;
}

void TraceSet::assert_corners(double tol) const {
    const double m = corner_mismatch();
    if (m > tol) throw ParameterError("Dirichlet traces are discontinuous at a vertex (mismatch " + std::to_string(m) + ")");
}

cplx rho_side(const TraceSet& t, int j, cplx k, int order) {
    check_side(j);
    const double l = t.geometry.side_length(), lam = t.lambda;
    const cplx m = mu(k, lam);
    const cplx psi = trace_moment(t.neumann[j - 1], m, 1.0, 0.0, l, order);
    const cplx phi = trace_moment(t.dirichlet[j - 1], m, lam / k, 0.5, l, order);
    return exp_E(-kI * k, lam, l) * (0.5 * kI * psi + phi);
}

cplx rho_tilde(const TraceSet& t, int j, cplx k, int order) {
    check_side(j);
    const cplx w = j == 1 ? cplx(1.0) : (j == 2 ? kAlphaBar : kAlpha);
    return rho_side(t, j, w * k, order);
}

cplx rho_tilde_shifted(const TraceSet& t, int j, cplx k, cplx theta, int order) {
    check_side(j);
    if (k == 0.0) throw DomainError("k = 0 is a pole of the spectral kernels");
    const double l = t.geometry.side_length(), lam = t.lambda, a = t.geometry.apothem();
    const cplx n = t.geometry.normal(j), nb = std::conj(n);
    const cplx m = mu(k * n, lam);
    const cplx c0 = theta - kI * k * n * a - lam * nb * a / (kI * k);
    return trace_moment(t.neumann[j - 1], m, 0.5 * kI, 0.0, l, order, c0) +
           trace_moment(t.dirichlet[j - 1], m, lam * nb / k, 0.5, l, order, c0);
}

cplx global_residual(const TraceSet& t, cplx k, int order) {
    return rho_tilde(t, 1, k, order) + rho_tilde(t, 2, k, order) + rho_tilde(t, 3, k, order);
}

const char* bc_name(BcKind k) {
    switch (k) {
        case BcKind::DIRICHLET: return "dirichlet";
        case BcKind::NEUMANN: return "neumann";
        case BcKind::ROBIN: return "robin";
        case BcKind::POINCARE: return "poincare";
    }
    return "?";
}

SideCondition SideCondition::dirichlet(BoundaryTrace f) { return {BcKind::DIRICHLET, kPi / 2, 0.0, std::move(f)}; }
SideCondition SideCondition::neumann(BoundaryTrace f) { return {BcKind::NEUMANN, kPi / 2, 0.0, std::move(f)}; }
SideCondition SideCondition::robin(double beta, double gamma, BoundaryTrace f) {
    return {BcKind::ROBIN, beta, gamma, std::move(f)};
}

bool ProblemSpec::all_dirichlet() const {
    return std::all_of(sides.begin(), sides.end(), [](const SideCondition& s) { return s.unknown_is_psi(); });
}

bool ProblemSpec::corners_cancel() const {
    for (const auto& s : sides)
        if (s.unknown_is_psi()) return false;
    const cplx e0 = std::polar(1.0, 2.0 * sides[0].eff_beta());
    for (const auto& s : sides)
        if (std::abs(std::polar(1.0, 2.0 * s.eff_beta()) - e0) > 1e-12) return false;
    return true;
}

cplx H_fn(cplx k, double lambda, double beta, double gamma) {
    const cplx kb = k * std::polar(1.0, beta);
    return kb + lambda / kb - gamma;
}

cplx Hbar_fn(cplx k, double lambda, double beta, double gamma) {
    const cplx kb = k * std::polar(1.0, -beta);
    return kb + lambda / kb - gamma;
}

namespace {

// q at vertex v (1..3), from the spec or an adjacent Dirichlet side
double vertex_value(const ProblemSpec& spec, int v) {
    if (spec.vertex_values) return (*spec.vertex_values)[v - 1];
    const double h = 0.5 * spec.geometry.side_length();
    // vertex v is the end (s = l/2) of side v and the start (s = -l/2) of side v-1 (mod 3)
    const int se = v, ss = (v + 1) % 3 + 1;
    if (spec.sides[se - 1].unknown_is_psi()) return spec.sides[se - 1].data.value(h);
    if (spec.sides[ss - 1].unknown_is_psi()) return spec.sides[ss - 1].data.value(-h);
    throw ParameterError("corner terms do not cancel: vertex values are required");
}

}  // namespace

SideCoeffs side_coeffs(const ProblemSpec& spec, int j, cplx kappa) {
    check_side(j);
    const SideCondition& sc = spec.sides[j - 1];
    const double lam = spec.lambda, l = spec.geometry.side_length();
    const cplx Em = exp_E(-kI * kappa, lam, l), Ep = exp_E(kI * kappa, lam, l);
    SideCoeffs c;
    if (sc.unknown_is_psi()) {
        const cplx F = spectral_transform(sc.data, KernelKind::F_DIRICHLET, kappa, lam, l, kPi / 2, spec.order);
        c.a = 0.5 * kI * Em;
        c.b = Em * F;
        c.ac = -0.5 * kI * Ep;
        c.bc = Ep * F;
        return c;
    }
    const double beta = sc.eff_beta(), gamma = sc.eff_gamma();
    const cplx F = spectral_transform(sc.data, KernelKind::F_ROBIN, kappa, lam, l, beta, spec.order);
    cplx C = 0.0, Cc = 0.0;
    if (spec.force_corner_terms || !spec.corners_cancel()) {
        // side j runs from vertex (j+1 mod 3) to vertex j
        const double qm = vertex_value(spec, j % 3 + 1), qp = vertex_value(spec, j);
        const cplx bracket = exp_e(-kappa, lam, l) * qm - exp_e(kappa, lam, l) * qp;
        const double sb = std::sin(beta);
        C = std::polar(1.0 / (2.0 * sb), beta) * bracket;
        Cc = std::polar(1.0 / (2.0 * sb), -beta) * bracket;
    }
    c.a = kI * Em * H_fn(kappa, lam, beta, gamma);
    c.b = kI * Em * (F + C);
    c.ac = -kI * Ep * Hbar_fn(kappa, lam, beta, gamma);
    c.bc = -kI * Ep * (F + Cc);
    return c;
}

RelationSystem relation_system(const ProblemSpec& spec, cplx k) {
    if (k == 0.0) throw DomainError("k = 0 is a pole of the spectral kernels");
    for (const auto& s : spec.sides)
        if (s.kind != BcKind::DIRICHLET && std::abs(std::sin(s.eff_beta())) < 1e-14)
            throw ParameterError("sin(beta) = 0 on a Robin/Poincare side");
    const double lam = spec.lambda, l = spec.geometry.side_length();
    RelationSystem rs;
    rs.k = k;
    rs.A.setZero();
    rs.rhs.setZero();
    const double scale = spec.all_dirichlet() ? 2.0 : 1.0;
    // rotation index of a product of powers of alpha
    auto col = [](int p, int j) { return 3 * (((p % 3) + 3) % 3) + (j - 1); };
    // GR: rho_1(w k) + rho_2(abar w k) + rho_3(alpha w k); conj: rho_1 + rho_2(alpha .) + rho_3(abar .)
    const int gr_rot[3] = {0, 2, 1}, cj_rot[3] = {0, 1, 2};
    for (int p = 0; p < 3; ++p) {
        const cplx kk = alpha_pow(p) * k;
        const cplx mg = -scale * kI * exp_E(kI * kAlpha * kk, lam, l);
        const cplx mc = scale * kI * exp_E(-kI * kAlpha * kk, lam, l);
        for (int j = 1; j <= 3; ++j) {
            {
                const int r = gr_rot[j - 1];
                const SideCoeffs c = side_coeffs(spec, j, alpha_pow(r) * kk);
                rs.A(p, col(p + r, j)) += mg * c.a;
                rs.rhs(p) -= mg * c.b;
            }
            {
                const int r = cj_rot[j - 1];
                const SideCoeffs c = side_coeffs(spec, j, alpha_pow(r) * kk);
                rs.A(3 + p, col(p + r, j)) += mc * c.ac;
                rs.rhs(3 + p) -= mc * c.bc;
            }
        }
    }
    const char* arg[3] = {"k", "alpha k", "abar k"};
    for (int p = 0; p < 3; ++p)
        for (int j = 1; j <= 3; ++j)
            rs.labels.push_back(std::string(spec.sides[j - 1].unknown_is_psi() ? "Psi_" : "Y_") + std::to_string(j) +
                                "(" + arg[p] + ")");
    return rs;
}

Eigen::Matrix<cplx, 9, 1> unknown_values(const ProblemSpec& spec, const TraceSet& t, cplx k) {
    Eigen::Matrix<cplx, 9, 1> x;
    const double lam = spec.lambda, l = spec.geometry.side_length();
    for (int p = 0; p < 3; ++p)
        for (int j = 1; j <= 3; ++j) {
            const cplx kk = alpha_pow(p) * k;
            const SideCondition& sc = spec.sides[j - 1];
            x(3 * p + j - 1) =
                sc.unknown_is_psi()
                    ? spectral_transform(t.neumann[j - 1], KernelKind::PSI, kk, lam, l, kPi / 2, spec.order)
                    : spectral_transform(t.dirichlet[j - 1], KernelKind::Y, kk, lam, l, sc.eff_beta(), spec.order);
        }
    return x;
}

}  // namespace tri
