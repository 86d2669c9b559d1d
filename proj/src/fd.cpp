#include "trispec/fd.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>

#include "trispec/errors.hpp"
#include "trispec/spline.hpp"

namespace tri {

TriangularGrid::TriangularGrid(double l, int N) : l_(l), h_(l / N), N_(N) {
    if (N < 2) throw ParameterError("lattice needs N >= 2");
    if (!(l > 0.0)) throw ParameterError("side length must be positive");
    const TriangleGeometry g(l);
    z3_ = g.vertex(3);
    e1_ = (g.vertex(2) - z3_) / l;
    e2_ = (g.vertex(1) - z3_) / l;
}

cplx TriangularGrid::node(int i, int j) const { return z3_ + h_ * (double(i) * e1_ + double(j) * e2_); }

unsigned TriangularGrid::sides(int i, int j) const {
    unsigned s = 0;
    if (i + j == N_) s |= 1u;
    if (j == 0) s |= 2u;
    if (i == 0) s |= 4u;
    return s;
}

std::array<int, 2> TriangularGrid::side_node(int side, int k) const {
    // side 1 runs z2 -> z1, side 2 z3 -> z2, side 3 z1 -> z3
    switch (side) {
        case 1: return {N_ - k, k};
        case 2: return {k, 0};
        case 3: return {0, N_ - k};
    }
    throw DomainError("side index must be 1, 2 or 3");
}

double FDSolution::max_error(const ManufacturedSolution& sol) const {
    const int n = grid.size();
    std::vector<double> d(n);
    double mean = 0.0;
    for (int j = 0; j <= grid.N(); ++j)
        for (int i = 0; i + j <= grid.N(); ++i) {
            const int p = grid.index(i, j);
            d[p] = u[p] - sol.q(grid.node(i, j));
            mean += d[p];
        }
    mean = gauge_fixed ? mean / n : 0.0;
    double e = 0.0;
    for (double v : d) e = std::max(e, std::abs(v - mean));
    return e;
}

namespace {

const int kNb[6][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};

double side_s(const TriangularGrid& g, int side, int i, int j) {
    const double h = g.h(), l = g.side_length();
    switch (side) {
        case 1: return -0.5 * l + j * h;
        case 2: return -0.5 * l + i * h;
        default: return 0.5 * l - j * h;
    }
}

// lattice step (di, dj) of length sqrt(3) h along the inward normal of a side
std::array<int, 2> inward_step(int side) {
    switch (side) {
        case 1: return {-1, -1};
        case 2: return {-1, 2};
        default: return {2, -1};
    }
}

}  // namespace

FDSolution fd_solve(const ProblemSpec& spec, int N) {
    const double l = spec.geometry.side_length(), lam = spec.lambda;
    TriangularGrid g(l, N);
    const double h = g.h();
    for (const auto& sc : spec.sides) {
        if (sc.kind == BcKind::DIRICHLET) continue;
        if (std::abs(std::cos(sc.eff_beta())) > 1e-12)
            throw ParameterError("the lattice oracle supports beta = pi/2 only (no tangential derivative)");
    }
    auto is_dir = [&](int side) { return spec.sides[side - 1].kind == BcKind::DIRICHLET; };
    const bool pure_neumann = !is_dir(1) && !is_dir(2) && !is_dir(3) && lam == 0.0 &&
                              spec.sides[0].eff_gamma() == 0.0 && spec.sides[1].eff_gamma() == 0.0 &&
                              spec.sides[2].eff_gamma() == 0.0;
    const int n = g.size(), nt = n + (pure_neumann ? 1 : 0);
    using T = Eigen::Triplet<double>;
    std::vector<T> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nt);
    const double cfull = 1.0 / kSqrt3, cell = 0.5 * kSqrt3 * h * h;
    for (int j = 0; j <= N; ++j)
        for (int i = 0; i + j <= N; ++i) {
            const int p = g.index(i, j);
            const unsigned sd = g.sides(i, j);
            // Dirichlet rows
            double dsum = 0.0;
            int dcount = 0;
            for (int s = 1; s <= 3; ++s)
                if ((sd & (1u << (s - 1))) && is_dir(s)) {
                    dsum += spec.sides[s - 1].data.value(side_s(g, s, i, j));
                    ++dcount;
                }
            if (dcount > 0) {
                trip.emplace_back(p, p, 1.0);
                rhs[p] = dsum / dcount;
                continue;
            }
            // finite-volume balance over the dual cell
            const int nsides = __builtin_popcount(sd);
            const double area = nsides == 0 ? cell : (nsides == 1 ? 0.5 * cell : cell / 6.0);
            double diag = -4.0 * lam * area;
            for (const auto& d : kNb) {
                const int a = i + d[0], b = j + d[1];
                if (!g.valid(a, b)) continue;
                const double c = (sd & g.sides(a, b)) ? 0.5 * cfull : cfull;  // half face along a side
                diag -= c;
                const int q = g.index(a, b);
                // Dirichlet neighbours go to the right-hand side (averaged at a corner of two Dirichlet sides)
                double qsum = 0.0;
                int qcnt = 0;
                for (int s = 1; s <= 3; ++s)
                    if ((g.sides(a, b) & (1u << (s - 1))) && is_dir(s)) {
                        qsum += spec.sides[s - 1].data.value(side_s(g, s, a, b));
                        ++qcnt;
                    }
                if (qcnt > 0) {
                    const double qval = qsum / qcnt;
                    rhs[p] -= c * qval;
                } else {
                    trip.emplace_back(p, q, c);
                }
            }
            // boundary flux by the midpoint rule: a side node owns [s - h/2, s + h/2], a corner owns
            // the half segment next to it on each side (midpoint h/4 away, u interpolated there)
            for (int s = 1; s <= 3; ++s) {
                if (!(sd & (1u << (s - 1)))) continue;
                const SideCondition& sc = spec.sides[s - 1];
                const double sb = std::sin(sc.eff_beta()), gm = sc.eff_gamma();
                const double s0 = side_s(g, s, i, j);
                if (nsides == 1) {
                    rhs[p] -= h * sc.data.value(s0) / sb;
                    diag -= h * gm / sb;
                    continue;
                }
                const double dir = s0 < 0.0 ? 1.0 : -1.0;  // into the side
                const int k = static_cast<int>(std::lround((s0 + 0.5 * l) / h)) + (dir > 0 ? 1 : -1);
                const auto nb = g.side_node(s, k);
                const int q = g.index(nb[0], nb[1]);
                rhs[p] -= 0.5 * h * sc.data.value(s0 + 0.25 * dir * h) / sb;
                // the half face along this side sits h/(4 sqrt3) inside the edge midpoint; its flux
                // error (h^2/24) d/ds q_N does not cancel at a corner as it does at a side node
                rhs[p] += h * h / 24.0 * dir * sc.data.derivative(s0 + 0.5 * dir * h) / sb;
                if (gm != 0.0) {
                    // u at the segment midpoint by linear interpolation, and u_s in the correction
                    const double w = 0.5 * h * gm / sb * 0.25, wc = h * gm / (24.0 * sb);
                    diag -= 0.5 * h * gm / sb * 0.75 + wc;
                    trip.emplace_back(p, q, wc - w);
                }
            }
            trip.emplace_back(p, p, diag);
            if (pure_neumann) {
                trip.emplace_back(p, n, 1.0);
                trip.emplace_back(n, p, 1.0);
            }
        }
    Eigen::SparseMatrix<double> A(nt, nt);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw NumericalError("lattice system is singular");
    const Eigen::VectorXd x = lu.solve(rhs);
    if (!x.allFinite()) throw NumericalError("lattice solve produced non-finite values");

    FDSolution out{g, std::vector<double>(x.data(), x.data() + n), TraceSet::zero(lam, l), pure_neumann,
                   pure_neumann ? x[n] : 0.0};
    out.traces.lambda = lam;
    out.traces.geometry = spec.geometry;
    for (int s = 1; s <= 3; ++s) {
        const SideCondition& sc = spec.sides[s - 1];
        std::vector<double> ss(N + 1), uv(N + 1), qn(N + 1);
        for (int k = 0; k <= N; ++k) {
            const auto [i, j] = g.side_node(s, k);
            ss[k] = -0.5 * l + k * h;
            uv[k] = out.at(i, j);
        }
        if (sc.kind == BcKind::DIRICHLET) {
            out.traces.dirichlet[s - 1] = sc.data.with_side(s);
            // one-sided second-order normal difference along the lattice normal line
            const auto st = inward_step(s);
            const double delta = kSqrt3 * h;
            for (int k = 2; k <= N - 2; ++k) {
                const auto [i, j] = g.side_node(s, k);
                qn[k] = (3.0 * out.at(i, j) - 4.0 * out.at(i + st[0], j + st[1]) +
                         out.at(i + 2 * st[0], j + 2 * st[1])) /
                        (2.0 * delta);
            }
            if (N < 6) throw ParameterError("trace extraction needs N >= 6");
            // the normal line leaves the triangle next to the corners: extrapolate
            qn[1] = 3 * qn[2] - 3 * qn[3] + qn[4];
            qn[0] = 6 * qn[2] - 8 * qn[3] + 3 * qn[4];
            qn[N - 1] = 3 * qn[N - 2] - 3 * qn[N - 3] + qn[N - 4];
            qn[N] = 6 * qn[N - 2] - 8 * qn[N - 3] + 3 * qn[N - 4];
            out.traces.neumann[s - 1] = spline_trace(s, CubicSpline(ss, qn));
        } else {
            const BoundaryTrace d = spline_trace(s, CubicSpline(ss, uv));
            out.traces.dirichlet[s - 1] = d;
            const double sb = std::sin(sc.eff_beta());
            out.traces.neumann[s - 1] = sc.data.with_side(s).axpy(1.0 / sb, d, -sc.eff_gamma() / sb);
        }
    }
    return out;
}

FDSolution fd_solve_h(const ProblemSpec& spec, double h) {
    const double l = spec.geometry.side_length();
    const double r = l / h;
    const int N = static_cast<int>(std::lround(r));
    if (!(h > 0.0) || std::abs(r - N) > 1e-9 * r) throw ParameterError("lattice spacing must divide the side length");
    return fd_solve(spec, N);
}

ProblemSpec manufactured_problem(const ManufacturedSolution& sol, double l, const std::array<BcKind, 3>& kinds,
                                 const std::array<double, 3>& gamma) {
    ProblemSpec p;
    p.lambda = sol.lambda();
    p.geometry = TriangleGeometry(l);
    for (int j = 1; j <= 3; ++j) {
        switch (kinds[j - 1]) {
            case BcKind::DIRICHLET: p.sides[j - 1] = SideCondition::dirichlet(dirichlet_trace(sol, p.geometry, j)); break;
            case BcKind::NEUMANN: p.sides[j - 1] = SideCondition::neumann(neumann_trace(sol, p.geometry, j)); break;
            default:
                p.sides[j - 1] = SideCondition::robin(kPi / 2, gamma[j - 1],
                                                      robin_trace(sol, p.geometry, j, kPi / 2, gamma[j - 1]));
        }
    }
    return p;
}

double richardson_ratio(const ManufacturedSolution& sol, const ProblemSpec& spec, int N) {
    const double e1 = fd_solve(spec, N).max_error(sol), e2 = fd_solve(spec, 2 * N).max_error(sol);
    if (e2 == 0.0) throw NumericalError("zero error at the fine level; ratio undefined");
    return e1 / e2;
}

}  // namespace tri
