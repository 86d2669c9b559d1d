#include "trispec/run.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <random>

#include "trispec/contour.hpp"
#include "trispec/errors.hpp"
#include "trispec/fd.hpp"
#include "trispec/interior.hpp"
#include "trispec/manufactured.hpp"
#include "trispec/poincare.hpp"
#include "trispec/series.hpp"

namespace tri {

using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

// FNV-1a of the file bytes, so a manifest pins its sample files
std::string file_checksum(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (f.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// uniform [0, 1) from the top 53 bits; same stream on every platform
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

json root_table(const std::vector<ModeRoot>& roots) {
    json a = json::array();
    for (const ModeRoot& r : roots)
        a.push_back({{"index", r.index},
                     {"k_re", r.k.real()},
                     {"k_im", r.k.imag()},
                     {"branch", r.branch},
                     {"halfplane", halfplane_name(r.halfplane)},
                     {"residual", r.residual}});
    return a;
}

double max_residual(const std::vector<ModeRoot>& roots) {
    double m = 0.0;
    for (const ModeRoot& r : roots) m = std::max(m, r.residual);
    return m;
}

struct NamedTrace {
    std::string name;  // dirichlet_j or neumann_j
    BoundaryTrace trace;
    bool endpoint_limits = false;  // sample the ends by extrapolation from inside
};

struct Outcome {
    std::vector<NamedTrace> unknown;
    std::optional<TraceSet> full;
    std::string skipped_audit;
    json details;
};

// the solver that produces boundary traces for a given choice
SolverKind trace_solver(SolverKind s) {
    return s == SolverKind::GREENS || s == SolverKind::FOKAS ? SolverKind::SERIES : s;
}

void require_series(const ProblemConfig& c) {
    if (!c.all_kind(BcKind::DIRICHLET) && !c.all_kind(BcKind::NEUMANN))
        throw ConfigError(std::string("solver '") + solver_name(c.solver) +
                          "' needs all-Dirichlet or all-Neumann sides (use 'integral' or 'fd-oracle' for mixed data)");
}

void require_fd(const ProblemConfig& c) {
    for (int j = 0; j < 3; ++j) {
        const SideConfig& sc = c.sides[j];
        if (sc.kind != BcKind::DIRICHLET && sc.kind != BcKind::NEUMANN && std::abs(sc.beta - kPi / 2) > 1e-12)
            throw ConfigError("sides[" + std::to_string(j) + "]: the lattice oracle supports beta = pi/2 only");
    }
}

void require_integral(const ProblemConfig& c) {
    if (c.lambda < 0.0) throw ConfigError("integral solver needs lambda >= 0");
    if (c.symmetric_dirichlet()) return;
    if (c.all_kind(BcKind::DIRICHLET))
        throw ConfigError("integral solver handles Dirichlet data only when all three sides share one data source");
    // Poincare family: check the integral-solvability constraints first
    PoincareSpec ps;
    ps.lambda = c.lambda;
    ps.l = c.side_length;
    for (int j = 0; j < 3; ++j) {
        const SideConfig& sc = c.sides[j];
        if (sc.kind == BcKind::DIRICHLET)
            throw ConfigError("integral solver: Dirichlet sides cannot be combined with Robin/Neumann sides");
        ps.beta[j] = sc.kind == BcKind::NEUMANN ? kPi / 2 : sc.beta;
        ps.gamma[j] = sc.kind == BcKind::NEUMANN ? 0.0 : sc.gamma;
    }
    const AdmissibilityReport rep = admissibility_check(ps);
    if (!rep.integral_solvable) throw ConfigError("boundary conditions rejected: " + rep.message());
    if (!c.mixed_nr())
        throw ConfigError("integral solver implements the mixed case only: Robin (beta = pi/2) on side 1, "
                          "Neumann on sides 2 and 3; " + rep.message());
    const double g = std::sqrt(3.0 * c.lambda);
    if (!(c.lambda > 0.0) || std::abs(c.sides[0].gamma - g) > 1e-12 * std::max(1.0, g))
        throw ConfigError("boundary conditions rejected: the mixed Neumann-Robin representation needs lambda > 0 and "
                          "gamma_1 = sqrt(3 lambda) = " + format_double(g) + "; " + rep.message());
}

std::vector<double> s_grid(int n, double l) {
    std::vector<double> s(n);
    if (n == 1) s[0] = 0.0;
    for (int i = 0; i < n && n > 1; ++i) s[i] = -0.5 * l + l * i / (n - 1);
    if (n > 1) s[n - 1] = 0.5 * l;
    return s;
}

std::vector<double> sample(const NamedTrace& t, int n, double l) {
    if (t.endpoint_limits && n >= 3)
        return sample_with_endpoint_limits([&](double s) { return t.trace.value(s); }, l, n - 1);
    std::vector<double> v;
    for (double s : s_grid(n, l)) v.push_back(t.trace.value(s));
    return v;
}

// value-only trace with a difference-quotient derivative
BoundaryTrace wrap(int side, std::function<double(double)> f) {
    return BoundaryTrace(side, f, [f](double s) {
        const double h = 1e-5;
        return (f(s + h) - f(s - h)) / (2 * h);
    });
}

Outcome solve_series(const ProblemConfig& c, int N) {
    const double l = c.side_length, lam = c.lambda;
    SeriesOptions opt;
    opt.truncation = N;
    opt.order = c.quadrature;
    const ProblemSpec spec = c.problem();
    std::array<BoundaryTrace, 3> f;
    for (int j = 0; j < 3; ++j) f[j] = spec.sides[j].data;
    Outcome o;
    SeriesResult r;
    TraceSet t = TraceSet::zero(lam, l);
    if (c.all_kind(BcKind::DIRICHLET)) {
        const bool sym = c.symmetric_dirichlet();
        r = sym ? symmetric_dirichlet_dtn(f[0], lam, l, opt) : general_dirichlet_dtn(f, lam, l, opt);
        o.details["method"] = sym ? "symmetric Dirichlet series" : "Dirichlet-to-Neumann series";
        for (int j = 0; j < 3; ++j) {
            t.dirichlet[j] = f[j];
            t.neumann[j] = r.traces[j].with_side(j + 1);
            o.unknown.push_back({"neumann_" + std::to_string(j + 1), t.neumann[j]});
        }
    } else {
        r = neumann_ntd(f, lam, l, opt);
        o.details["method"] = "Neumann-to-Dirichlet series";
        if (lam == 0.0) o.details["gauge"] = "Dirichlet traces are determined up to an additive constant";
        for (int j = 0; j < 3; ++j) {
            t.neumann[j] = f[j];
            t.dirichlet[j] = r.traces[j].with_side(j + 1);
            o.unknown.push_back({"dirichlet_" + std::to_string(j + 1), t.dirichlet[j]});
        }
    }
    o.details["truncation"] = N;
    o.details["legendre_terms"] = r.legendre_terms;
    o.details["max_imag_resynthesis"] = r.max_imag;
    o.details["roots_max_residual"] = max_residual(r.roots);
    o.details["roots"] = root_table(r.roots);
    o.full = t;
    return o;
}

Outcome solve_integral(const ProblemConfig& c, int roots) {
    const double l = c.side_length, lam = c.lambda;
    IntegralOptions opt;
    opt.roots = roots;
    opt.order = c.quadrature;
    const ProblemSpec spec = c.problem();
    std::array<BoundaryTrace, 3> f;
    for (int j = 0; j < 3; ++j) f[j] = spec.sides[j].data;
    Outcome o;
    o.details["roots_requested"] = roots;
    if (c.symmetric_dirichlet()) {
        auto I = std::make_shared<SymmetricDirichletIntegral>(f[0], lam, l, opt);
        o.details["method"] = "symmetric Dirichlet contour integral with residue sums";
        o.details["tail_residual"] = I->tail_residual();
        o.details["roots_max_residual"] = max_residual(I->roots());
        o.details["roots"] = root_table(I->roots());
        TraceSet t = TraceSet::zero(lam, l);
        for (int j = 0; j < 3; ++j) {
            t.dirichlet[j] = f[j];
            t.neumann[j] = wrap(j + 1, [I](double s) { return (*I)(s); });
            o.unknown.push_back({"neumann_" + std::to_string(j + 1), t.neumann[j], true});
        }
        o.full = t;
        return o;
    }
    auto q2 = std::make_shared<MixedNRTrace>(f, lam, l, opt);
    auto q3 = std::make_shared<MixedNRTrace>(reflect_mixed_data(f), lam, l, opt);
    o.details["method"] = "mixed Neumann-Robin contour integral with residue sums";
    o.details["tail_residual"] = std::max(q2->tail_residual(), q3->tail_residual());
    o.details["min_residue_denominator"] = std::min(q2->min_denominator(), q3->min_denominator());
    const auto r2 = q2->roots().all();
    o.details["roots_audited_count"] = q2->roots().audited_count;
    o.details["roots_annulus"] = {q2->roots().r_in, q2->roots().r_out};
    o.details["roots_max_residual"] = std::max(max_residual(r2), max_residual(q3->roots().all()));
    o.details["roots"] = root_table(r2);
    o.details["side_3"] = "reflection of the data in the real axis";
    o.unknown.push_back({"dirichlet_2", wrap(2, [q2](double s) { return (*q2)(s); }), true});
    o.unknown.push_back({"dirichlet_3", wrap(3, [q3](double s) { return (*q3)(-s); }), true});
    o.skipped_audit = "the side-1 Dirichlet trace is not produced by the mixed representation";
    return o;
}

Outcome solve_fd(const ProblemConfig& c, int N) {
    const FDSolution sol = fd_solve(c.problem(), N);
    Outcome o;
    o.details["method"] = "six-neighbour lattice finite differences";
    o.details["N"] = N;
    o.details["h"] = sol.grid.h();
    o.details["gauge_fixed"] = sol.gauge_fixed;
    o.details["compatibility_multiplier"] = sol.compatibility;
    for (int j = 0; j < 3; ++j) {
        const bool dir = c.sides[j].kind == BcKind::DIRICHLET;
        o.unknown.push_back({(dir ? "neumann_" : "dirichlet_") + std::to_string(j + 1),
                             dir ? sol.traces.neumann[j] : sol.traces.dirichlet[j]});
    }
    o.full = sol.traces;
    return o;
}

Outcome solve_traces(const ProblemConfig& c, SolverKind s, int truncation) {
    switch (trace_solver(s)) {
        case SolverKind::INTEGRAL: return solve_integral(c, truncation);
        case SolverKind::FD_ORACLE: return solve_fd(c, truncation);
        default: return solve_series(c, truncation);
    }
}

double rel_residual(const TraceSet& t, cplx k, int order) {
    const double scale = std::max({std::abs(rho_tilde(t, 1, k, order)), std::abs(rho_tilde(t, 2, k, order)),
                                   std::abs(rho_tilde(t, 3, k, order)), 1e-300});
    return std::abs(global_residual(t, k, order)) / scale;
}

json audit(const ProblemConfig& c, const Outcome& o, Table* table = nullptr) {
    if (!o.full) return {{"status", "skipped"}, {"reason", o.skipped_audit}};
    std::mt19937_64 rng(c.seed);
    double worst = 0.0;
    for (int i = 0; i < c.audit.points; ++i) {
        const double r = c.audit.r_min + (c.audit.r_max - c.audit.r_min) * unit(rng);
        const cplx k = std::polar(r, 2.0 * kPi * unit(rng));
        const cplx g = global_residual(*o.full, k, c.quadrature);
        const double rr = rel_residual(*o.full, k, c.quadrature);
        worst = std::max(worst, rr);
        if (table) table->rows.push_back({k.real(), k.imag(), g.real(), g.imag(), rr});
    }
    return {{"status", worst <= c.audit.tolerance ? "pass" : "fail"},
            {"points", c.audit.points},
            {"max_relative_residual", worst},
            {"tolerance", c.audit.tolerance},
            {"corner_mismatch", o.full->corner_mismatch()}};
}

Table trace_table(const std::vector<NamedTrace>& ts, int n, double l) {
    Table t;
    t.header.push_back("s");
    for (const NamedTrace& nt : ts) t.header.push_back(nt.name);
    const std::vector<double> s = s_grid(n, l);
    std::vector<std::vector<double>> cols;
    for (const NamedTrace& nt : ts) cols.push_back(sample(nt, n, l));
    for (int i = 0; i < n; ++i) {
        std::vector<double> row{s[i]};
        for (const auto& col : cols) row.push_back(col[i]);
        t.rows.push_back(row);
    }
    return t;
}

std::vector<cplx> interior_nodes(const ProblemConfig& c) {
    const TriangularGrid g(c.side_length, c.interior.subdivisions);
    const TriangleGeometry geo(c.side_length);
    std::vector<cplx> out;
    for (int j = 0; j <= g.N(); ++j)
        for (int i = 0; i + j <= g.N(); ++i) {
            const cplx z = g.node(i, j);
            if (geo.margin(z) >= c.interior.min_margin * c.side_length) out.push_back(z);
        }
    return out;
}

const BoundaryTrace& full_trace(const TraceSet& t, const std::string& name) {
    const int j = name.back() - '1';
    return name.rfind("dirichlet", 0) == 0 ? t.dirichlet[j] : t.neumann[j];
}

void run_solve(const ProblemConfig& c, RunOutput& out) {
    const Outcome o = solve_traces(c, c.solver, c.truncation);
    out.tables.emplace_back("traces.csv", trace_table(o.unknown, c.samples, c.side_length));
    out.manifest["solver"] = o.details;
    out.manifest["audit"] = audit(c, o);
}

void run_verify(const ProblemConfig& c, RunOutput& out) {
    Outcome o;
    TraceSet t = TraceSet::zero(c.lambda, c.side_length);
    for (int j = 0; j < 3; ++j) {
        t.dirichlet[j] = c.sides[j].dirichlet.trace(j + 1, c.side_length);
        t.neumann[j] = c.sides[j].neumann.trace(j + 1, c.side_length);
    }
    o.full = t;
    Table tab;
    tab.header = {"k_re", "k_im", "residual_re", "residual_im", "relative"};
    out.manifest["audit"] = audit(c, o, &tab);
    out.tables.emplace_back("audit.csv", tab);
}

void run_interior(const ProblemConfig& c, RunOutput& out) {
    Table tab;
    tab.header = {"x", "y", "value"};
    json det;
    if (c.solver == SolverKind::FD_ORACLE) {
        const FDSolution sol = fd_solve(c.problem(), c.truncation);
        for (int j = 0; j <= sol.grid.N(); ++j)
            for (int i = 0; i + j <= sol.grid.N(); ++i) {
                const cplx z = sol.grid.node(i, j);
                tab.rows.push_back({z.real(), z.imag(), sol.at(i, j)});
            }
        det = {{"method", "lattice nodal values"}, {"N", c.truncation}, {"gauge_fixed", sol.gauge_fixed}};
    } else if (c.solver == SolverKind::INTEGRAL) {
        if (!c.symmetric_dirichlet())
            throw ConfigError("interior field with the integral solver needs symmetric Dirichlet data");
        const BoundaryTrace f = c.problem().sides[0].data;
        SymmetricInteriorOptions opt;
        opt.interior.order = c.quadrature;
        int modes = 0;
        for (cplx z : interior_nodes(c)) {
            const SymmetricInteriorValue v = symmetric_interior_detail(f, c.lambda, c.side_length, z, opt);
            modes = std::max(modes, v.modes_used);
            tab.rows.push_back({z.real(), z.imag(), v.value});
        }
        det = {{"method", "known-data ray integrals plus residue series"}, {"max_modes_used", modes}};
    } else {
        const Outcome o = solve_series(c, c.truncation);
        InteriorOptions opt;
        opt.order = c.quadrature;
        const bool fokas = c.solver == SolverKind::FOKAS;
        for (cplx z : interior_nodes(c))
            tab.rows.push_back({z.real(), z.imag(), fokas ? fokas_eval(*o.full, z, opt) : greens_eval(*o.full, z, opt)});
        det = o.details;
        det["interior_method"] = fokas ? "ray representation" : "Green representation";
        out.manifest["audit"] = audit(c, o);
    }
    det["points"] = tab.rows.size();
    out.manifest["solver"] = det;
    out.tables.emplace_back("interior.csv", tab);
}

void run_sweep(const ProblemConfig& c, RunOutput& out) {
    const Outcome ref = solve_traces(c, c.solver, c.sweep.reference);
    const int n = std::max(c.samples, 3);
    std::vector<std::vector<double>> ref_vals;
    for (const NamedTrace& t : ref.unknown) ref_vals.push_back(sample(t, n, c.side_length));
    Table tab;
    tab.header = {"truncation", "max_error"};
    for (int N : c.sweep.truncations) {
        const Outcome o = solve_traces(c, c.solver, N);
        double err = 0.0;
        for (size_t k = 0; k < o.unknown.size(); ++k) {
            const std::vector<double> v = sample(o.unknown[k], n, c.side_length);
            for (int i = 0; i < n; ++i) err = std::max(err, std::abs(v[i] - ref_vals[k][i]));
        }
        tab.rows.push_back({double(N), err});
    }
    out.manifest["solver"] = ref.details;
    out.manifest["sweep"] = {{"reference_truncation", c.sweep.reference},
                             {"error", "max over unknown traces and the s-grid of |trace(N) - trace(reference)|"}};
    out.tables.emplace_back("sweep.csv", tab);
}

void run_oracle(const ProblemConfig& c, RunOutput& out) {
    const SolverKind spectral = c.solver == SolverKind::FD_ORACLE ? SolverKind::SERIES : c.solver;
    if (trace_solver(spectral) == SolverKind::SERIES) require_series(c);
    const Outcome o = solve_traces(c, spectral, c.truncation);
    const FDSolution fine = fd_solve(c.problem(), c.oracle.N);
    const FDSolution coarse = fd_solve(c.problem(), c.oracle.N / 2);
    const double l = c.side_length;
    Table tab;
    tab.header.push_back("s");
    std::vector<NamedTrace> cols;
    json cmp = json::array();
    for (const NamedTrace& t : o.unknown) {
        const BoundaryTrace& fd = full_trace(fine.traces, t.name);
        const BoundaryTrace& fd2 = full_trace(coarse.traces, t.name);
        cols.push_back(t);
        cols.push_back({t.name + "_fd", fd});
        tab.header.push_back(t.name);
        tab.header.push_back(t.name + "_fd");
        const double m = c.oracle.corner_margin;
        cmp.push_back({{"trace", t.name},
                       {"max_discrepancy", compare_traces(t.trace, fd, l, Norm::MAX, m)},
                       // Richardson estimate of the O(h^2) lattice error
                       {"fd_error_estimate", compare_traces(fd, fd2, l, Norm::MAX, m) / 3.0}});
    }
    const std::vector<double> s = s_grid(c.samples, l);
    std::vector<std::vector<double>> vals;
    for (const NamedTrace& t : cols) vals.push_back(sample(t, c.samples, l));
    for (int i = 0; i < c.samples; ++i) {
        std::vector<double> row{s[i]};
        for (const auto& v : vals) row.push_back(v[i]);
        tab.rows.push_back(row);
    }
    out.manifest["solver"] = o.details;
    out.manifest["oracle"] = {{"N", c.oracle.N}, {"h", fine.grid.h()}, {"corner_margin", c.oracle.corner_margin},
                              {"comparison", cmp}};
    out.tables.emplace_back("oracle.csv", tab);
}

}  // namespace

const char* command_name(Command c) {
    switch (c) {
        case Command::SOLVE: return "solve";
        case Command::VERIFY: return "verify";
        case Command::INTERIOR: return "interior";
        case Command::SWEEP: return "sweep";
        case Command::ORACLE: return "oracle";
    }
    return "?";
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

std::string Table::csv() const {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) {
            if (i) out += ',';
            out += format_double(r[i]);
        }
        out += '\n';
    }
    return out;
}

void validate(const ProblemConfig& c, Command cmd) {
    if (cmd == Command::VERIFY) {
        for (int j = 0; j < 3; ++j)
            if (c.sides[j].dirichlet.empty() || c.sides[j].neumann.empty())
                throw ConfigError("verify: sides[" + std::to_string(j) + "] needs both 'dirichlet' and 'neumann' data");
        return;
    }
    for (int j = 0; j < 3; ++j)
        if (c.sides[j].data.empty()) throw ConfigError("sides[" + std::to_string(j) + "]: missing 'data'");
    switch (c.solver) {
        case SolverKind::SERIES: require_series(c); break;
        case SolverKind::GREENS:
            require_series(c);
            if (c.lambda < 0.0) throw ConfigError("Green representation needs lambda >= 0");
            break;
        case SolverKind::FOKAS:
            require_series(c);
            if (!(c.lambda > 0.0)) throw ConfigError("ray representation needs lambda > 0");
            break;
        case SolverKind::INTEGRAL:
            require_integral(c);
            if (cmd == Command::INTERIOR && !(c.lambda > 0.0))
                throw ConfigError("interior residue series needs lambda > 0");
            break;
        case SolverKind::FD_ORACLE:
            require_fd(c);
            if (c.truncation < 6) throw ConfigError("fd-oracle needs truncation (lattice N) >= 6");
            break;
    }
    if (cmd == Command::ORACLE) {
        require_fd(c);
        if (c.oracle.N < 12) throw ConfigError("oracle.N must be at least 12");
    }
    if (cmd == Command::SWEEP && c.solver == SolverKind::FD_ORACLE)
        for (int N : c.sweep.truncations)
            if (N < 6) throw ConfigError("sweep.truncations: lattice N must be >= 6");
    // surface data errors (missing files, bad samples) before any compute
    std::array<BoundaryTrace, 3> f;
    for (int j = 0; j < 3; ++j) f[j] = c.sides[j].data.trace(j + 1, c.side_length);
    if (c.all_kind(BcKind::DIRICHLET)) {
        // q must be continuous at the vertices: side j ends where side j-1 starts
        const double h = 0.5 * c.side_length;
        double gap = 0.0, scale = 1.0;
        for (int j = 0; j < 3; ++j) {
            const double a = f[j].value(h), b = f[(j + 2) % 3].value(-h);
            gap = std::max(gap, std::abs(a - b));
            scale = std::max({scale, std::abs(a), std::abs(b)});
        }
        if (gap > 1e-8 * scale)
            throw ConfigError("Dirichlet data are discontinuous at a vertex (jump " + format_double(gap) + ")");
    }
}

RunOutput run(const ProblemConfig& c, Command cmd) {
    validate(c, cmd);
    RunOutput out;
    out.command = cmd;
    out.manifest["program"] = "trisolve";
    out.manifest["version"] = kVersion;
    out.manifest["command"] = command_name(cmd);
    out.manifest["config"] = c.to_json();
    // outputs do not depend on where they are written
    out.manifest["config"].erase("output");
    json inputs = json::object();
    for (const SideConfig& sc : c.sides)
        for (const DataSource* d : {&sc.data, &sc.dirichlet, &sc.neumann})
            if (!d->file.empty()) inputs[d->file] = {{"fnv1a64", file_checksum(d->file)}};
    if (!inputs.empty()) out.manifest["input_files"] = inputs;
    switch (cmd) {
        case Command::SOLVE: run_solve(c, out); break;
        case Command::VERIFY: run_verify(c, out); break;
        case Command::INTERIOR: run_interior(c, out); break;
        case Command::SWEEP: run_sweep(c, out); break;
        case Command::ORACLE: run_oracle(c, out); break;
    }
    json files = json::object();
    for (const auto& [name, t] : out.tables) files[name] = t.header;
    out.manifest["csv_columns"] = files;
    return out;
}

void emit(const RunOutput& out, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
    auto write = [&](const std::string& name, const std::string& text) {
        const std::filesystem::path p = std::filesystem::path(dir) / name;
        std::ofstream f(p, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot write '" + p.string() + "'");
        f << text;
        if (!f) throw ConfigError("write failed for '" + p.string() + "'");
    };
    for (const auto& [name, t] : out.tables) write(name, t.csv());
    write("manifest.json", out.manifest.dump(2) + "\n");
}

}  // namespace tri
