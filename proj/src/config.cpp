#include "trispec/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "trispec/errors.hpp"
#include "trispec/expr.hpp"
#include "trispec/spline.hpp"

namespace tri {

using json = nlohmann::json;

namespace {

const std::pair<const char*, SolverKind> kSolvers[] = {{"series", SolverKind::SERIES},
                                                       {"integral", SolverKind::INTEGRAL},
                                                       {"greens", SolverKind::GREENS},
                                                       {"fokas", SolverKind::FOKAS},
                                                       {"fd-oracle", SolverKind::FD_ORACLE}};

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) bad(where, "expected an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) bad(where, "unknown key '" + k + "'");
}

double num(const json& j, const std::string& where) {
    if (!j.is_number()) bad(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) bad(where, "not finite");
    return v;
}

int integer(const json& j, const std::string& where, int lo) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    const long long v = j.get<long long>();
    if (v < lo || v > 1000000) bad(where, "out of range (" + std::to_string(v) + ")");
    return static_cast<int>(v);
}

DataSource data_source(const json& j, const std::string& where, const std::filesystem::path& base) {
    DataSource d;
    if (j.is_string()) {
        d.expr = j.get<std::string>();
        try {
            Expression::parse(d.expr);
        } catch (const ExprError& e) {
            bad(where, e.what());
        }
    } else if (j.is_object()) {
        only_keys(j, where, {"file"});
        if (!j.contains("file") || !j["file"].is_string()) bad(where, "expected {\"file\": path}");
        std::filesystem::path p = j["file"].get<std::string>();
        if (p.is_relative()) p = base / p;
        d.file = std::filesystem::absolute(p).lexically_normal().string();
    } else if (j.is_number()) {
        d.expr = json(num(j, where)).dump();
    } else {
        bad(where, "expected an expression string or {\"file\": path}");
    }
    return d;
}

BcKind kind_of(const std::string& s, const std::string& where) {
    for (BcKind k : {BcKind::DIRICHLET, BcKind::NEUMANN, BcKind::ROBIN, BcKind::POINCARE})
        if (s == bc_name(k)) return k;
    bad(where, "unknown boundary kind '" + s + "'");
}

}  // namespace

const char* solver_name(SolverKind s) {
    for (const auto& [n, k] : kSolvers)
        if (k == s) return n;
    return "?";
}

SolverKind parse_solver(const std::string& name) {
    for (const auto& [n, k] : kSolvers)
        if (name == n) return k;
    throw ConfigError("unknown solver '" + name + "' (series, integral, greens, fokas, fd-oracle)");
}

BoundaryTrace DataSource::trace(int side, double l) const {
    if (!expr.empty()) return expression_trace(side, Expression::parse(expr), l);
    if (file.empty()) throw ConfigError("side " + std::to_string(side) + ": no boundary data");
    const CubicSpline sp = read_sample_file(file);
    const double tol = 1e-9 * l;
    if (sp.x().front() > -0.5 * l + tol || sp.x().back() < 0.5 * l - tol)
        throw ConfigError(file + ": samples must cover [-l/2, l/2]");
    return spline_trace(side, sp);
}

json DataSource::to_json() const {
    if (!file.empty()) return json{{"file", file}};
    return expr;
}

json ProblemConfig::to_json() const {
    json sides_j = json::array();
    for (const SideConfig& sc : sides) {
        json s = {{"kind", bc_name(sc.kind)}, {"beta", sc.beta}, {"gamma", sc.gamma}};
        if (!sc.data.empty()) s["data"] = sc.data.to_json();
        if (!sc.dirichlet.empty()) s["dirichlet"] = sc.dirichlet.to_json();
        if (!sc.neumann.empty()) s["neumann"] = sc.neumann.to_json();
        sides_j.push_back(s);
    }
    return json{{"lambda", lambda},
                {"side_length", side_length},
                {"solver", solver_name(solver)},
                {"truncation", truncation},
                {"quadrature", quadrature},
                {"samples", samples},
                {"seed", seed},
                {"sides", sides_j},
                {"audit",
                 {{"points", audit.points},
                  {"tolerance", audit.tolerance},
                  {"r_min", audit.r_min},
                  {"r_max", audit.r_max}}},
                {"interior", {{"subdivisions", interior.subdivisions}, {"min_margin", interior.min_margin}}},
                {"sweep", {{"truncations", sweep.truncations}, {"reference", sweep.reference}}},
                {"oracle", {{"N", oracle.N}, {"corner_margin", oracle.corner_margin}}},
                {"output", {{"directory", out_dir}}}};
}

ProblemConfig ProblemConfig::from_json(const json& j, const std::string& base_dir) {
    ProblemConfig c;
    const std::filesystem::path base(base_dir);
    only_keys(j, "config", {"lambda", "side_length", "solver", "truncation", "quadrature", "samples", "seed",
                            "sides", "audit", "interior", "sweep", "oracle", "output"});
    if (j.contains("lambda")) c.lambda = num(j["lambda"], "lambda");
    if (j.contains("side_length")) c.side_length = num(j["side_length"], "side_length");
    if (!(c.side_length > 0.0)) bad("side_length", "must be positive");
    if (j.contains("solver")) {
        if (!j["solver"].is_string()) bad("solver", "expected a string");
        c.solver = parse_solver(j["solver"].get<std::string>());
    }
    if (j.contains("truncation")) c.truncation = integer(j["truncation"], "truncation", 1);
    if (j.contains("quadrature")) c.quadrature = integer(j["quadrature"], "quadrature", 4);
    if (j.contains("samples")) c.samples = integer(j["samples"], "samples", 0);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) bad("seed", "expected a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (!j.contains("sides")) bad("config", "missing 'sides'");
    const json& sj = j["sides"];
    if (!sj.is_array() || sj.size() != 3) bad("sides", "expected an array of three side objects");
    for (int i = 0; i < 3; ++i) {
        const std::string where = "sides[" + std::to_string(i) + "]";
        const json& s = sj[i];
        only_keys(s, where, {"kind", "beta", "gamma", "data", "dirichlet", "neumann"});
        SideConfig& sc = c.sides[i];
        if (s.contains("kind")) {
            if (!s["kind"].is_string()) bad(where + ".kind", "expected a string");
            sc.kind = kind_of(s["kind"].get<std::string>(), where + ".kind");
        }
        if (s.contains("beta")) sc.beta = num(s["beta"], where + ".beta");
        if (s.contains("gamma")) sc.gamma = num(s["gamma"], where + ".gamma");
        if (s.contains("data")) sc.data = data_source(s["data"], where + ".data", base);
        if (s.contains("dirichlet")) sc.dirichlet = data_source(s["dirichlet"], where + ".dirichlet", base);
        if (s.contains("neumann")) sc.neumann = data_source(s["neumann"], where + ".neumann", base);
        if ((sc.kind == BcKind::ROBIN || sc.kind == BcKind::POINCARE) && std::abs(std::sin(sc.beta)) < 1e-12)
            bad(where + ".beta", "sin(beta) must be nonzero");
    }
    if (j.contains("audit")) {
        const json& a = j["audit"];
        only_keys(a, "audit", {"points", "tolerance", "r_min", "r_max"});
        if (a.contains("points")) c.audit.points = integer(a["points"], "audit.points", 0);
        if (a.contains("tolerance")) c.audit.tolerance = num(a["tolerance"], "audit.tolerance");
        if (a.contains("r_min")) c.audit.r_min = num(a["r_min"], "audit.r_min");
        if (a.contains("r_max")) c.audit.r_max = num(a["r_max"], "audit.r_max");
        if (!(c.audit.r_min > 0.0 && c.audit.r_max >= c.audit.r_min)) bad("audit", "need 0 < r_min <= r_max");
    }
    if (j.contains("interior")) {
        const json& a = j["interior"];
        only_keys(a, "interior", {"subdivisions", "min_margin"});
        if (a.contains("subdivisions")) c.interior.subdivisions = integer(a["subdivisions"], "interior.subdivisions", 3);
        if (a.contains("min_margin")) c.interior.min_margin = num(a["min_margin"], "interior.min_margin");
        if (!(c.interior.min_margin >= 1e-3)) bad("interior.min_margin", "must be at least 1e-3");
    }
    if (j.contains("sweep")) {
        const json& a = j["sweep"];
        only_keys(a, "sweep", {"truncations", "reference"});
        if (a.contains("truncations")) {
            if (!a["truncations"].is_array() || a["truncations"].empty()) bad("sweep.truncations", "expected a list");
            c.sweep.truncations.clear();
            for (const json& t : a["truncations"]) c.sweep.truncations.push_back(integer(t, "sweep.truncations", 1));
        }
        if (a.contains("reference")) c.sweep.reference = integer(a["reference"], "sweep.reference", 1);
    }
    if (j.contains("oracle")) {
        const json& a = j["oracle"];
        only_keys(a, "oracle", {"N", "corner_margin"});
        if (a.contains("N")) c.oracle.N = integer(a["N"], "oracle.N", 6);
        if (a.contains("corner_margin")) c.oracle.corner_margin = num(a["corner_margin"], "oracle.corner_margin");
    }
    if (j.contains("output")) {
        const json& a = j["output"];
        only_keys(a, "output", {"directory"});
        if (a.contains("directory")) {
            if (!a["directory"].is_string()) bad("output.directory", "expected a string");
            c.out_dir = a["directory"].get<std::string>();
        }
    }
    return c;
}

ProblemSpec ProblemConfig::problem() const {
    ProblemSpec p;
    p.lambda = lambda;
    p.geometry = TriangleGeometry(side_length);
    p.order = quadrature;
    for (int j = 0; j < 3; ++j) {
        const SideConfig& sc = sides[j];
        if (sc.data.empty()) throw ConfigError("sides[" + std::to_string(j) + "]: missing 'data'");
        const BoundaryTrace f = sc.data.trace(j + 1, side_length);
        switch (sc.kind) {
            case BcKind::DIRICHLET: p.sides[j] = SideCondition::dirichlet(f); break;
            case BcKind::NEUMANN: p.sides[j] = SideCondition::neumann(f); break;
            default: p.sides[j] = SideCondition::robin(sc.beta, sc.gamma, f); p.sides[j].kind = sc.kind;
        }
    }
    return p;
}

bool ProblemConfig::all_kind(BcKind k) const {
    for (const SideConfig& sc : sides)
        if (sc.kind != k) return false;
    return true;
}

bool ProblemConfig::symmetric_dirichlet() const {
    return all_kind(BcKind::DIRICHLET) && sides[0].data == sides[1].data && sides[0].data == sides[2].data &&
           !sides[0].data.empty();
}

bool ProblemConfig::mixed_nr() const {
    const SideConfig& s1 = sides[0];
    return (s1.kind == BcKind::ROBIN || s1.kind == BcKind::POINCARE) && std::abs(s1.beta - kPi / 2) < 1e-12 &&
           sides[1].kind == BcKind::NEUMANN && sides[2].kind == BcKind::NEUMANN;
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (j.is_object() && j.contains("config") && j.contains("program")) j = j["config"];
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    return ProblemConfig::from_json(j, base.empty() ? "." : base.string());
}

}  // namespace tri
