#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "trispec/config.hpp"
#include "trispec/errors.hpp"
#include "trispec/run.hpp"
#include "trispec/series.hpp"

using namespace tri;
using json = nlohmann::json;

namespace {

json symmetric_cfg(const std::string& f, double lambda) {
    json side = {{"kind", "dirichlet"}, {"data", f}};
    return {{"lambda", lambda}, {"side_length", 1.0}, {"solver", "series"}, {"truncation", 64},
            {"samples", 65},    {"sides", {side, side, side}}};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int line_count(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

std::string config_error(const json& j, Command cmd = Command::SOLVE) {
    try {
        run(ProblemConfig::from_json(j), cmd);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("number format") {
    CHECK(format_double(1.0) == "1.00000000000000000e+00");
    CHECK(format_double(-0.0) == "0.00000000000000000e+00");
    CHECK(format_double(-2.5e-300) == "-2.49999999999999998e-300");
    // 17 significant digits round trip
    const double x = 0.1 + 0.2;
    CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("config round trip and defaults") {
    const ProblemConfig c = ProblemConfig::from_json(symmetric_cfg("cos(2*pi*s/l)", 1.0));
    CHECK(c.symmetric_dirichlet());
    CHECK(c.samples == 65);
    CHECK(c.quadrature == 64);
    CHECK(c.seed == 7);
    const json j = c.to_json();
    CHECK(ProblemConfig::from_json(j).to_json() == j);
    CHECK(parse_solver("fd-oracle") == SolverKind::FD_ORACLE);
    CHECK_THROWS_AS(parse_solver("fem"), ConfigError);
}

TEST_CASE("config errors") {
    json j = symmetric_cfg("s", 1.0);
    j["bogus"] = 1;
    CHECK(config_error(j).find("unknown key 'bogus'") != std::string::npos);
    j = symmetric_cfg("sin(2*pi*s/l) + q", 1.0);
    CHECK(config_error(j).find("sides[0].data: unknown identifier 'q' at byte 16") != std::string::npos);
    j = symmetric_cfg("s", 1.0);
    j["sides"].erase(2);
    CHECK(config_error(j).find("three side objects") != std::string::npos);
    j = symmetric_cfg("s", 1.0);
    j["truncation"] = 0;
    CHECK(config_error(j).find("truncation") != std::string::npos);
    j = symmetric_cfg("s", 1.0);
    j["sides"][1]["kind"] = "periodic";
    CHECK(config_error(j).find("unknown boundary kind") != std::string::npos);
    j = symmetric_cfg("s", 1.0);
    j["sides"][1]["data"] = {{"file", "does/not/exist.txt"}};
    CHECK(config_error(j).find("exist.txt") != std::string::npos);
    // data that jump at a vertex
    CHECK(config_error(symmetric_cfg("exp(s)", 1.0)).find("discontinuous") != std::string::npos);
}

TEST_CASE("symmetric Dirichlet run") {
    const ProblemConfig c = ProblemConfig::from_json(symmetric_cfg("cos(2*pi*s/l)", 1.0));
    const RunOutput out = run(c, Command::SOLVE);
    REQUIRE(out.tables.size() == 1);
    const Table& t = out.tables[0].second;
    CHECK(out.tables[0].first == "traces.csv");
    CHECK(t.header == std::vector<std::string>{"s", "neumann_1", "neumann_2", "neumann_3"});
    CHECK(t.rows.size() == 65);
    CHECK(out.manifest["audit"]["status"] == "pass");
    CHECK(out.manifest["audit"]["max_relative_residual"].get<double>() <= 1e-8);
    CHECK(out.manifest["solver"]["roots_max_residual"].get<double>() <= 1e-12);
    // the table is the series solution on the uniform grid
    const BoundaryTrace f = c.problem().sides[0].data;
    SeriesOptions opt;
    opt.truncation = 64;
    const SeriesResult r = symmetric_dirichlet_dtn(f, 1.0, 1.0, opt);
    for (const auto& row : t.rows)
        for (int j = 0; j < 3; ++j) CHECK(row[1 + j] == r.traces[j].value(row[0]));
    CHECK(t.rows.front()[0] == -0.5);
    CHECK(t.rows.back()[0] == 0.5);
}

TEST_CASE("mixed Neumann-Robin admissibility") {
    json side1 = {{"kind", "robin"}, {"gamma", 1.2}, {"data", "1"}};
    json neu = {{"kind", "neumann"}, {"data", "0"}};
    json j = {{"lambda", 1.0}, {"solver", "integral"}, {"sides", {side1, neu, neu}}};
    const std::string msg = config_error(j);
    CHECK(msg.find("rejected") != std::string::npos);
    CHECK(msg.find("gamma-cubic") != std::string::npos);
    // admissible, but the representation is built for gamma_1 = sqrt(3 lambda)
    j["sides"][0]["gamma"] = 0.0;
    CHECK(config_error(j).find("sqrt(3 lambda)") != std::string::npos);
    // admissible, but not the side layout the representation covers
    j["sides"][0] = {{"kind", "neumann"}, {"data", "0"}};
    j["sides"][2] = side1;
    j["sides"][2]["gamma"] = 0.0;
    CHECK(config_error(j).find("mixed case only") != std::string::npos);
    // series cannot take mixed sides
    j["solver"] = "series";
    CHECK(config_error(j).find("all-Dirichlet or all-Neumann") != std::string::npos);
    // lattice oracle only for beta = pi/2
    j["solver"] = "fd-oracle";
    j["sides"][2]["beta"] = 1.0;
    CHECK(config_error(j).find("beta = pi/2") != std::string::npos);
}

TEST_CASE("sweep shows geometric decay") {
    json j = symmetric_cfg("cosh(2*s) + s^2", 1.0);
    j["sweep"] = {{"truncations", {16, 32, 64}}, {"reference", 128}};
    const RunOutput out = run(ProblemConfig::from_json(j), Command::SWEEP);
    const Table& t = out.tables[0].second;
    REQUIRE(t.rows.size() == 3);
    CHECK(t.header == std::vector<std::string>{"truncation", "max_error"});
    const double e16 = t.rows[0][1], e32 = t.rows[1][1], e64 = t.rows[2][1];
    CHECK(e32 < e16 / 8);
    CHECK(e64 < e32 / 8);
    // the ratio grows: faster than any fixed power of N
    CHECK(e32 / e64 > e16 / e32);
}

TEST_CASE("emit") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "trisolve_emit_test";
    fs::remove_all(dir);
    SUBCASE("empty result is header only") {
        json j = symmetric_cfg("1", 0.0);
        j["samples"] = 0;
        emit(run(ProblemConfig::from_json(j), Command::SOLVE), dir.string());
        CHECK(slurp(dir / "traces.csv") == "s,neumann_1,neumann_2,neumann_3\n");
        CHECK(fs::exists(dir / "manifest.json"));
    }
    SUBCASE("256 samples give 257 lines") {
        json j = symmetric_cfg("cos(2*pi*s/l)", 1.0);
        j["samples"] = 256;
        emit(run(ProblemConfig::from_json(j), Command::SOLVE), dir.string());
        const std::string csv = slurp(dir / "traces.csv");
        CHECK(line_count(csv) == 257);
        CHECK(csv.find('\r') == std::string::npos);
        for (char ch : csv) CHECK(static_cast<unsigned char>(ch) < 128);
    }
    SUBCASE("identical runs are byte identical") {
        const ProblemConfig c = ProblemConfig::from_json(symmetric_cfg("cosh(2*s) + s^2", 2.0));
        emit(run(c, Command::SOLVE), (dir / "a").string());
        emit(run(c, Command::SOLVE), (dir / "b").string());
        CHECK(slurp(dir / "a" / "traces.csv") == slurp(dir / "b" / "traces.csv"));
        CHECK(slurp(dir / "a" / "manifest.json") == slurp(dir / "b" / "manifest.json"));
        // and the manifest reproduces the run
        const ProblemConfig again = load_config((dir / "a" / "manifest.json").string());
        emit(run(again, Command::SOLVE), (dir / "c").string());
        CHECK(slurp(dir / "a" / "traces.csv") == slurp(dir / "c" / "traces.csv"));
        CHECK(slurp(dir / "a" / "manifest.json") == slurp(dir / "c" / "manifest.json"));
    }
    SUBCASE("unwritable directory") {
        const RunOutput out = run(ProblemConfig::from_json(symmetric_cfg("1", 0.0)), Command::SOLVE);
        CHECK_THROWS_AS(emit(out, "/proc/trisolve/none"), ConfigError);
    }
    fs::remove_all(dir);
}

TEST_CASE("sample-file data") {
    namespace fs = std::filesystem;
    const fs::path p = fs::temp_directory_path() / "trisolve_side.txt";
    {
        std::ofstream f(p);
        f.precision(17);
        for (int i = 0; i <= 64; ++i) {
            const double s = -0.5 + i / 64.0;
            f << s << ", " << std::cosh(2 * s) + s * s << "\n";
        }
    }
    json j = symmetric_cfg("cosh(2*s) + s^2", 1.0);
    const RunOutput ref = run(ProblemConfig::from_json(j), Command::SOLVE);
    for (auto& s : j["sides"]) s["data"] = {{"file", p.string()}};
    const RunOutput out = run(ProblemConfig::from_json(j), Command::SOLVE);
    CHECK(out.manifest["input_files"].size() == 1);
    double err = 0.0;
    for (size_t i = 0; i < ref.tables[0].second.rows.size(); ++i)
        err = std::max(err, std::abs(ref.tables[0].second.rows[i][1] - out.tables[0].second.rows[i][1]));
    // spline data carry O(h^3) slope error into the Neumann trace
    CHECK(err < 1e-4);
    fs::remove(p);
}

TEST_CASE("verify audits user trace sets") {
    // q = 1 + x for lambda = 0: q_N = Re(n) on each side
    const double a = 1.0 / (2.0 * std::sqrt(3.0));
    auto side = [&](double nr, double ni, double dq) {
        std::ostringstream q;
        q.precision(17);
        q << "1 + " << nr * a << " - " << ni << "*s";
        std::ostringstream qn;
        qn.precision(17);
        qn << nr + dq;
        return json{{"dirichlet", q.str()}, {"neumann", qn.str()}};
    };
    json j = {{"lambda", 0.0},
              {"sides", {side(1, 0, 0), side(-0.5, -std::sqrt(3.0) / 2, 0), side(-0.5, std::sqrt(3.0) / 2, 0)}}};
    RunOutput out = run(ProblemConfig::from_json(j), Command::VERIFY);
    CHECK(out.manifest["audit"]["status"] == "pass");
    CHECK(out.tables[0].second.rows.size() == 50);
    j["sides"][1] = side(-0.5, -std::sqrt(3.0) / 2, 1e-3);
    out = run(ProblemConfig::from_json(j), Command::VERIFY);
    CHECK(out.manifest["audit"]["status"] == "fail");
    // verify needs both traces
    j["sides"][2].erase("neumann");
    CHECK(config_error(j, Command::VERIFY).find("needs both") != std::string::npos);
}

TEST_CASE("interior subcommand") {
    json j = symmetric_cfg("cos(2*pi*s/l)", 1.0);
    j["interior"] = {{"subdivisions", 8}, {"min_margin", 0.05}};
    const RunOutput g = run(ProblemConfig::from_json(j), Command::INTERIOR);
    j["solver"] = "fokas";
    const RunOutput f = run(ProblemConfig::from_json(j), Command::INTERIOR);
    const Table& a = g.tables[0].second;
    const Table& b = f.tables[0].second;
    CHECK(a.header == std::vector<std::string>{"x", "y", "value"});
    REQUIRE(a.rows.size() == b.rows.size());
    CHECK(a.rows.size() > 10);
    for (size_t i = 0; i < a.rows.size(); ++i) CHECK(std::abs(a.rows[i][2] - b.rows[i][2]) < 1e-6);
    j["solver"] = "fd-oracle";
    j["truncation"] = 16;
    const RunOutput d = run(ProblemConfig::from_json(j), Command::INTERIOR);
    CHECK(d.tables[0].second.rows.size() == 17 * 18 / 2);
}
