#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "trispec/global_relation.hpp"

namespace tri {

enum class SolverKind { SERIES, INTEGRAL, GREENS, FOKAS, FD_ORACLE };
const char* solver_name(SolverKind s);
SolverKind parse_solver(const std::string& name);  // ConfigError on unknown names

// Boundary data: an expression in s (with pi and l) or a two-column sample file.
struct DataSource {
    std::string expr;
    std::string file;  // resolved path
    bool empty() const { return expr.empty() && file.empty(); }
    bool operator==(const DataSource&) const = default;
    BoundaryTrace trace(int side, double l) const;  // ConfigError on bad input
    nlohmann::json to_json() const;
};

struct SideConfig {
    BcKind kind = BcKind::DIRICHLET;
    double beta = kPi / 2;
    double gamma = 0.0;
    DataSource data;
    // verify only: the full trace pair
    DataSource dirichlet, neumann;
};

struct ProblemConfig {
    double lambda = 0.0;
    double side_length = 1.0;
    std::array<SideConfig, 3> sides;
    SolverKind solver = SolverKind::SERIES;
    int truncation = 64;
    int quadrature = 64;
    int samples = 257;
    std::uint64_t seed = 7;

    struct Audit {
        int points = 50;
        double tolerance = 1e-8;
        double r_min = 0.2, r_max = 5.0;
    } audit;
    struct Interior {
        int subdivisions = 16;
        double min_margin = 0.05;  // in units of l
    } interior;
    struct Sweep {
        std::vector<int> truncations{16, 32, 64};
        int reference = 128;
    } sweep;
    struct Oracle {
        int N = 64;
        double corner_margin = 0.02;
    } oracle;
    std::string out_dir = "out";

    // effective configuration; from_json(to_json()) reproduces it exactly
    nlohmann::json to_json() const;
    // relative sample-file paths are resolved against base_dir
    static ProblemConfig from_json(const nlohmann::json& j, const std::string& base_dir = ".");

    ProblemSpec problem() const;
    bool all_kind(BcKind k) const;
    // all Dirichlet with one data source
    bool symmetric_dirichlet() const;
    // Robin on side 1 (beta = pi/2), Neumann on sides 2 and 3
    bool mixed_nr() const;
};

// Reads a config file.  A run manifest is accepted too (its "config" member is used).
ProblemConfig load_config(const std::string& path);

}  // namespace tri
