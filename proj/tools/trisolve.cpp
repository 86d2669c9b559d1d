// trisolve: boundary traces, interior fields and audits for the equilateral triangle.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "trispec/config.hpp"
#include "trispec/errors.hpp"
#include "trispec/run.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral boundary-value solver for the equilateral triangle"};
    app.require_subcommand(1, 1);

    std::string config_path, out_dir, solver;
    std::optional<int> truncation, quadrature;
    std::optional<std::uint64_t> seed;

    const std::pair<const char*, tri::Command> cmds[] = {
        {"solve", tri::Command::SOLVE},
        {"verify", tri::Command::VERIFY},
        {"interior", tri::Command::INTERIOR},
        {"sweep", tri::Command::SWEEP},
        {"oracle", tri::Command::ORACLE},
    };
    const char* help[] = {
        "compute the unknown boundary traces",
        "global-relation audit of a full trace set",
        "evaluate the solution on a triangular point grid",
        "error against a reference truncation for each N in sweep.truncations",
        "compare the spectral traces with the lattice finite-difference oracle",
    };
    std::vector<CLI::App*> subs;
    for (int i = 0; i < 5; ++i) {
        CLI::App* s = app.add_subcommand(cmds[i].first, help[i]);
        s->add_option("--config", config_path, "JSON problem configuration (or a run manifest)")->required();
        s->add_option("--out", out_dir, "output directory (overrides output.directory)");
        s->add_option("--solver", solver, "series | integral | greens | fokas | fd-oracle");
        s->add_option("--truncation", truncation, "series N, residue root count, or lattice N");
        s->add_option("--quadrature", quadrature, "Gauss-Legendre order of the side transforms");
        s->add_option("--seed", seed, "seed of the randomized audit points");
        subs.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    tri::Command cmd = tri::Command::SOLVE;
    for (int i = 0; i < 5; ++i)
        if (subs[i]->parsed()) cmd = cmds[i].second;

    try {
        tri::ProblemConfig cfg = tri::load_config(config_path);
        if (!solver.empty()) cfg.solver = tri::parse_solver(solver);
        if (truncation) {
            if (*truncation < 1) throw tri::ConfigError("--truncation must be positive");
            cfg.truncation = *truncation;
        }
        if (quadrature) {
            if (*quadrature < 4) throw tri::ConfigError("--quadrature must be at least 4");
            cfg.quadrature = *quadrature;
        }
        if (seed) cfg.seed = *seed;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        const tri::RunOutput out = tri::run(cfg, cmd);
        tri::emit(out, cfg.out_dir);
        std::cout << "wrote";
        for (const auto& [name, t] : out.tables) std::cout << ' ' << name << " (" << t.rows.size() << " rows)";
        std::cout << " and manifest.json to " << cfg.out_dir << '\n';
        if (out.manifest.contains("audit")) std::cout << "audit: " << out.manifest["audit"].dump() << '\n';
        return 0;
    } catch (const tri::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const tri::ParameterError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const tri::DomainError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const tri::SolvabilityError& e) {
        // incompatible data is an input problem, not a solver failure
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const tri::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    }
}
