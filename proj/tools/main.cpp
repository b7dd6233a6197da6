#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "cascade/drivers.hpp"
#include "cascade/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cascade;

int main(int argc, char** argv) {
    CLI::App app{"cascaded qubit-cavity simulator: single-photon joint "
                 "excitation of two remote qubits"};
    app.set_version_flag("--version",
                         std::string(kToolName) + " " + kVersion);
    app.require_subcommand(1);
    app.fallthrough();  // accept global --config/--workers after the subcommand

    std::string config_path, out_path, grid_text, axis_name;
    int workers = 0, levels = 0;

    app.add_option("--config", config_path, "configuration file (INI sections)");
    app.add_option("--workers", workers,
                   "threads for grid points / sweep rows (0 = config default)");

    auto* sp = app.add_subcommand("spectrum",
                                  "composite eigenlevels vs omega_c with "
                                  "avoided-crossing summary");
    auto* dy = app.add_subcommand("dynamics",
                                  "qubit excitations and equal-time C(t) at "
                                  "the located crossing");
    auto* co = app.add_subcommand("correlation",
                                  "delayed joint-excitation correlation for "
                                  "one tau_d");
    auto* sw = app.add_subcommand("sweep",
                                  "c_max versus gamma | delay | gain | omega_c");
    auto* va = app.add_subcommand("validate",
                                  "hierarchy vs source-cavity oracle report");
    for (auto* s : {sp, dy, co, sw, va})
        s->add_option("--out", out_path, "output CSV path");
    sp->add_option("--grid", grid_text, "scan grid a:b:n");
    sp->add_option("--levels", levels, "number of levels to record");
    sw->add_option("--grid", grid_text, "sweep grid a:b:n");
    sw->add_option("--axis", axis_name, "sweep axis name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = load_config(config_path);
        apply_env_overrides(cfg);
        if (workers > 0) {
#ifdef _OPENMP
            omp_set_num_threads(workers);
#endif
            cfg.parallel = workers > 1;
        }
        if (sp->parsed()) {
            if (!grid_text.empty()) cfg.scan = parse_grid(grid_text);
            if (levels > 0) cfg.scan_levels_count = levels;
            return cmd_spectrum(cfg, out_path.empty() ? "spectrum.csv" : out_path);
        }
        if (dy->parsed())
            return cmd_dynamics(cfg, out_path.empty() ? "dynamics.csv" : out_path);
        if (co->parsed())
            return cmd_correlation(cfg,
                                   out_path.empty() ? "correlation.csv" : out_path);
        if (sw->parsed()) {
            if (!axis_name.empty()) apply_assignment(cfg, "sweep", "axis", axis_name);
            if (!grid_text.empty()) cfg.sweep_grid = parse_grid(grid_text);
            return cmd_sweep(cfg, out_path.empty() ? "sweep.csv" : out_path,
                             workers);
        }
        return cmd_validate(cfg, out_path.empty() ? "validate.csv" : out_path);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const InvariantError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 3;
    } catch (const CrossingError& e) {
        std::fprintf(stderr, "crossing location failed: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
