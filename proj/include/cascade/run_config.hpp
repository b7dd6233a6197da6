#pragma once

#include <map>
#include <optional>
#include <string>

#include "cascade/fock_hierarchy.hpp"
#include "cascade/spectrum_scan.hpp"

namespace cascade {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full run description. "auto" fields resolve against the located
// two-excitation crossing (omega_c, omega_in) or the pulse length (t0).
struct RunConfig {
    SubsystemParams subsystem;
    std::optional<double> omega_c;   // empty: locate the 4-5 crossing
    CascadeParams cascade;

    PulseShape pulse_shape = PulseShape::gauss;
    double pulse_T = 1500.0;
    std::optional<double> pulse_t0;        // empty: 3T
    std::optional<double> pulse_omega_in;  // empty: manifold midpoint
    double pulse_kappa_s = 0.0;

    Frame frame = Frame::interaction;
    std::optional<double> dt;  // empty: frame default
    int resym_every = 1000;
    bool parallel = false;

    double tau_d = 0.0;
    int corr_points = 200;
    double t_end_factor = 4.0;  // dynamics horizon t0 + factor*T

    ScanGrid scan;
    int scan_levels_count = 8;

    std::string sweep_axis = "delay";
    std::optional<ScanGrid> sweep_grid;  // reused as {lo, hi, n}
};

// INI-style file: [section] blocks of key = value, '#'/';' comments.
// Unknown sections or keys are errors. Empty path -> defaults.
RunConfig load_config(const std::string& path);
RunConfig default_config();

// CASCADE_<SECTION>_<KEY> environment variables override file values.
void apply_env_overrides(RunConfig& cfg);

// Apply one "section.key=value" assignment (shared by file/env/CLI paths).
void apply_assignment(RunConfig& cfg, const std::string& section,
                      const std::string& key, const std::string& value);

// "a:b:n" -> grid; throws ConfigError on malformed input.
ScanGrid parse_grid(const std::string& text);

IntegratorOptions integrator_options(const RunConfig& cfg);

}  // namespace cascade
