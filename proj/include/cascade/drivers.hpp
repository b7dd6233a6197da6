#pragma once

#include <optional>
#include <string>

#include "cascade/correlations.hpp"
#include "cascade/run_config.hpp"
#include "cascade/source_cavity.hpp"

namespace cascade {

// A config resolved into a runnable model: omega_c located at the 4-5
// crossing when unset, carrier at the two-excitation manifold midpoint.
struct Workspace {
    RunConfig cfg;
    Composite comp;
    Pulse pulse;
    std::optional<Crossing> crossing;  // present when omega_c was located
};

Workspace make_workspace(const RunConfig& cfg);

struct ObservableSeries {
    std::vector<double> t;
    std::vector<double> n1, n2, c, envelope;
    InvariantReport invariants;
    double resym_norm = 0.0;
    std::vector<Mat> rho11;  // retained when keep_rho11
};

// Forward hierarchy run sampled at `sample_ts`; checks the state contract at
// every sample (throws InvariantError on breach) unless enforce is false.
ObservableSeries run_dynamics(const Composite& comp, const Pulse& pulse,
                              const IntegratorOptions& opt,
                              const std::vector<double>& sample_ts,
                              bool keep_rho11 = false, bool enforce = true);

// Delayed correlation C(t = s + tau_d) from one adjoint propagation
// contracted against the retained rho11 samples of a forward run.
std::vector<double> delayed_C_series(const Composite& comp,
                                     const ObservableSeries& fwd, double tau_d,
                                     double dt, Frame frame);

double resolve_dt(const IntegratorOptions& opt, const Composite& comp,
                  const Pulse& pulse);

std::vector<double> linspace(double a, double b, int n);

struct Peak {
    double value = 0.0;
    double time = 0.0;
};
Peak peak(const std::vector<double>& t, const std::vector<double>& y);

// Ordinary least squares y ~ intercept + slope * x.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r2 = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// CLI entry points. Return the process exit code (0 success; cmd_validate
// returns 1 when the deviation gate fails). Config/crossing/invariant
// errors propagate as exceptions.
int cmd_spectrum(const RunConfig& cfg, const std::string& out);
int cmd_dynamics(const RunConfig& cfg, const std::string& out);
int cmd_correlation(const RunConfig& cfg, const std::string& out);
int cmd_sweep(RunConfig cfg, const std::string& out, int workers);
int cmd_validate(const RunConfig& cfg, const std::string& out);

}  // namespace cascade
