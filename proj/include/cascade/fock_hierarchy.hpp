#pragma once

#include <functional>

#include "cascade/cascade_composite.hpp"
#include "cascade/photon_pulse.hpp"

namespace cascade {

// Density-operator hierarchy for a single-photon input: components rho_ab
// with a,b in {0,1} photons remaining in the input field. rho11 is the
// physical state; rho01/rho10 carry the field-system coherences and rho00
// the vacuum branch feeding them.
struct HierarchyState {
    Mat r00, r01, r10, r11;
};

enum class Frame { interaction, schrodinger };

struct IntegratorOptions {
    Frame frame = Frame::interaction;
    double dt = -1.0;       // <= 0 selects the frame-appropriate default
    int resym_every = 1000; // steps between Hermiticity restorations
    bool parallel = false;  // OpenMP over the four components
};

struct InvariantReport {
    double trace_dev = 0.0;    // max |tr rho_aa - 1|
    double herm_dev = 0.0;     // max Hermiticity defect of rho00, rho11
    double adjoint_dev = 0.0;  // max |rho10 - rho01^dag|
    double min_eig = 0.0;      // most negative eigenvalue seen (0 if none)
    void absorb(const InvariantReport& o);
};

struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Contract bounds: traces within 1e-8, Hermiticity/adjoint pairing within
// 1e-10, rho11 min eigenvalue >= -1e-6. Throws InvariantError with the
// sample time and the violated bound.
void enforce_invariants(const InvariantReport& r, double t);

class HierarchyIntegrator {
public:
    // pulse_timescale feeds the automatic step choice when opt.dt <= 0.
    HierarchyIntegrator(LindbladModel model, std::function<cxd(double)> xi,
                        IntegratorOptions opt, double pulse_timescale = 1000.0);

    using Sampler = std::function<void(double, const HierarchyState&)>;

    // Fixed-step RK4 from t_start; `sample_ts` must be ascending. The sampler
    // receives lab-frame states. `init` is given in the lab frame. Returns
    // the largest re-symmetrization correction applied (must stay < 1e-9).
    double run(const HierarchyState& init, double t_start, double t_end,
               const std::vector<double>& sample_ts, const Sampler& cb) const;

    // Vacuum start at t = 0.
    double run(double t_end, const std::vector<double>& sample_ts,
               const Sampler& cb) const;

    static HierarchyState vacuum_state(int dim);
    static InvariantReport check_invariants(const HierarchyState& lab_frame);

    double dt() const { return dt_; }
    // Default step: the interaction frame only has to resolve rates ~kappa
    // and the pulse envelope; the lab frame must track the fastest phases.
    static double auto_dt(Frame f, const LindbladModel& m, double timescale);

private:
    LindbladModel m_;
    std::function<cxd(double)> xi_;
    IntegratorOptions opt_;
    double dt_;
    Mat N_;  // Hc (+ diag in lab frame) - (i/2) sum L'L
    double omega_span_ = 0.0;

    void rhs(double t, const HierarchyState& st, HierarchyState& out) const;
};

}  // namespace cascade
