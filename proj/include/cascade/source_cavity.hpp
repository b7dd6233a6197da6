#pragma once

#include "cascade/fock_hierarchy.hpp"

namespace cascade {

// Cross-check model: the single-photon input is produced by an upstream
// two-level source cavity that starts excited and decays at kappa_s, coupled
// unidirectionally into the same cascade. Equivalent to driving the
// hierarchy with xi(t) = sqrt(kappa_s) exp(-kappa_s t/2 - i omega_in t).
struct SourceModel {
    LindbladModel model;  // dimension 2 * comp.dim, ordering (source, system)
    Mat O1, O2, OC;       // lifted qubit observables
    Mat Ns;               // source photon number
    int dim = 0;
};

SourceModel build_source_model(const Composite& comp, double kappa_s,
                               double omega_in);

// Plain Lindblad evolution from |1_source> x |vac>, fixed-step RK4 with its
// own right-hand side (deliberately not the hierarchy integrator).
void run_source_model(const SourceModel& sm, double t_end, double dt,
                      Frame frame, const std::vector<double>& sample_ts,
                      const std::function<void(double, const Mat&)>& cb);

}  // namespace cascade
