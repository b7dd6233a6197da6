#pragma once

#include "cascade/fock_hierarchy.hpp"

namespace cascade {

// Equal-time joint-excitation correlation on the physical component.
double equal_time_C(const Composite& comp, const Mat& rho11);

// Heisenberg-picture propagation of an observable over tau under the model's
// adjoint Lindblad generator.
Mat adjoint_propagate(const LindbladModel& m, const Mat& M0, double tau,
                      double dt, Frame frame);

// S2' M(tau_d) S2 with M(0) = S1'S1: contracting this against rho11(s) gives
// the delayed correlation C(s + tau_d) = <S2'(s) S1'S1(s+tau_d) S2(s)>.
// Valid because the sandwiched off-diagonal hierarchy components vanish
// identically (S2 annihilates the vacuum branch), so the regression
// propagation of the sandwiched state is source-free.
Mat delayed_observable(const Composite& comp, double tau_d, double dt,
                       Frame frame);

// Literal regression evaluation at a single emission time s: sandwich all
// four components with S2, integrate the hierarchy (sources at absolute
// time) over tau_d, take tr(S1'S1 rho11). Reference path for tests.
double delayed_C_reference(const Composite& comp, std::function<cxd(double)> xi,
                           const HierarchyState& lab_state_at_s, double s,
                           double tau_d, const IntegratorOptions& opt,
                           double pulse_timescale);

}  // namespace cascade
