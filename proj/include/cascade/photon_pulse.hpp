#pragma once

#include "cascade/operator_algebra.hpp"

namespace cascade {

enum class PulseShape { gauss, exponential, vacuum };

// Single-photon temporal mode xi(t). Normalized so that the integral of
// |xi|^2 over t >= 0 is exactly 1.
//   gauss:       norm * exp(-((t-t0)/T)^2) * exp(-i omega_in t), t >= 0
//   exponential: sqrt(kappa_s) * exp(-kappa_s t / 2) * exp(-i omega_in t)
//   vacuum:      xi == 0 (no input; hierarchy components decouple)
struct PulseParams {
    PulseShape shape = PulseShape::gauss;
    double T = 1500.0;
    double t0 = -1.0;       // < 0: defaults to 3T
    double omega_in = 0.0;
    double kappa_s = 0.0;   // exponential shape only
};

class Pulse {
public:
    Pulse() : Pulse(PulseParams{}) {}
    explicit Pulse(PulseParams p);
    cxd operator()(double t) const;
    double envelope(double t) const;  // |xi(t)|
    const PulseParams& params() const { return p_; }
    double norm() const { return norm_; }
    // Characteristic duration: T for gauss, 1/kappa_s for exponential.
    double timescale() const;

private:
    PulseParams p_;
    double norm_ = 0.0;
};

}  // namespace cascade
