#include "cascade/photon_pulse.hpp"

#include <cmath>

namespace cascade {

Pulse::Pulse(PulseParams p) : p_(p) {
    if (p_.shape == PulseShape::gauss) {
        if (p_.T <= 0) throw std::invalid_argument("pulse: T must be positive");
        if (p_.t0 < 0) p_.t0 = 3.0 * p_.T;
        if (p_.t0 < 3.0 * p_.T)
            throw std::invalid_argument("pulse: t0 < 3T truncates the envelope");
        // integral of exp(-2((t-t0)/T)^2) over [0, inf)
        double full = p_.T * std::sqrt(M_PI / 2.0) * 0.5
                    * (1.0 + std::erf(std::sqrt(2.0) * p_.t0 / p_.T));
        norm_ = 1.0 / std::sqrt(full);
    } else if (p_.shape == PulseShape::exponential) {
        if (p_.kappa_s <= 0)
            throw std::invalid_argument("pulse: kappa_s must be positive");
        norm_ = std::sqrt(p_.kappa_s);
    } else {
        norm_ = 0.0;
    }
}

cxd Pulse::operator()(double t) const {
    if (t < 0) return 0.0;
    return envelope(t) * std::polar(1.0, -p_.omega_in * t);
}

double Pulse::envelope(double t) const {
    if (t < 0 || p_.shape == PulseShape::vacuum) return 0.0;
    if (p_.shape == PulseShape::gauss) {
        double u = (t - p_.t0) / p_.T;
        return norm_ * std::exp(-u * u);
    }
    return norm_ * std::exp(-0.5 * p_.kappa_s * t);
}

double Pulse::timescale() const {
    return p_.shape == PulseShape::exponential ? 1.0 / p_.kappa_s : p_.T;
}

}  // namespace cascade
