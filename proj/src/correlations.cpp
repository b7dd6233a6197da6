#include "cascade/correlations.hpp"

#include <cmath>

namespace cascade {

double equal_time_C(const Composite& comp, const Mat& rho11) {
    return expectation(comp.OC, rho11);
}

Mat adjoint_propagate(const LindbladModel& m, const Mat& M0, double tau,
                      double dt, Frame frame) {
    if (tau <= 0) return M0;
    const int n = int(m.D.size());
    Mat K = Mat::Zero(n, n);
    for (const Mat& L : m.channels) K += L.adjoint() * L;
    Mat N = m.Hc - cxd(0, 0.5) * K;
    if (frame == Frame::schrodinger) N += Mat(m.D.cast<cxd>().asDiagonal());
    const bool rot = frame == Frame::interaction;

    // interaction frame for observables: operators carry phases at -tau
    auto rhs = [&](double s, const Mat& M) {
        Mat Np = N;
        std::vector<Mat> Lp = m.channels;
        if (rot) {
            Vec p = phases(m.D, -s);
            Np = phase_conjugate(N, p);
            for (auto& L : Lp) L = phase_conjugate(L, p);
        }
        Mat out = cxd(0, 1) * (Np.adjoint() * M - M * Np);
        for (const Mat& L : Lp) out += L.adjoint() * M * L;
        return out;
    };

    long nsteps = std::lround(tau / dt);
    if (nsteps < 1) nsteps = 1;
    double h = tau / double(nsteps);
    Mat M = M0;
    double s = 0.0;
    for (long step = 0; step < nsteps; ++step) {
        Mat k1 = rhs(s, M);
        Mat k2 = rhs(s + 0.5 * h, M + 0.5 * h * k1);
        Mat k3 = rhs(s + 0.5 * h, M + 0.5 * h * k2);
        Mat k4 = rhs(s + h, M + h * k3);
        M += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        s += h;
    }
    if (rot) M = phase_conjugate(M, phases(m.D, tau));
    return M;
}

Mat delayed_observable(const Composite& comp, double tau_d, double dt,
                       Frame frame) {
    Mat M = adjoint_propagate(comp.model(), comp.O1, tau_d, dt, frame);
    return comp.S2.adjoint() * M * comp.S2;
}

double delayed_C_reference(const Composite& comp, std::function<cxd(double)> xi,
                           const HierarchyState& lab_state_at_s, double s,
                           double tau_d, const IntegratorOptions& opt,
                           double pulse_timescale) {
    HierarchyState lam;
    const Mat& S2 = comp.S2;
    Mat S2d = S2.adjoint();
    lam.r00 = S2 * lab_state_at_s.r00 * S2d;
    lam.r01 = S2 * lab_state_at_s.r01 * S2d;
    lam.r10 = S2 * lab_state_at_s.r10 * S2d;
    lam.r11 = S2 * lab_state_at_s.r11 * S2d;
    if (tau_d <= 0) return expectation(comp.O1, lam.r11);

    HierarchyIntegrator integ(comp.model(), std::move(xi), opt, pulse_timescale);
    double out = 0.0;
    integ.run(lam, s, s + tau_d, {s + tau_d},
              [&](double, const HierarchyState& st) {
                  out = expectation(comp.O1, st.r11);
              });
    return out;
}

}  // namespace cascade
