#include "cascade/source_cavity.hpp"

#include <cmath>

namespace cascade {

SourceModel build_source_model(const Composite& comp, double kappa_s,
                               double omega_in) {
    if (kappa_s <= 0)
        throw std::invalid_argument("build_source_model: kappa_s must be positive");
    const int n = comp.dim;
    SourceModel sm;
    sm.dim = 2 * n;
    Mat Is = Mat::Identity(2, 2), In = Mat::Identity(n, n);
    Mat as = annihilation(2);
    Mat As = kron(as, In);
    Mat A1 = kron(Is, comp.A1), A2 = kron(Is, comp.A2);

    const CascadeParams& c = comp.c;
    Mat H = kron(Is, comp.H) + omega_in * (As.adjoint() * As)
          + cxd(0, 0.5) * std::sqrt(kappa_s * c.kappa1)
                * (As.adjoint() * A1 - A1.adjoint() * As)
          + cxd(0, 0.5) * std::sqrt(c.G * kappa_s * c.kappa2)
                * (As.adjoint() * A2 - A2.adjoint() * As);
    if (!is_hermitian(H))
        throw std::runtime_error("build_source_model: Hermiticity breach");
    H = hermitize(H);

    sm.model.D = H.diagonal().real();
    sm.model.Hc = H - Mat(sm.model.D.cast<cxd>().asDiagonal());
    sm.model.channels.push_back(std::sqrt(kappa_s) * As + std::sqrt(c.kappa1) * A1
                                + std::sqrt(c.G * c.kappa2) * A2);
    if (c.G < 1.0)
        sm.model.channels.push_back(std::sqrt(c.kappa2 * (1.0 - c.G)) * A2);
    if (c.gamma1 > 0) sm.model.channels.push_back(std::sqrt(c.gamma1) * kron(Is, comp.S1));
    if (c.gamma2 > 0) sm.model.channels.push_back(std::sqrt(c.gamma2) * kron(Is, comp.S2));

    sm.O1 = kron(Is, comp.O1);
    sm.O2 = kron(Is, comp.O2);
    sm.OC = kron(Is, comp.OC);
    sm.Ns = As.adjoint() * As;
    return sm;
}

void run_source_model(const SourceModel& sm, double t_end, double dt,
                      Frame frame, const std::vector<double>& sample_ts,
                      const std::function<void(double, const Mat&)>& cb) {
    const int n = sm.dim;
    Mat K = Mat::Zero(n, n);
    for (const Mat& L : sm.model.channels) K += L.adjoint() * L;
    Mat N = sm.model.Hc - cxd(0, 0.5) * K;
    const bool rot = frame == Frame::interaction;
    if (!rot) N += Mat(sm.model.D.cast<cxd>().asDiagonal());

    auto rhs = [&](double t, const Mat& r) {
        Mat Np = N;
        std::vector<Mat> Lp = sm.model.channels;
        if (rot) {
            Vec p = phases(sm.model.D, t);
            Np = phase_conjugate(N, p);
            for (auto& L : Lp) L = phase_conjugate(L, p);
        }
        Mat out = cxd(0, -1) * (Np * r - r * Np.adjoint());
        for (const Mat& L : Lp) out += L * r * L.adjoint();
        return out;
    };

    Mat rho = Mat::Zero(n, n);
    rho(sm.dim / 2, sm.dim / 2) = 1.0;  // |1>_s x |vac>
    const long nsteps = std::lround(t_end / dt);
    double t = 0.0;
    size_t si = 0;
    for (long step = 0; step <= nsteps; ++step) {
        while (si < sample_ts.size() && t >= sample_ts[si] - 0.5 * dt) {
            if (rot)
                cb(t, phase_conjugate(rho, phases(sm.model.D, t).conjugate()));
            else
                cb(t, rho);
            ++si;
        }
        if (step == nsteps) break;
        Mat k1 = rhs(t, rho);
        Mat k2 = rhs(t + 0.5 * dt, rho + 0.5 * dt * k1);
        Mat k3 = rhs(t + 0.5 * dt, rho + 0.5 * dt * k2);
        Mat k4 = rhs(t + dt, rho + dt * k3);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = (step + 1) * dt;
    }
}

}  // namespace cascade
