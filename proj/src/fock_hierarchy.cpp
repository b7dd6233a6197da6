#include "cascade/fock_hierarchy.hpp"

#include <cmath>

namespace cascade {

void InvariantReport::absorb(const InvariantReport& o) {
    trace_dev = std::max(trace_dev, o.trace_dev);
    herm_dev = std::max(herm_dev, o.herm_dev);
    adjoint_dev = std::max(adjoint_dev, o.adjoint_dev);
    min_eig = std::min(min_eig, o.min_eig);
}

void enforce_invariants(const InvariantReport& r, double t) {
    auto fail = [t](const char* what, double v) {
        throw InvariantError("invariant breach at t = " + std::to_string(t)
                             + ": " + what + " = " + std::to_string(v));
    };
    if (r.trace_dev > 1e-8) fail("trace deviation", r.trace_dev);
    if (r.herm_dev > 1e-10) fail("Hermiticity defect", r.herm_dev);
    if (r.adjoint_dev > 1e-10) fail("rho10 - rho01^dag defect", r.adjoint_dev);
    if (r.min_eig < -1e-6) fail("negative eigenvalue", r.min_eig);
}

HierarchyIntegrator::HierarchyIntegrator(LindbladModel model,
                                         std::function<cxd(double)> xi,
                                         IntegratorOptions opt,
                                         double pulse_timescale)
    : m_(std::move(model)), xi_(std::move(xi)), opt_(opt) {
    const int n = int(m_.D.size());
    Mat K = Mat::Zero(n, n);
    for (const Mat& L : m_.channels) K += L.adjoint() * L;
    N_ = m_.Hc - cxd(0, 0.5) * K;
    if (opt_.frame == Frame::schrodinger) N_ += Mat(m_.D.cast<cxd>().asDiagonal());
    omega_span_ = m_.D.maxCoeff() - m_.D.minCoeff();
    dt_ = opt_.dt > 0 ? opt_.dt : auto_dt(opt_.frame, m_, pulse_timescale);
}

double HierarchyIntegrator::auto_dt(Frame f, const LindbladModel& m,
                                    double timescale) {
    double span = m.D.maxCoeff() - m.D.minCoeff();
    if (f == Frame::interaction) return std::min(0.2, timescale / 1000.0);
    return std::min(0.02 / std::max(span, 1e-12), timescale / 2000.0);
}

HierarchyState HierarchyIntegrator::vacuum_state(int dim) {
    HierarchyState st;
    st.r00 = Mat::Zero(dim, dim);
    st.r00(0, 0) = 1.0;
    st.r11 = st.r00;
    st.r01 = Mat::Zero(dim, dim);
    st.r10 = Mat::Zero(dim, dim);
    return st;
}

InvariantReport HierarchyIntegrator::check_invariants(const HierarchyState& s) {
    InvariantReport r;
    r.trace_dev = std::max(std::abs(s.r00.trace().real() - 1.0),
                           std::abs(s.r11.trace().real() - 1.0));
    r.trace_dev = std::max(r.trace_dev, std::abs(s.r00.trace().imag()));
    r.trace_dev = std::max(r.trace_dev, std::abs(s.r11.trace().imag()));
    r.trace_dev = std::max(r.trace_dev, std::abs(s.r01.trace()));
    r.trace_dev = std::max(r.trace_dev, std::abs(s.r10.trace()));
    r.herm_dev = std::max(herm_deviation(s.r00), herm_deviation(s.r11));
    r.adjoint_dev = (s.r10 - s.r01.adjoint()).cwiseAbs().maxCoeff();
    r.min_eig = std::min(0.0, std::min(min_eigenvalue(s.r00), min_eigenvalue(s.r11)));
    return r;
}

namespace {

inline Mat lindblad_apply(const Mat& Np, const std::vector<Mat>& Lp, const Mat& r) {
    Mat out = cxd(0, -1) * (Np * r - r * Np.adjoint());
    for (const Mat& L : Lp) out += L * r * L.adjoint();
    return out;
}

}  // namespace

void HierarchyIntegrator::rhs(double t, const HierarchyState& st,
                              HierarchyState& out) const {
    const bool rot = opt_.frame == Frame::interaction;
    Mat Np;
    std::vector<Mat> Lp(m_.channels.size());
    if (rot) {
        Vec p = phases(m_.D, t);
        Np = phase_conjugate(N_, p);
        for (size_t k = 0; k < m_.channels.size(); ++k)
            Lp[k] = phase_conjugate(m_.channels[k], p);
    } else {
        Np = N_;
        Lp = m_.channels;
    }
    const Mat& L0 = Lp[0];
    const cxd x = xi_(t);
    const cxd xb = std::conj(x);

    const Mat* in[4] = {&st.r00, &st.r01, &st.r10, &st.r11};
    Mat* dr[4] = {&out.r00, &out.r01, &out.r10, &out.r11};
#pragma omp parallel for schedule(static) if (opt_.parallel)
    for (int k = 0; k < 4; ++k) *dr[k] = lindblad_apply(Np, Lp, *in[k]);

    Mat L0d = L0.adjoint();
    out.r01 += xb * (L0 * st.r00 - st.r00 * L0);
    out.r10 += x * (st.r00 * L0d - L0d * st.r00);
    out.r11 += x * (st.r01 * L0d - L0d * st.r01) + xb * (L0 * st.r10 - st.r10 * L0);
}

namespace {

inline void axpy(HierarchyState& y, double a, const HierarchyState& x) {
    y.r00 += a * x.r00;
    y.r01 += a * x.r01;
    y.r10 += a * x.r10;
    y.r11 += a * x.r11;
}

}  // namespace

double HierarchyIntegrator::run(const HierarchyState& init, double t_start,
                                double t_end, const std::vector<double>& sample_ts,
                                const Sampler& cb) const {
    const double dt = dt_;
    const bool rot = opt_.frame == Frame::interaction;
    HierarchyState st = init;
    if (rot && t_start != 0.0) {
        Vec p = phases(m_.D, t_start);
        st.r00 = phase_conjugate(st.r00, p);
        st.r01 = phase_conjugate(st.r01, p);
        st.r10 = phase_conjugate(st.r10, p);
        st.r11 = phase_conjugate(st.r11, p);
    }
    const long nsteps = std::lround((t_end - t_start) / dt);
    double resym_max = 0.0;
    double t = t_start;
    size_t si = 0;
    HierarchyState k1 = st, k2 = st, k3 = st, k4 = st, tmp = st;

    auto emit = [&](double tcur, const HierarchyState& cur) {
        while (si < sample_ts.size() && tcur >= sample_ts[si] - 0.5 * dt) {
            if (rot) {
                Vec pb = phases(m_.D, tcur).conjugate();
                HierarchyState lab;
                lab.r00 = phase_conjugate(cur.r00, pb);
                lab.r01 = phase_conjugate(cur.r01, pb);
                lab.r10 = phase_conjugate(cur.r10, pb);
                lab.r11 = phase_conjugate(cur.r11, pb);
                cb(tcur, lab);
            } else {
                cb(tcur, cur);
            }
            ++si;
        }
    };

    for (long step = 0; step <= nsteps; ++step) {
        emit(t, st);
        if (step == nsteps) break;
        rhs(t, st, k1);
        tmp = st;
        axpy(tmp, 0.5 * dt, k1);
        rhs(t + 0.5 * dt, tmp, k2);
        tmp = st;
        axpy(tmp, 0.5 * dt, k2);
        rhs(t + 0.5 * dt, tmp, k3);
        tmp = st;
        axpy(tmp, dt, k3);
        rhs(t + dt, tmp, k4);
        axpy(st, dt / 6.0, k1);
        axpy(st, dt / 3.0, k2);
        axpy(st, dt / 3.0, k3);
        axpy(st, dt / 6.0, k4);
        t = t_start + (step + 1) * dt;
        if (opt_.resym_every > 0 && (step + 1) % opt_.resym_every == 0) {
            Mat h00 = hermitize(st.r00), h11 = hermitize(st.r11);
            Mat h01 = 0.5 * (st.r01 + st.r10.adjoint());
            double delta = (st.r00 - h00).cwiseAbs().maxCoeff();
            delta = std::max(delta, (st.r11 - h11).cwiseAbs().maxCoeff());
            delta = std::max(delta, (st.r01 - h01).cwiseAbs().maxCoeff());
            resym_max = std::max(resym_max, delta);
            st.r00 = std::move(h00);
            st.r11 = std::move(h11);
            st.r01 = std::move(h01);
            st.r10 = st.r01.adjoint();
        }
    }
    return resym_max;
}

double HierarchyIntegrator::run(double t_end, const std::vector<double>& sample_ts,
                                const Sampler& cb) const {
    return run(vacuum_state(int(m_.D.size())), 0.0, t_end, sample_ts, cb);
}

}  // namespace cascade
