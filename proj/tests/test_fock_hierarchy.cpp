#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cascade/correlations.hpp"
#include "cascade/fock_hierarchy.hpp"

using namespace cascade;

namespace {

const double kPi = 3.14159265358979323846;

// bare cavity: closed-form benchmarks exist for one-photon driving
LindbladModel cavity_model(int nf, double omega, double kappa) {
    LindbladModel m;
    m.D.resize(nf);
    for (int k = 0; k < nf; ++k) m.D[k] = omega * k;
    m.Hc = Mat::Zero(nf, nf);
    m.channels = {std::sqrt(kappa) * annihilation(nf)};
    return m;
}

Composite small_composite() {
    SubsystemParams p;
    p.omega_c = 1.2;
    p.eta = 0.5;
    p.theta = kPi / 5.0;
    p.n_fock = 6;
    p.n_keep = 3;
    Subsystem s = build_subsystem(p);
    return build_composite(s, s, CascadeParams{});
}

Pulse small_pulse(const Composite& comp) {
    PulseParams pp;
    pp.T = 300.0;
    pp.t0 = 900.0;
    pp.omega_in = midpoint_frequency(comp);
    return Pulse(pp);
}

struct Traj {
    std::vector<double> t, n1, n2, c;
    HierarchyState last;
    double resym = 0.0;
};

Traj evolve(const Composite& comp, const Pulse& pulse, double dt, double t_end,
            const std::vector<double>& ts, bool parallel = false) {
    IntegratorOptions opt;
    opt.dt = dt;
    opt.parallel = parallel;
    HierarchyIntegrator integ(comp.model(), [pulse](double t) { return pulse(t); },
                              opt, pulse.timescale());
    Traj out;
    out.resym = integ.run(t_end, ts, [&](double t, const HierarchyState& st) {
        out.t.push_back(t);
        out.n1.push_back(expectation(comp.O1, st.r11));
        out.n2.push_back(expectation(comp.O2, st.r11));
        out.c.push_back(expectation(comp.OC, st.r11));
        out.last = st;
    });
    return out;
}

std::vector<double> even_ts(double a, double b, int n) {
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = a + (b - a) * i / (n - 1);
    return ts;
}

}  // namespace

TEST_CASE("gaussian drive of a bare cavity matches the closed form") {
    const double kappa = 0.01, omega = 1.2, T = 300.0, t0 = 900.0;
    const int nf = 6;
    PulseParams pp;
    pp.T = T;
    pp.t0 = t0;
    pp.omega_in = omega;  // resonant
    Pulse pulse(pp);

    LindbladModel m = cavity_model(nf, omega, kappa);
    Mat num = annihilation(nf).adjoint() * annihilation(nf);
    IntegratorOptions opt;
    opt.dt = 0.05;
    HierarchyIntegrator integ(m, [pulse](double t) { return pulse(t); }, opt, T);

    const double mu = t0 + kappa * T * T / 4.0;
    const double pref = kappa * pulse.norm() * pulse.norm()
                      * std::exp(kappa * t0 + kappa * kappa * T * T / 8.0)
                      * kPi * T * T / 4.0;
    auto exact = [&](double t) {
        double e = std::erf((t - mu) / T) + std::erf(mu / T);
        return pref * std::exp(-kappa * t) * e * e;
    };

    double worst = 0.0, top = 0.0;
    integ.run(2400.0, even_ts(0.0, 2400.0, 49), [&](double t, const HierarchyState& st) {
        double n = expectation(num, st.r11);
        worst = std::max(worst, std::abs(n - exact(t)));
        top = std::max(top, n);
    });
    CHECK(top > 0.5);  // the pulse actually loads the cavity
    CHECK(worst / top < 1e-9);
}

TEST_CASE("exponential drive of a bare cavity matches the closed form") {
    const double kappa = 0.01, kappa_s = 0.004, omega = 1.2;
    PulseParams pp;
    pp.shape = PulseShape::exponential;
    pp.kappa_s = kappa_s;
    pp.omega_in = omega;
    Pulse pulse(pp);

    LindbladModel m = cavity_model(6, omega, kappa);
    Mat num = annihilation(6).adjoint() * annihilation(6);
    IntegratorOptions opt;
    opt.dt = 0.05;
    HierarchyIntegrator integ(m, [pulse](double t) { return pulse(t); }, opt,
                              1.0 / kappa_s);

    const double pref = 4.0 * kappa * kappa_s / ((kappa - kappa_s) * (kappa - kappa_s));
    double worst = 0.0, top = 0.0;
    integ.run(1500.0, even_ts(0.0, 1500.0, 31), [&](double t, const HierarchyState& st) {
        double n = expectation(num, st.r11);
        double d = std::exp(-0.5 * kappa_s * t) - std::exp(-0.5 * kappa * t);
        worst = std::max(worst, std::abs(n - pref * d * d));
        top = std::max(top, n);
    });
    CHECK(top > 0.4);
    CHECK(worst / top < 1e-9);
}

TEST_CASE("frozen two-node trajectory point") {
    Composite comp = small_composite();
    Traj tr = evolve(comp, small_pulse(comp), 0.05, 1200.0, {1200.0});
    REQUIRE(tr.t.size() == 1);
    CHECK(tr.t[0] == doctest::Approx(1200.0).epsilon(1e-12));
    CHECK(tr.n1[0] == doctest::Approx(2.664600227559e-01).epsilon(1e-9));
    CHECK(tr.n2[0] == doctest::Approx(1.993310568197e-02).epsilon(1e-9));
    CHECK(tr.c[0] == doctest::Approx(2.131476767911e-04).epsilon(1e-9));
    CHECK(tr.resym < 1e-9);
}

TEST_CASE("state contract holds along a driven run") {
    Composite comp = small_composite();
    Pulse pulse = small_pulse(comp);
    IntegratorOptions opt;
    opt.dt = 0.1;
    HierarchyIntegrator integ(comp.model(), [pulse](double t) { return pulse(t); },
                              opt, pulse.timescale());
    InvariantReport agg;
    integ.run(2400.0, even_ts(0.0, 2400.0, 25), [&](double t, const HierarchyState& st) {
        InvariantReport r = HierarchyIntegrator::check_invariants(st);
        CHECK_NOTHROW(enforce_invariants(r, t));
        agg.absorb(r);
    });
    CHECK(agg.trace_dev < 1e-8);
    CHECK(agg.herm_dev < 1e-10);
    CHECK(agg.adjoint_dev < 1e-10);
    CHECK(agg.min_eig > -1e-6);
}

TEST_CASE("violated bounds raise") {
    InvariantReport r;
    CHECK_NOTHROW(enforce_invariants(r, 0.0));
    r.trace_dev = 1e-7;
    CHECK_THROWS_AS(enforce_invariants(r, 1.0), InvariantError);
    r = InvariantReport{};
    r.herm_dev = 1e-9;
    CHECK_THROWS_AS(enforce_invariants(r, 1.0), InvariantError);
    r = InvariantReport{};
    r.adjoint_dev = 1e-9;
    CHECK_THROWS_AS(enforce_invariants(r, 1.0), InvariantError);
    r = InvariantReport{};
    r.min_eig = -1e-5;
    CHECK_THROWS_AS(enforce_invariants(r, 1.0), InvariantError);
}

TEST_CASE("no input leaves the ground state untouched") {
    Composite comp = small_composite();
    PulseParams pp;
    pp.shape = PulseShape::vacuum;
    Pulse vac(pp);
    Traj tr = evolve(comp, vac, 0.1, 600.0, even_ts(0.0, 600.0, 7));
    for (size_t i = 0; i < tr.t.size(); ++i) {
        CHECK(std::abs(tr.n1[i]) < 1e-12);
        CHECK(std::abs(tr.n2[i]) < 1e-12);
        CHECK(std::abs(tr.c[i]) < 1e-12);
    }
    CHECK(std::abs(tr.last.r11(0, 0) - cxd(1, 0)) < 1e-12);
    Mat off = tr.last.r11;
    off(0, 0) = 0;
    CHECK(off.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(tr.last.r01.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("both frames integrate to the same observables") {
    Composite comp = small_composite();
    Pulse pulse = small_pulse(comp);
    std::vector<double> ts = {150.0, 300.0, 450.0, 600.0};

    IntegratorOptions oi;
    oi.dt = 0.05;
    oi.frame = Frame::interaction;
    IntegratorOptions os;
    os.dt = 0.005;
    os.frame = Frame::schrodinger;

    std::vector<double> ni, ns, ci, cs;
    HierarchyIntegrator a(comp.model(), [pulse](double t) { return pulse(t); }, oi, 300.0);
    a.run(600.0, ts, [&](double, const HierarchyState& st) {
        ni.push_back(expectation(comp.O1, st.r11));
        ci.push_back(expectation(comp.OC, st.r11));
    });
    HierarchyIntegrator b(comp.model(), [pulse](double t) { return pulse(t); }, os, 300.0);
    b.run(600.0, ts, [&](double, const HierarchyState& st) {
        ns.push_back(expectation(comp.O1, st.r11));
        cs.push_back(expectation(comp.OC, st.r11));
    });
    REQUIRE(ni.size() == 4);
    REQUIRE(ns.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(ni[i] - ns[i]) < 1e-6);
        CHECK(std::abs(ci[i] - cs[i]) < 1e-6);
    }
}

TEST_CASE("halving the step barely moves the answer") {
    Composite comp = small_composite();
    Pulse pulse = small_pulse(comp);
    std::vector<double> ts = even_ts(0.0, 1200.0, 13);
    Traj coarse = evolve(comp, pulse, 0.2, 1200.0, ts);
    Traj fine = evolve(comp, pulse, 0.1, 1200.0, ts);
    double worst = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        worst = std::max(worst, std::abs(coarse.n1[i] - fine.n1[i]));
        worst = std::max(worst, std::abs(coarse.n2[i] - fine.n2[i]));
        worst = std::max(worst, std::abs(coarse.c[i] - fine.c[i]));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("threaded component update is bit-identical") {
    Composite comp = small_composite();
    Pulse pulse = small_pulse(comp);
    Traj serial = evolve(comp, pulse, 0.1, 400.0, {400.0}, false);
    Traj threaded = evolve(comp, pulse, 0.1, 400.0, {400.0}, true);
    CHECK((serial.last.r11 - threaded.last.r11).cwiseAbs().maxCoeff() == 0.0);
    CHECK((serial.last.r01 - threaded.last.r01).cwiseAbs().maxCoeff() == 0.0);
    CHECK((serial.last.r00 - threaded.last.r00).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("propagation is linear in the initial data") {
    LindbladModel m = cavity_model(4, 1.2, 0.01);
    PulseParams pp;
    pp.T = 100.0;
    pp.t0 = 300.0;
    pp.omega_in = 1.2;
    Pulse pulse(pp);
    IntegratorOptions opt;
    opt.dt = 0.05;
    opt.resym_every = 0;  // plain RK4, no projections
    HierarchyIntegrator integ(m, [pulse](double t) { return pulse(t); }, opt, 100.0);

    HierarchyState a = HierarchyIntegrator::vacuum_state(4);
    HierarchyState b = a;
    b.r00.setZero();
    b.r00(1, 1) = 1.0;
    b.r01(0, 1) = cxd(0.25, -0.1);
    b.r10 = b.r01.adjoint();
    b.r11.setZero();
    b.r11(2, 2) = 1.0;

    HierarchyState mix = a;
    mix.r00 = 0.7 * a.r00 + 0.3 * b.r00;
    mix.r01 = 0.7 * a.r01 + 0.3 * b.r01;
    mix.r10 = 0.7 * a.r10 + 0.3 * b.r10;
    mix.r11 = 0.7 * a.r11 + 0.3 * b.r11;

    auto final_state = [&](const HierarchyState& init) {
        HierarchyState out;
        integ.run(init, 0.0, 200.0, {200.0},
                  [&](double, const HierarchyState& st) { out = st; });
        return out;
    };
    HierarchyState fa = final_state(a), fb = final_state(b), fm = final_state(mix);
    CHECK((fm.r11 - 0.7 * fa.r11 - 0.3 * fb.r11).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((fm.r01 - 0.7 * fa.r01 - 0.3 * fb.r01).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((fm.r00 - 0.7 * fa.r00 - 0.3 * fb.r00).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("default step selection") {
    Composite comp = small_composite();
    LindbladModel m = comp.model();
    CHECK(HierarchyIntegrator::auto_dt(Frame::interaction, m, 1500.0) == 0.2);
    CHECK(HierarchyIntegrator::auto_dt(Frame::interaction, m, 100.0) == doctest::Approx(0.1));
    double span = m.D.maxCoeff() - m.D.minCoeff();
    CHECK(HierarchyIntegrator::auto_dt(Frame::schrodinger, m, 1500.0)
          == doctest::Approx(std::min(0.02 / span, 0.75)));
    IntegratorOptions opt;  // dt unset
    Pulse pulse = small_pulse(comp);
    HierarchyIntegrator integ(m, [pulse](double t) { return pulse(t); }, opt, 300.0);
    CHECK(integ.dt() == 0.2);
}
