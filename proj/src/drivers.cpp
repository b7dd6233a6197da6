#include "cascade/drivers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>

#include "cascade/csv_io.hpp"

namespace cascade {

namespace {

const char* shape_name(PulseShape s) {
    switch (s) {
        case PulseShape::gauss: return "gauss";
        case PulseShape::exponential: return "exponential";
        default: return "vacuum";
    }
}

// Run horizon: pulse passage plus drain time, in units of the pulse scale.
double horizon(const Pulse& p, double factor) {
    const PulseParams& pp = p.params();
    if (pp.shape == PulseShape::gauss) return pp.t0 + factor * pp.T;
    if (pp.shape == PulseShape::exponential) return factor / pp.kappa_s;
    return factor * pp.T;
}

void echo_params(CsvWriter& w, const Workspace& ws) {
    const RunConfig& c = ws.cfg;
    w.kv("subsystem.omega_q", c.subsystem.omega_q);
    w.kv("subsystem.omega_c", ws.comp.sub1.p.omega_c);
    w.kv("subsystem.eta", c.subsystem.eta);
    w.kv("subsystem.theta", c.subsystem.theta);
    w.kv("subsystem.n_fock", double(c.subsystem.n_fock));
    w.kv("subsystem.n_keep", double(c.subsystem.n_keep));
    w.kv("cascade.kappa1", c.cascade.kappa1);
    w.kv("cascade.kappa2", c.cascade.kappa2);
    w.kv("cascade.gain", c.cascade.G);
    w.kv("cascade.gamma1", c.cascade.gamma1);
    w.kv("cascade.gamma2", c.cascade.gamma2);
    w.kv("pulse.shape", shape_name(ws.pulse.params().shape));
    w.kv("pulse.t", ws.pulse.params().T);
    w.kv("pulse.t0", ws.pulse.params().t0);
    w.kv("pulse.omega_in", ws.pulse.params().omega_in);
    w.kv("pulse.kappa_s", ws.pulse.params().kappa_s);
    w.kv("integrator.frame",
         c.frame == Frame::interaction ? "interaction" : "schrodinger");
    w.kv("integrator.dt", resolve_dt(integrator_options(c), ws.comp, ws.pulse));
    w.kv("integrator.resym_every", double(c.resym_every));
    if (ws.crossing) {
        w.kv("crossing.omega_c", ws.crossing->omega_c);
        w.kv("crossing.gap", ws.crossing->gap);
    }
}

double max_value(const std::vector<double>& y) {
    double m = 0.0;
    for (double v : y) m = std::max(m, v);
    return m;
}

}  // namespace

Workspace make_workspace(const RunConfig& cfg) {
    Workspace ws;
    ws.cfg = cfg;
    SubsystemParams sp = cfg.subsystem;
    if (cfg.omega_c) {
        sp.omega_c = *cfg.omega_c;
    } else {
        ws.crossing = find_avoided_crossing(sp, cfg.cascade, 4, cfg.scan);
        sp.omega_c = ws.crossing->omega_c;
    }
    Subsystem s = build_subsystem(sp);
    ws.comp = build_composite(s, s, cfg.cascade);

    PulseParams pp;
    pp.shape = cfg.pulse_shape;
    pp.T = cfg.pulse_T;
    pp.t0 = cfg.pulse_t0.value_or(-1.0);
    pp.kappa_s = cfg.pulse_kappa_s;
    pp.omega_in = cfg.pulse_omega_in ? *cfg.pulse_omega_in
                                     : midpoint_frequency(ws.comp);
    ws.pulse = Pulse(pp);
    return ws;
}

ObservableSeries run_dynamics(const Composite& comp, const Pulse& pulse,
                              const IntegratorOptions& opt,
                              const std::vector<double>& sample_ts,
                              bool keep_rho11, bool enforce) {
    ObservableSeries out;
    if (sample_ts.empty()) return out;
    HierarchyIntegrator hi(comp.model(), [pulse](double t) { return pulse(t); },
                           opt, pulse.timescale());
    out.resym_norm = hi.run(
        sample_ts.back(), sample_ts,
        [&](double t, const HierarchyState& st) {
            out.t.push_back(t);
            out.n1.push_back(expectation(comp.O1, st.r11));
            out.n2.push_back(expectation(comp.O2, st.r11));
            out.c.push_back(equal_time_C(comp, st.r11));
            out.envelope.push_back(pulse.envelope(t));
            InvariantReport r = HierarchyIntegrator::check_invariants(st);
            out.invariants.absorb(r);
            if (enforce) enforce_invariants(r, t);
            if (keep_rho11) out.rho11.push_back(st.r11);
        });
    return out;
}

std::vector<double> delayed_C_series(const Composite& comp,
                                     const ObservableSeries& fwd, double tau_d,
                                     double dt, Frame frame) {
    Mat M = delayed_observable(comp, tau_d, dt, frame);
    std::vector<double> out(fwd.rho11.size());
    for (size_t i = 0; i < fwd.rho11.size(); ++i)
        out[i] = trace_product(M, fwd.rho11[i]).real();
    return out;
}

double resolve_dt(const IntegratorOptions& opt, const Composite& comp,
                  const Pulse& pulse) {
    if (opt.dt > 0) return opt.dt;
    return HierarchyIntegrator::auto_dt(opt.frame, comp.model(),
                                        pulse.timescale());
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(std::max(n, 1));
    if (n < 2) {
        out[0] = a;
        return out;
    }
    for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
    return out;
}

Peak peak(const std::vector<double>& t, const std::vector<double>& y) {
    Peak p;
    for (size_t i = 0; i < y.size(); ++i)
        if (y[i] > p.value) {
            p.value = y[i];
            p.time = t[i];
        }
    return p;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < n; ++i) {
        double e = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += e * e;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& out) {
    const ScanGrid& g = cfg.scan;
    const int L = cfg.scan_levels_count;
    std::vector<LevelInfo> rows(g.n);
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
    for (int i = 0; i < g.n; ++i) {
        try {
            rows[i] = scan_point(cfg.subsystem, cfg.cascade, g.at(i), L);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    std::vector<Crossing> found;
    for (int j : {3, 4}) {
        auto cs = classify_crossings(cfg.subsystem, cfg.cascade, j, g);
        found.insert(found.end(), cs.begin(), cs.end());
    }

    CsvWriter w(out);
    w.kv("subsystem.omega_q", cfg.subsystem.omega_q);
    w.kv("subsystem.eta", cfg.subsystem.eta);
    w.kv("subsystem.theta", cfg.subsystem.theta);
    w.kv("subsystem.n_fock", double(cfg.subsystem.n_fock));
    w.kv("subsystem.n_keep", double(cfg.subsystem.n_keep));
    w.kv("cascade.kappa1", cfg.cascade.kappa1);
    w.kv("cascade.kappa2", cfg.cascade.kappa2);
    w.kv("cascade.gain", cfg.cascade.G);
    w.kv("scan.lo", g.lo);
    w.kv("scan.hi", g.hi);
    w.kv("scan.points", double(g.n));
    w.kv("scan.levels", double(L));
    std::vector<double> xs(g.n);
    for (int i = 0; i < g.n; ++i) xs[i] = g.at(i);
    w.kv("grid.fnv1a", grid_hash(xs));
    w.kv("crossings.count", double(found.size()));
    for (const Crossing& c : found)
        w.comment("crossing levels " + std::to_string(c.lower_level) + "-"
                  + std::to_string(c.lower_level + 1) + " omega_c = "
                  + CsvWriter::format(c.omega_c) + " gap = "
                  + CsvWriter::format(c.gap));

    std::vector<std::string> head{"omega_c"};
    for (int k = 0; k < L; ++k) head.push_back("level_" + std::to_string(k));
    for (int k = 0; k < L; ++k) head.push_back("label_" + std::to_string(k));
    for (int k = 0; k < L; ++k) head.push_back("weight_" + std::to_string(k));
    w.header(head);
    for (const LevelInfo& r : rows) {
        std::vector<std::string> cells{CsvWriter::format(r.omega_c)};
        for (int k = 0; k < L; ++k)
            cells.push_back(CsvWriter::format(r.energies[k]));
        for (int k = 0; k < L; ++k) cells.push_back(r.labels[k]);
        for (int k = 0; k < L; ++k)
            cells.push_back(CsvWriter::format(r.weights[k]));
        w.row_raw(cells);
    }
    return 0;
}

int cmd_dynamics(const RunConfig& cfg, const std::string& out) {
    Workspace ws = make_workspace(cfg);
    IntegratorOptions opt = integrator_options(cfg);
    double tend = horizon(ws.pulse, cfg.t_end_factor);
    ObservableSeries r = run_dynamics(ws.comp, ws.pulse, opt,
                                      linspace(0.0, tend, cfg.corr_points));
    CsvWriter w(out);
    echo_params(w, ws);
    w.kv("invariants.trace_dev", r.invariants.trace_dev);
    w.kv("invariants.herm_dev", r.invariants.herm_dev);
    w.kv("invariants.min_eig", r.invariants.min_eig);
    w.kv("invariants.resym_norm", r.resym_norm);
    w.header({"t", "S1dagS1", "S2dagS2", "C_equal_time", "pulse_envelope"});
    for (size_t i = 0; i < r.t.size(); ++i)
        w.row({r.t[i], r.n1[i], r.n2[i], r.c[i], r.envelope[i]});
    return 0;
}

int cmd_correlation(const RunConfig& cfg, const std::string& out) {
    if (cfg.tau_d < 0) throw ConfigError("correlation.tau_d must be >= 0");
    Workspace ws = make_workspace(cfg);
    IntegratorOptions opt = integrator_options(cfg);
    const double tau = cfg.tau_d;
    const PulseParams& pp = ws.pulse.params();
    double lo = pp.shape == PulseShape::gauss ? pp.t0 - pp.T : tau;
    double hi = horizon(ws.pulse, cfg.t_end_factor) + tau;
    std::vector<double> tgrid = linspace(lo, hi, cfg.corr_points);

    std::vector<double> svals;
    int skipped = 0;
    for (double t : tgrid) {
        if (t - tau < 0) {
            ++skipped;
            continue;
        }
        svals.push_back(t - tau);
    }
    ObservableSeries fwd = run_dynamics(ws.comp, ws.pulse, opt, svals, true);
    double dtv = resolve_dt(opt, ws.comp, ws.pulse);
    std::vector<double> cd = delayed_C_series(ws.comp, fwd, tau, dtv, opt.frame);

    CsvWriter w(out);
    echo_params(w, ws);
    w.kv("correlation.tau_d", tau);
    w.kv("correlation.grid_points", double(cfg.corr_points));
    if (skipped > 0) w.kv("correlation.skipped", double(skipped));
    w.header({"t", "C"});
    size_t j = 0;
    for (double t : tgrid) {
        if (t - tau < 0) {
            w.row({t, 0.0});
            continue;
        }
        w.row({t, cd[j]});
        ++j;
    }
    return 0;
}

int cmd_sweep(RunConfig cfg, const std::string& out, int workers) {
    const std::string axis = cfg.sweep_axis;
    IntegratorOptions opt = integrator_options(cfg);
    if (workers > 1) opt.parallel = false;  // rows carry the parallelism

    ScanGrid grid;
    std::vector<double> xs, cmax, n1max, n2max;
    std::exception_ptr err = nullptr;
    Workspace base;

    auto row_values = [&](const RunConfig& rc, double& cm, double& m1,
                          double& m2) {
        Workspace wr = make_workspace(rc);
        double tend = horizon(wr.pulse, rc.t_end_factor);
        ObservableSeries r = run_dynamics(wr.comp, wr.pulse, opt,
                                          linspace(0.0, tend, rc.corr_points));
        cm = max_value(r.c);
        m1 = max_value(r.n1);
        m2 = max_value(r.n2);
    };

    if (axis == "delay") {
        base = make_workspace(cfg);
        grid = cfg.sweep_grid.value_or(ScanGrid{0.0, 2.0, 5});
        double tend = horizon(base.pulse, cfg.t_end_factor);
        ObservableSeries fwd = run_dynamics(
            base.comp, base.pulse, opt, linspace(0.0, tend, cfg.corr_points),
            true);
        double dtv = resolve_dt(opt, base.comp, base.pulse);
        xs.resize(grid.n);
        cmax.resize(grid.n);
#pragma omp parallel for schedule(dynamic) if (workers > 1)
        for (int i = 0; i < grid.n; ++i) {
            try {
                xs[i] = grid.at(i);
                std::vector<double> cd = delayed_C_series(
                    base.comp, fwd, xs[i] * cfg.pulse_T, dtv, opt.frame);
                cmax[i] = max_value(cd);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
    } else if (axis == "gamma" || axis == "gain" || axis == "omega_c") {
        if (axis == "gamma") {
            base = make_workspace(cfg);
            grid = cfg.sweep_grid.value_or(ScanGrid{0.0, cfg.cascade.kappa1, 5});
        } else if (axis == "gain") {
            grid = cfg.sweep_grid.value_or(ScanGrid{0.2, 1.0, 5});
        } else {
            RunConfig rl = cfg;
            rl.omega_c.reset();
            base = make_workspace(rl);
            grid = cfg.sweep_grid.value_or(
                ScanGrid{base.crossing->omega_c - 10 * base.crossing->gap,
                         base.crossing->omega_c + 10 * base.crossing->gap, 11});
        }
        xs.resize(grid.n);
        cmax.resize(grid.n);
        n1max.resize(grid.n);
        n2max.resize(grid.n);
#pragma omp parallel for schedule(dynamic) if (workers > 1)
        for (int i = 0; i < grid.n; ++i) {
            try {
                xs[i] = grid.at(i);
                RunConfig rc = cfg;
                if (axis == "gamma") {
                    rc.cascade.gamma1 = rc.cascade.gamma2 = xs[i];
                    // decay does not move the spectrum; reuse the base point
                    rc.omega_c = base.comp.sub1.p.omega_c;
                    rc.pulse_omega_in = base.pulse.params().omega_in;
                } else if (axis == "gain") {
                    rc.cascade.G = xs[i];
                    rc.omega_c.reset();  // crossing shifts with G
                    rc.pulse_omega_in.reset();
                } else {
                    rc.omega_c = xs[i];
                    rc.pulse_omega_in.reset();  // midpoint at this omega_c
                }
                row_values(rc, cmax[i], n1max[i], n2max[i]);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
    } else {
        throw ConfigError("unknown sweep axis: " + axis);
    }
    if (err) std::rethrow_exception(err);

    CsvWriter w(out);
    if (base.comp.dim > 0) {
        echo_params(w, base);
    } else {
        w.kv("cascade.kappa1", cfg.cascade.kappa1);
        w.kv("cascade.kappa2", cfg.cascade.kappa2);
    }
    w.kv("sweep.axis", axis);
    w.kv("grid.fnv1a", grid_hash(xs));
    const char* name = axis == "delay" ? "d_over_cT" : axis.c_str();
    if (axis == "omega_c") {
        w.header({name, "c_max", "n1_max", "n2_max"});
        for (int i = 0; i < grid.n; ++i)
            w.row({xs[i], cmax[i], n1max[i], n2max[i]});
    } else {
        w.header({name, "c_max"});
        for (int i = 0; i < grid.n; ++i) w.row({xs[i], cmax[i]});
    }
    return 0;
}

int cmd_validate(const RunConfig& cfg, const std::string& out) {
    Workspace ws = make_workspace(cfg);
    IntegratorOptions opt = integrator_options(cfg);
    std::vector<double> kappas;
    if (cfg.pulse_kappa_s > 0) {
        kappas.push_back(cfg.pulse_kappa_s);
    } else {
        kappas.push_back(1.0 / cfg.pulse_T);
        kappas.push_back(2.0 / cfg.pulse_T);
    }

    CsvWriter w(out);
    echo_params(w, ws);

    bool all_pass = true;

    // certify the Fock truncation at the resolved working point
    SubsystemParams sp = ws.comp.sub1.p;
    std::vector<int> cuts;
    int lo = std::max(sp.n_fock / 2, (sp.n_keep + 1) / 2);
    if (lo < sp.n_fock) cuts.push_back(lo);
    cuts.push_back(sp.n_fock);
    cuts.push_back(sp.n_fock + 10);
    ConvergenceReport rep = convergence_report(sp, cuts);
    for (const auto& row : rep.rows)
        w.kv("truncation.shift.n_fock_" + std::to_string(row.n_fock), row.shift);
    w.kv("truncation.converged", rep.converged ? 1 : 0);
    all_pass = all_pass && rep.converged;
    std::printf("%s truncation n_fock=%d last_shift=%.3e\n",
                rep.converged ? "PASS" : "FAIL", sp.n_fock, rep.rows.back().shift);

    w.header({"kappa_s", "observable", "max_abs_dev", "peak_rel_dev", "pass"});
    for (double ks : kappas) {
        PulseParams pp;
        pp.shape = PulseShape::exponential;
        pp.T = cfg.pulse_T;
        pp.kappa_s = ks;
        pp.omega_in = ws.pulse.params().omega_in;
        Pulse pe(pp);
        double tend = 6.0 / ks;
        std::vector<double> ts = linspace(0.0, tend, cfg.corr_points);
        ObservableSeries h = run_dynamics(ws.comp, pe, opt, ts);

        SourceModel sm = build_source_model(ws.comp, ks, pp.omega_in);
        double dtv = resolve_dt(opt, ws.comp, pe);
        std::vector<double> sn1, sn2, sc;
        run_source_model(sm, tend, dtv, opt.frame, ts,
                         [&](double, const Mat& rho) {
                             sn1.push_back(expectation(sm.O1, rho));
                             sn2.push_back(expectation(sm.O2, rho));
                             sc.push_back(expectation(sm.OC, rho));
                         });

        const char* names[3] = {"S1dagS1", "S2dagS2", "C_equal_time"};
        const std::vector<double>* hv[3] = {&h.n1, &h.n2, &h.c};
        const std::vector<double>* sv[3] = {&sn1, &sn2, &sc};
        for (int k = 0; k < 3; ++k) {
            double dev = 0.0, pk = 0.0;
            for (size_t i = 0; i < ts.size(); ++i) {
                dev = std::max(dev, std::abs((*hv[k])[i] - (*sv[k])[i]));
                pk = std::max(pk, std::abs((*hv[k])[i]));
            }
            double rel = pk > 0 ? dev / pk : 0.0;
            bool pass = rel <= 1e-3;
            all_pass = all_pass && pass;
            w.row_raw({CsvWriter::format(ks), names[k],
                       CsvWriter::format(dev), CsvWriter::format(rel),
                       pass ? "1" : "0"});
            std::printf("%s kappa_s=%-10.6g %-12s peak_rel_dev=%.3e\n",
                        pass ? "PASS" : "FAIL", ks, names[k], rel);
        }
    }
    return all_pass ? 0 : 1;
}

}  // namespace cascade
