// Serial vs OpenMP timings for the two data-parallel kernels: the spectrum
// grid and the four-component hierarchy right-hand side. Results must be
// bitwise identical in both modes.
#include <chrono>
#include <cstdio>

#include "cascade/drivers.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cascade;
using clk = std::chrono::steady_clock;

static double secs(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main() {
#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: compiled out\n");
#endif

    SubsystemParams sp;
    sp.theta = M_PI / 5.0;
    CascadeParams cas;

    {
        ScanGrid grid{1.05, 3.0, 121};
        auto t0 = clk::now();
        auto serial = scan_levels(grid, sp, cas, 8, false);
        auto t1 = clk::now();
        auto par = scan_levels(grid, sp, cas, 8, true);
        auto t2 = clk::now();
        double dev = 0.0;
        for (int i = 0; i < grid.n; ++i)
            dev = std::max(dev,
                           (serial[i].levels - par[i].levels).cwiseAbs().maxCoeff());
        std::printf("spectrum grid (%d points): serial %.3fs  parallel %.3fs  "
                    "speedup %.2fx  max dev %.1e\n",
                    grid.n, secs(t0, t1), secs(t1, t2),
                    secs(t0, t1) / secs(t1, t2), dev);
    }

    {
        sp.omega_c = 1.18243;
        Subsystem s = build_subsystem(sp);
        Composite comp = build_composite(s, s, cas);
        PulseParams pp;
        pp.omega_in = midpoint_frequency(comp);
        Pulse pulse(pp);
        IntegratorOptions opt;
        opt.dt = 0.2;
        std::vector<double> ts = linspace(0.0, 400.0, 3);

        opt.parallel = false;
        auto t0 = clk::now();
        ObservableSeries a = run_dynamics(comp, pulse, opt, ts);
        auto t1 = clk::now();
        opt.parallel = true;
        ObservableSeries b = run_dynamics(comp, pulse, opt, ts);
        auto t2 = clk::now();
        double dev = 0.0;
        for (size_t i = 0; i < a.t.size(); ++i) {
            dev = std::max(dev, std::abs(a.n1[i] - b.n1[i]));
            dev = std::max(dev, std::abs(a.n2[i] - b.n2[i]));
            dev = std::max(dev, std::abs(a.c[i] - b.c[i]));
        }
        long steps = std::lround(400.0 / opt.dt);
        std::printf("hierarchy rhs (dim %d, %ld steps): serial %.3fs "
                    "(%.0f steps/s)  parallel %.3fs (%.0f steps/s)  "
                    "speedup %.2fx  max dev %.1e\n",
                    comp.dim, steps, secs(t0, t1), steps / secs(t0, t1),
                    secs(t1, t2), steps / secs(t1, t2),
                    secs(t0, t1) / secs(t1, t2), dev);
    }
    return 0;
}
