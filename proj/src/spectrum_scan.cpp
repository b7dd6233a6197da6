#include "cascade/spectrum_scan.hpp"

#include <algorithm>
#include <cmath>

namespace cascade {

namespace {

RVec levels_at(double omega_c, SubsystemParams base, const CascadeParams& cas,
               int n_levels) {
    base.omega_c = omega_c;
    Subsystem s = build_subsystem(base);
    Composite comp = build_composite(s, s, cas);
    return comp.evals.head(n_levels);
}

double gap_at(double omega_c, const SubsystemParams& base,
              const CascadeParams& cas, int j) {
    RVec w = levels_at(omega_c, base, cas, j + 2);
    return w[j + 1] - w[j];
}

std::vector<int> interior_minima(const std::vector<double>& y) {
    std::vector<int> out;
    for (int i = 1; i + 1 < int(y.size()); ++i)
        if (y[i] <= y[i - 1] && y[i] <= y[i + 1]) out.push_back(i);
    return out;
}

// Parabola through (x, gap^2) at i-1, i, i+1. gap^2 is smooth through an
// avoided crossing, so the vertex gives both location and minimum gap.
Crossing parabolic_vertex(const std::vector<double>& xs,
                          const std::vector<double>& gaps, int i, int j) {
    double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
    double y0 = gaps[i - 1] * gaps[i - 1], y1 = gaps[i] * gaps[i],
           y2 = gaps[i + 1] * gaps[i + 1];
    double d0 = (y0 - y1) / (x0 - x1), d1 = (y2 - y1) / (x2 - x1);
    double a = (d1 - d0) / (x2 - x0);
    Crossing c;
    c.lower_level = j;
    if (a <= 0) {
        c.omega_c = x1;
        c.gap = gaps[i];
        return c;
    }
    double b = d1 - a * (x2 - x1);
    double xv = x1 - b / (2 * a);
    double yv = y1 - b * b / (4 * a);
    c.omega_c = xv;
    c.gap = std::sqrt(std::max(yv, 0.0));
    return c;
}

}  // namespace

std::vector<ScanRow> scan_levels(const ScanGrid& grid, SubsystemParams base,
                                 const CascadeParams& cas, int n_levels,
                                 bool parallel) {
    std::vector<ScanRow> rows(grid.n);
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < grid.n; ++i) {
        rows[i].omega_c = grid.at(i);
        rows[i].levels = levels_at(rows[i].omega_c, base, cas, n_levels);
    }
    return rows;
}

LevelInfo scan_point(SubsystemParams base, const CascadeParams& cas,
                     double omega_c, int n_levels) {
    base.omega_c = omega_c;
    Subsystem s = build_subsystem(base);
    Composite comp = build_composite(s, s, cas);
    Eigen::SelfAdjointEigenSolver<Mat> es(comp.H);
    const int nf = base.n_fock, nk = base.n_keep;

    LevelInfo out;
    out.omega_c = omega_c;
    out.energies = comp.evals.head(n_levels);
    out.weights.resize(n_levels);
    out.labels.resize(n_levels);
    for (int k = 0; k < n_levels; ++k) {
        Vec psi = es.eigenvectors().col(k);
        Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
            P(psi.data(), nk, nk);
        // amplitudes over the bare product basis (q1 m1, q2 m2)
        Mat B = s.U * P * s.U.transpose();
        int a = 0, b = 0;
        B.cwiseAbs2().maxCoeff(&a, &b);
        int q1 = a / nf, m1 = a % nf, q2 = b / nf, m2 = b % nf;
        std::string tag{"ge"[q1], "ge"[q2]};
        if (m1 < 10 && m2 < 10)
            tag += std::to_string(m1) + std::to_string(m2);
        else
            tag += "(" + std::to_string(m1) + "," + std::to_string(m2) + ")";
        out.labels[k] = tag;
        out.weights[k] = B.cwiseAbs2()(a, b);
    }
    return out;
}

Crossing find_avoided_crossing(const SubsystemParams& base,
                               const CascadeParams& cas, int level_j,
                               const ScanGrid& window) {
    double lo = window.lo, hi = window.hi;
    int n = std::max(window.n, 9);
    int best = -1;
    std::vector<double> xs, gaps;
    for (int pass = 0; pass < 40; ++pass) {
        xs.resize(n);
        gaps.resize(n);
        for (int i = 0; i < n; ++i) {
            xs[i] = lo + (hi - lo) * i / (n - 1);
            gaps[i] = gap_at(xs[i], base, cas, level_j);
        }
        auto mins = interior_minima(gaps);
        if (mins.empty())
            throw CrossingError("find_avoided_crossing: no interior gap minimum");
        best = mins[0];
        for (int m : mins)
            if (gaps[m] < gaps[best]) best = m;
        double h = (hi - lo) / (n - 1);
        if (h < 2e-7) break;
        lo = xs[best] - h;
        hi = xs[best] + h;
        n = 11;
    }
    return parabolic_vertex(xs, gaps, best, level_j);
}

std::vector<Crossing> classify_crossings(const SubsystemParams& base,
                                         const CascadeParams& cas, int level_j,
                                         const ScanGrid& window,
                                         double prominence) {
    std::vector<double> xs(window.n), gaps(window.n);
    for (int i = 0; i < window.n; ++i) {
        xs[i] = window.at(i);
        gaps[i] = gap_at(xs[i], base, cas, level_j);
    }
    auto mins = interior_minima(gaps);
    std::vector<Crossing> out;
    for (int m : mins) {
        // flanking maxima out to the window edges
        double left = gaps[m], right = gaps[m];
        for (int i = m; i >= 0; --i) left = std::max(left, gaps[i]);
        for (int i = m; i < window.n; ++i) right = std::max(right, gaps[i]);
        if (gaps[m] > prominence * std::min(left, right)) continue;
        double h = (window.hi - window.lo) / (window.n - 1);
        ScanGrid local{xs[m] - h, xs[m] + h, 11};
        Crossing c = find_avoided_crossing(base, cas, level_j, local);
        if (c.gap > 1e-8) out.push_back(c);
    }
    return out;
}

SingleExcitationCrossing single_excitation_crossing(SubsystemParams base,
                                                    double lo, double hi) {
    auto qubit_weight = [&base](double wc) {
        base.omega_c = wc;
        Subsystem s = build_subsystem(base);
        // squared |e,0> amplitude of dressed level 1
        return std::norm(s.U(base.n_fock, 1));
    };
    double flo = qubit_weight(lo) - 0.5;
    double fhi = qubit_weight(hi) - 0.5;
    if (flo * fhi > 0)
        throw CrossingError("single_excitation_crossing: no 50/50 point in range");
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = qubit_weight(mid) - 0.5;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-10) break;
    }
    SingleExcitationCrossing r;
    r.omega_c = 0.5 * (lo + hi);
    base.omega_c = r.omega_c;
    Subsystem s = build_subsystem(base);
    r.gap = s.energies[2] - s.energies[1];
    return r;
}

LabelOverlaps label_overlaps(const Composite& comp) {
    Eigen::SelfAdjointEigenSolver<Mat> es(comp.H);
    Mat V = es.eigenvectors();
    const int n1 = comp.sub1.p.n_keep, n2 = comp.sub2.p.n_keep;

    // <b1 b2|Psi> for a bare product label
    auto bare_amp = [&](const Vec& psi, int q1, int m1, int q2, int m2) {
        Vec u1 = bare_overlaps(comp.sub1, q1, m1);
        Vec u2 = bare_overlaps(comp.sub2, q2, m2);
        cxd amp = 0;
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) amp += u1[i] * u2[j] * psi[i * n2 + j];
        return amp;
    };
    // <(|2,0> -+ i|0,2>)/sqrt2 | Psi> in the dressed product basis
    auto combo_amp = [&](const Vec& psi) {
        cxd p20 = psi[2 * n2 + 0], p02 = psi[0 * n2 + 2];
        double w_minus = std::norm((p20 + cxd(0, 1) * p02) / std::sqrt(2.0));
        double w_plus = std::norm((p20 - cxd(0, 1) * p02) / std::sqrt(2.0));
        return std::max(w_minus, w_plus);
    };

    LabelOverlaps L;
    L.ee00 = std::norm(bare_amp(V.col(3), 1, 0, 1, 0));
    L.combo4 = combo_amp(V.col(4));
    L.combo5 = combo_amp(V.col(5));
    L.gg10_4 = std::norm(bare_amp(V.col(4), 0, 1, 0, 0));
    L.gg01_4 = std::norm(bare_amp(V.col(4), 0, 0, 0, 1));
    L.gg10_5 = std::norm(bare_amp(V.col(5), 0, 1, 0, 0));
    L.gg01_5 = std::norm(bare_amp(V.col(5), 0, 0, 0, 1));
    return L;
}

}  // namespace cascade
