#pragma once

#include "cascade/cascade_composite.hpp"

namespace cascade {

// Default window brackets the two-excitation resonance region; the avoided
// crossings sit near omega_c/omega_q = 1.18, well below the naive guess of 2
// because the qubit splitting is strongly renormalized at eta = 0.5.
struct ScanGrid {
    double lo = 1.05;
    double hi = 3.0;
    int n = 781;
    double at(int i) const { return n < 2 ? lo : lo + (hi - lo) * i / (n - 1); }
};

struct ScanRow {
    double omega_c;
    RVec levels;  // lowest n_levels composite eigenvalues
};

// One grid point with per-level dominant bare product tag ("gg10") and its
// squared overlap. Used by the spectrum CSV.
struct LevelInfo {
    double omega_c;
    RVec energies;
    std::vector<std::string> labels;
    RVec weights;
};

LevelInfo scan_point(SubsystemParams base, const CascadeParams& cas,
                     double omega_c, int n_levels);

// Identical subsystems at each grid omega_c (base.omega_c is overridden).
std::vector<ScanRow> scan_levels(const ScanGrid& grid, SubsystemParams base,
                                 const CascadeParams& cas, int n_levels,
                                 bool parallel);

struct Crossing {
    double omega_c = 0.0;
    double gap = 0.0;
    int lower_level = 0;  // gap is levels[lower_level+1] - levels[lower_level]
};

struct CrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Minimum of E[j+1]-E[j] inside the window, located by recursive grid
// refinement around the best interior local minimum, then a parabolic vertex
// on gap^2 (exact for a two-level avoided crossing). Throws CrossingError if
// the window contains no interior minimum.
Crossing find_avoided_crossing(const SubsystemParams& base,
                               const CascadeParams& cas, int level_j,
                               const ScanGrid& window);

// All dips of E[j+1]-E[j] that classify as avoided crossings: an interior
// local minimum whose refined gap is nonzero and at most `prominence` times
// the smaller of the flanking maxima.
std::vector<Crossing> classify_crossings(const SubsystemParams& base,
                                         const CascadeParams& cas, int level_j,
                                         const ScanGrid& window,
                                         double prominence = 0.6);

// The single-excitation (vacuum Rabi) anticrossing of one subsystem is
// adiabatic in omega_c, so its gap is evaluated at the resonance point where
// the first excited dressed level is an equal qubit/photon mixture.
struct SingleExcitationCrossing {
    double omega_c = 0.0;
    double gap = 0.0;  // subsystem E2 - E1 at the 50/50 point
};
SingleExcitationCrossing single_excitation_crossing(SubsystemParams base,
                                                    double lo = 0.2,
                                                    double hi = 1.2);

// Asymptotic level identities at large omega_c (evaluated at the given
// composite): squared overlaps of levels 3,4,5 with the product labels.
struct LabelOverlaps {
    double ee00 = 0.0;              // level 3 vs bare |e,0;e,0>
    double combo4 = 0.0, combo5 = 0.0;  // levels 4,5 vs (|2,0> -+ i |0,2>)/sqrt(2)
    double gg10_4 = 0.0, gg01_4 = 0.0;  // bare one-photon weights of level 4
    double gg10_5 = 0.0, gg01_5 = 0.0;
};
LabelOverlaps label_overlaps(const Composite& comp);

}  // namespace cascade
