#pragma once

#include "cascade/rabi_subsystem.hpp"

namespace cascade {

// Unidirectional coupling: subsystem 1 output drives subsystem 2 through a
// channel with power gain G (G=1 lossless); gamma_j are qubit decay rates.
struct CascadeParams {
    double kappa1 = 0.004;
    double kappa2 = 0.001;
    double G = 1.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

// Generic dissipative model: H = diag(D) + Hc, jump operators `channels`.
// channels[0] is the collective cascaded output the input pulse couples to.
struct LindbladModel {
    RVec D;
    Mat Hc;
    std::vector<Mat> channels;
};

struct Composite {
    Subsystem sub1, sub2;
    CascadeParams c;
    int dim = 0;
    RVec D;               // diagonal of H: sums of dressed subsystem energies
    Mat Hc;               // cascade coupling, zero diagonal
    Mat H;                // diag(D) + Hc
    std::vector<Mat> channels;
    Mat A1, A2, S1, S2;   // lifted to the product space
    Mat O1, O2, OC;       // S1'S1, S2'S2 and their product
    RVec evals;           // eigenvalues of H, ascending

    LindbladModel model() const { return {D, Hc, channels}; }
};

Composite build_composite(const Subsystem& s1, const Subsystem& s2,
                          const CascadeParams& c);

// Pulse carrier matched to the two-excitation manifold: (w4 + w5 - 2 w0)/2.
double midpoint_frequency(const Composite& comp);

}  // namespace cascade
