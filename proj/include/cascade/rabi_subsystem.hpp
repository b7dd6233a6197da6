#pragma once

#include "cascade/operator_algebra.hpp"

namespace cascade {

// One qubit-cavity node. The qubit couples through its displacement-dressed
// transition operators; eta = g/omega_q, theta mixes the dipole components.
struct SubsystemParams {
    double omega_q = 1.0;
    double omega_c = 1.2;
    double eta = 0.5;
    double theta = 0.62831853071795865;  // pi/5, the working dipole tilt
    int n_fock = 30;
    int n_keep = 8;
};

struct Subsystem {
    SubsystemParams p;
    RVec energies;       // lowest n_keep, ascending
    RVec energies_full;  // all 2*n_fock
    Mat U;               // (2 n_fock) x n_keep eigenvectors, phase-fixed
    Mat A;               // n_keep x n_keep, strict upper part of X in the eigenbasis
    Mat S;               // same for cos(theta) sx + sin(theta) sz
};

// Full Hamiltonian in the bare product basis, ordering kron(qubit, fock).
Mat subsystem_hamiltonian(const SubsystemParams& p);

Subsystem build_subsystem(const SubsystemParams& p);

// Coefficients <bare q,m | k> for dressed level k: one column of U.
Vec bare_overlaps(const Subsystem& s, int qubit, int photons);

// Truncation certification: rebuild at each cutoff and track how the kept
// spectrum moves. A run counts as converged when the last step shifts no
// level by more than 1e-6 * omega_q.
struct ConvergenceRow {
    int n_fock;
    RVec energies;
    double a_norm;  // Frobenius norms of the dressed operators
    double s_norm;
    double shift;   // max level shift against the previous row, 0 for the first
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    bool converged;
};

ConvergenceReport convergence_report(SubsystemParams p,
                                     const std::vector<int>& n_fock_list);

}  // namespace cascade
