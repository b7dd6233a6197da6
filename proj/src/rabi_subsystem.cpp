#include "cascade/rabi_subsystem.hpp"

#include <cmath>

namespace cascade {

Mat subsystem_hamiltonian(const SubsystemParams& p) {
    if (p.n_fock < 2)
        throw std::invalid_argument("subsystem_hamiltonian: n_fock must be at least 2");
    if (p.omega_c <= 0.0 || p.omega_q <= 0.0)
        throw std::invalid_argument("subsystem_hamiltonian: frequencies must be positive");
    if (p.eta < 0.0)
        throw std::invalid_argument("subsystem_hamiltonian: eta must be nonnegative");
    if (p.theta < 0.0 || p.theta >= M_PI / 2.0)
        throw std::invalid_argument("subsystem_hamiltonian: theta must lie in [0, pi/2)");
    const int nf = p.n_fock;
    Mat a = annihilation(nf);
    Mat X = a + a.adjoint();

    // cos(2 eta X) and sin(2 eta X) through the eigendecomposition of X.
    Eigen::SelfAdjointEigenSolver<Mat> es(X);
    const RVec& xw = es.eigenvalues();
    const Mat& xv = es.eigenvectors();
    RVec cw(nf), sw(nf);
    for (int k = 0; k < nf; ++k) {
        cw[k] = std::cos(2.0 * p.eta * xw[k]);
        sw[k] = std::sin(2.0 * p.eta * xw[k]);
    }
    Mat cos2 = xv * cw.asDiagonal() * xv.adjoint();
    Mat sin2 = xv * sw.asDiagonal() * xv.adjoint();
    Mat sinsq = 0.5 * (Mat::Identity(nf, nf) - cos2);

    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    Mat nph = Mat::Zero(nf, nf);
    for (int k = 0; k < nf; ++k) nph(k, k) = k;

    Mat H = p.omega_c * kron(Mat::Identity(2, 2), nph)
          + (p.omega_q / 2.0)
                * (kron(pauli_z(), st * st * Mat::Identity(nf, nf) + ct * ct * cos2)
                   + kron(pauli_y(), ct * sin2)
                   + kron(pauli_x(), std::sin(2.0 * p.theta) * sinsq));
    if (!is_hermitian(H))
        throw std::runtime_error("subsystem_hamiltonian: Hermiticity breach");
    return hermitize(H);
}

ConvergenceReport convergence_report(SubsystemParams p,
                                     const std::vector<int>& n_fock_list) {
    if (n_fock_list.empty())
        throw std::invalid_argument("convergence_report: empty truncation list");
    for (size_t i = 1; i < n_fock_list.size(); ++i)
        if (n_fock_list[i] <= n_fock_list[i - 1])
            throw std::invalid_argument("convergence_report: truncations must ascend");
    ConvergenceReport rep;
    for (int nf : n_fock_list) {
        p.n_fock = nf;
        Subsystem s = build_subsystem(p);
        ConvergenceRow row;
        row.n_fock = nf;
        row.energies = s.energies;
        row.a_norm = s.A.norm();
        row.s_norm = s.S.norm();
        row.shift = rep.rows.empty()
                        ? 0.0
                        : (s.energies - rep.rows.back().energies).cwiseAbs().maxCoeff();
        rep.rows.push_back(std::move(row));
    }
    rep.converged = rep.rows.size() < 2 || rep.rows.back().shift <= 1e-6 * p.omega_q;
    return rep;
}

Subsystem build_subsystem(const SubsystemParams& p) {
    if (p.n_keep < 2 || p.n_keep > 2 * p.n_fock)
        throw std::invalid_argument("build_subsystem: n_keep out of range");
    Subsystem s;
    s.p = p;
    Mat H = subsystem_hamiltonian(p);
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    s.energies_full = es.eigenvalues();
    Mat V = es.eigenvectors();
    fix_phases(V);
    s.U = V.leftCols(p.n_keep);
    s.energies = s.energies_full.head(p.n_keep);

    const int nf = p.n_fock;
    Mat a = annihilation(nf);
    Mat Xfull = kron(Mat::Identity(2, 2), a + a.adjoint());
    Mat qop = std::cos(p.theta) * pauli_x() + std::sin(p.theta) * pauli_z();
    Mat Sfull = kron(qop, Mat::Identity(nf, nf));
    s.A = strict_upper(s.U.adjoint() * Xfull * s.U);
    s.S = strict_upper(s.U.adjoint() * Sfull * s.U);
    return s;
}

Vec bare_overlaps(const Subsystem& s, int qubit, int photons) {
    // component k is <q,m|k>
    return s.U.row(qubit * s.p.n_fock + photons).transpose();
}

}  // namespace cascade
