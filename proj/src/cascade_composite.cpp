#include "cascade/cascade_composite.hpp"

#include <cmath>

namespace cascade {

Composite build_composite(const Subsystem& s1, const Subsystem& s2,
                          const CascadeParams& c) {
    if (c.G < 0.0 || c.G > 1.0)
        throw std::invalid_argument("build_composite: G must be in [0, 1]");
    if (c.kappa1 <= 0 || c.kappa2 <= 0)
        throw std::invalid_argument("build_composite: cavity decay rates must be positive");
    if (c.gamma1 < 0 || c.gamma2 < 0)
        throw std::invalid_argument("build_composite: negative rate");

    Composite comp;
    comp.sub1 = s1;
    comp.sub2 = s2;
    comp.c = c;
    const int n1 = s1.p.n_keep, n2 = s2.p.n_keep;
    comp.dim = n1 * n2;

    Mat I1 = Mat::Identity(n1, n1), I2 = Mat::Identity(n2, n2);
    comp.A1 = kron(s1.A, I2);
    comp.A2 = kron(I1, s2.A);
    comp.S1 = kron(s1.S, I2);
    comp.S2 = kron(I1, s2.S);

    comp.D.resize(comp.dim);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            comp.D[i * n2 + j] = s1.energies[i] + s2.energies[j];

    const double mu = 0.5 * std::sqrt(c.G * c.kappa1 * c.kappa2);
    comp.Hc = cxd(0, 1) * mu
            * (comp.A1.adjoint() * comp.A2 - comp.A2.adjoint() * comp.A1);
    if (!is_hermitian(comp.Hc))
        throw std::runtime_error("build_composite: coupling Hermiticity breach");
    comp.Hc = hermitize(comp.Hc);
    comp.H = Mat(comp.D.cast<cxd>().asDiagonal()) + comp.Hc;

    comp.channels.push_back(std::sqrt(c.kappa1) * comp.A1
                            + std::sqrt(c.G * c.kappa2) * comp.A2);
    if (c.G < 1.0)
        comp.channels.push_back(std::sqrt(c.kappa2 * (1.0 - c.G)) * comp.A2);
    if (c.gamma1 > 0.0) comp.channels.push_back(std::sqrt(c.gamma1) * comp.S1);
    if (c.gamma2 > 0.0) comp.channels.push_back(std::sqrt(c.gamma2) * comp.S2);

    comp.O1 = comp.S1.adjoint() * comp.S1;
    comp.O2 = comp.S2.adjoint() * comp.S2;
    comp.OC = comp.O1 * comp.O2;

    Eigen::SelfAdjointEigenSolver<Mat> es(comp.H, Eigen::EigenvaluesOnly);
    comp.evals = es.eigenvalues();
    return comp;
}

double midpoint_frequency(const Composite& comp) {
    return 0.5 * (comp.evals[4] + comp.evals[5] - 2.0 * comp.evals[0]);
}

}  // namespace cascade
