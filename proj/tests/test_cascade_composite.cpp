#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cascade/cascade_composite.hpp"

using namespace cascade;

namespace {

const double kPi = 3.14159265358979323846;

Subsystem node(double omega_c, double eta, int nf, int nk) {
    SubsystemParams p;
    p.omega_c = omega_c;
    p.eta = eta;
    p.theta = kPi / 5.0;
    p.n_fock = nf;
    p.n_keep = nk;
    return build_subsystem(p);
}

Composite anchor_composite() {
    CascadeParams c;
    c.kappa1 = 0.004;
    c.kappa2 = 0.001;
    c.G = 0.8;
    c.gamma1 = 5e-4;
    c.gamma2 = 3e-4;
    return build_composite(node(1.2, 0.5, 8, 4), node(1.25, 0.45, 8, 4), c);
}

Mat test_density(int n, unsigned seed) {
    Mat m(n, n);
    unsigned s = seed;
    auto next = [&s] {
        s = s * 1664525u + 1013904223u;
        return double(s >> 8) / double(1u << 24) - 0.5;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cxd(next(), next());
    Mat rho = m * m.adjoint();
    return rho / rho.trace().real();
}

}  // namespace

TEST_CASE("frozen asymmetric composite") {
    const double ref[6] = {-0.862450856737, -0.174292170497, -0.138577226413,
                           0.523765625202,  0.549581777504,  0.578727051157};
    Composite comp = anchor_composite();
    REQUIRE(comp.dim == 16);
    for (int k = 0; k < 6; ++k)
        CHECK(comp.evals[k] == doctest::Approx(ref[k]).epsilon(1e-9));
    CHECK(comp.channels.size() == 4);
    CHECK(comp.Hc.cwiseAbs().maxCoeff()
          == doctest::Approx(8.440978898606607e-4).epsilon(1e-10));
}

TEST_CASE("hamiltonian structure") {
    Composite comp = anchor_composite();
    CHECK(herm_deviation(comp.H) < 1e-12);
    CHECK(herm_deviation(comp.Hc) < 1e-14);
    // diagonal = sums of subsystem energies, coupling strictly off-diagonal
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CHECK(comp.D[i * 4 + j]
                  == doctest::Approx(comp.sub1.energies[i] + comp.sub2.energies[j])
                         .epsilon(1e-14));
            CHECK(std::abs(comp.Hc(i * 4 + j, i * 4 + j)) < 1e-16);
        }
    Mat direct = Mat(comp.D.cast<cxd>().asDiagonal()) + comp.Hc;
    CHECK((comp.H - direct).cwiseAbs().maxCoeff() == 0.0);

    Eigen::SelfAdjointEigenSolver<Mat> es(comp.H, Eigen::EigenvaluesOnly);
    CHECK((comp.evals - es.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    for (int k = 0; k + 1 < comp.dim; ++k) CHECK(comp.evals[k] <= comp.evals[k + 1]);
}

TEST_CASE("lifted operators act on separate factors") {
    Composite comp = anchor_composite();
    CHECK((comp.A1 * comp.A2 - comp.A2 * comp.A1).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((comp.O1 * comp.O2 - comp.O2 * comp.O1).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((comp.OC - comp.O1 * comp.O2).cwiseAbs().maxCoeff() == 0.0);
    CHECK((comp.O1 - comp.S1.adjoint() * comp.S1).cwiseAbs().maxCoeff() == 0.0);
    CHECK(is_hermitian(comp.O1, 1e-14));
    CHECK(is_hermitian(comp.O2, 1e-14));
    // kron layout: A1 = a1 x I, A2 = I x a2
    CHECK((comp.A1 - kron(comp.sub1.A, Mat::Identity(4, 4))).cwiseAbs().maxCoeff() == 0.0);
    CHECK((comp.A2 - kron(Mat::Identity(4, 4), comp.sub2.A)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("decay channel composition") {
    Subsystem s1 = node(1.2, 0.5, 8, 4), s2 = node(1.25, 0.45, 8, 4);
    CascadeParams c;

    Composite lossless = build_composite(s1, s2, c);  // G = 1, no qubit decay
    REQUIRE(lossless.channels.size() == 1);
    Mat want = std::sqrt(c.kappa1) * lossless.A1 + std::sqrt(c.kappa2) * lossless.A2;
    CHECK((lossless.channels[0] - want).cwiseAbs().maxCoeff() < 1e-15);

    c.G = 0.8;
    Composite lossy = build_composite(s1, s2, c);
    REQUIRE(lossy.channels.size() == 2);
    Mat c0 = std::sqrt(c.kappa1) * lossy.A1 + std::sqrt(c.G * c.kappa2) * lossy.A2;
    Mat c1 = std::sqrt(c.kappa2 * (1.0 - c.G)) * lossy.A2;
    CHECK((lossy.channels[0] - c0).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((lossy.channels[1] - c1).cwiseAbs().maxCoeff() < 1e-15);

    c.gamma1 = 2e-4;
    CHECK(build_composite(s1, s2, c).channels.size() == 3);
    c.gamma2 = 2e-4;
    Composite full = build_composite(s1, s2, c);
    REQUIRE(full.channels.size() == 4);
    CHECK((full.channels[2] - std::sqrt(c.gamma1) * full.S1).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((full.channels[3] - std::sqrt(c.gamma2) * full.S2).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("coupling scales with the gain") {
    Subsystem s1 = node(1.2, 0.5, 8, 4), s2 = node(1.25, 0.45, 8, 4);
    CascadeParams c;
    c.G = 1.0;
    Mat h1 = build_composite(s1, s2, c).Hc;
    c.G = 0.25;
    Mat h2 = build_composite(s1, s2, c).Hc;
    CHECK((h1 - 2.0 * h2).cwiseAbs().maxCoeff() < 1e-15);
    c.G = 0.0;
    CHECK(build_composite(s1, s2, c).Hc.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parameter validation") {
    Subsystem s1 = node(1.2, 0.5, 6, 3), s2 = node(1.2, 0.5, 6, 3);
    CascadeParams c;
    c.G = 1.2;
    CHECK_THROWS_AS(build_composite(s1, s2, c), std::invalid_argument);
    c.G = -0.1;
    CHECK_THROWS_AS(build_composite(s1, s2, c), std::invalid_argument);
    c.G = 1.0;
    c.gamma1 = -1e-4;
    CHECK_THROWS_AS(build_composite(s1, s2, c), std::invalid_argument);
    c.gamma1 = 0;
    c.kappa1 = -0.004;
    CHECK_THROWS_AS(build_composite(s1, s2, c), std::invalid_argument);
    c.kappa1 = 0.0;  // the cascade channel needs both cavities leaking
    CHECK_THROWS_AS(build_composite(s1, s2, c), std::invalid_argument);
    c.kappa1 = 0.004;
    c.kappa2 = 0.0;
    CHECK_THROWS_AS(build_composite(s1, s2, c), std::invalid_argument);
}

TEST_CASE("coupling is traceless under commutation") {
    Composite comp = anchor_composite();
    Mat rho = test_density(comp.dim, 41);
    Mat comm = comp.Hc * rho - rho * comp.Hc;
    CHECK(std::abs(comm.trace()) < 1e-14);
    Mat full = comp.H * rho - rho * comp.H;
    CHECK(std::abs(full.trace()) < 1e-14);
}

TEST_CASE("frozen carrier frequency") {
    SubsystemParams p;
    p.omega_c = 1.2;
    p.eta = 0.5;
    p.theta = kPi / 5.0;
    p.n_fock = 6;
    p.n_keep = 3;
    Subsystem s = build_subsystem(p);
    CascadeParams c;  // paper rates, G = 1
    Composite comp = build_composite(s, s, c);
    CHECK(midpoint_frequency(comp) == doctest::Approx(1.386180204956).epsilon(1e-9));
}
