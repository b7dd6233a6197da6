#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace cascade {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;

inline Mat dagger(const Mat& m) { return m.adjoint(); }

Mat kron(const Mat& a, const Mat& b);

// Bosonic annihilation operator on an n-level Fock truncation.
Mat annihilation(int n);

// Pauli matrices in the (g, e) ordering used throughout: index 0 = ground.
Mat pauli_x();
Mat pauli_y();          // [[0, i], [-i, 0]]
Mat pauli_z();          // diag(-1, +1)
Mat sigma_lower();      // |g><e|

double herm_deviation(const Mat& m);
bool is_hermitian(const Mat& m, double tol = kHermTol);

// (m + m^dag)/2; callers use this after asserting herm_deviation is small.
Mat hermitize(const Mat& m);

// Zero the diagonal and lower triangle.
Mat strict_upper(const Mat& m);

// f applied to a Hermitian matrix through its eigendecomposition.
Mat hermitian_function(const Mat& h, double (*f)(double));

// Real part of tr(op * rho).
double expectation(const Mat& op, const Mat& rho);

cxd trace_product(const Mat& a, const Mat& b);

// Fix eigenvector phases: the largest-magnitude component of each column is
// made real and positive, so downstream matrix elements are reproducible.
void fix_phases(Mat& vectors);

// Interaction-picture helpers. phases(d, t)[k] = exp(i d[k] t);
// phase_conjugate(o, p) = diag(p) * o * diag(conj(p)).
Vec phases(const RVec& d, double t);
Mat phase_conjugate(const Mat& o, const Vec& p);

// Smallest eigenvalue of a Hermitian matrix (positivity checks).
double min_eigenvalue(const Mat& h);

}  // namespace cascade
