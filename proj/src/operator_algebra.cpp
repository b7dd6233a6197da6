#include "cascade/operator_algebra.hpp"

#include <cmath>

namespace cascade {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat annihilation(int n) {
    Mat a = Mat::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(double(k));
    return a;
}

Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat pauli_y() {
    Mat m(2, 2);
    m << 0, cxd(0, 1), cxd(0, -1), 0;
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << -1, 0, 0, 1;
    return m;
}

Mat sigma_lower() {
    Mat m = Mat::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

double herm_deviation(const Mat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Mat& m, double tol) { return herm_deviation(m) <= tol; }

Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

Mat strict_upper(const Mat& m) {
    Mat out = Mat::Zero(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

Mat hermitian_function(const Mat& h, double (*f)(double)) {
    if (!is_hermitian(h, kHermTol))
        throw std::invalid_argument("hermitian_function: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h));
    RVec fw = es.eigenvalues().unaryExpr([f](double x) { return f(x); });
    return es.eigenvectors() * fw.asDiagonal() * es.eigenvectors().adjoint();
}

double expectation(const Mat& op, const Mat& rho) {
    return trace_product(op, rho).real();
}

cxd trace_product(const Mat& a, const Mat& b) {
    return a.cwiseProduct(b.transpose()).sum();
}

void fix_phases(Mat& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index imax = 0;
        double best = -1;
        for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
            double m = std::abs(vectors(r, c));
            if (m > best) { best = m; imax = r; }
        }
        cxd z = vectors(imax, c);
        if (std::abs(z) > 0) vectors.col(c) *= std::conj(z) / std::abs(z);
    }
}

Vec phases(const RVec& d, double t) {
    Vec p(d.size());
    for (Eigen::Index k = 0; k < d.size(); ++k)
        p[k] = std::polar(1.0, d[k] * t);
    return p;
}

Mat phase_conjugate(const Mat& o, const Vec& p) {
    return p.asDiagonal() * o * p.conjugate().asDiagonal();
}

double min_eigenvalue(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace cascade
