#include "kzhol/algebra_ops.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace kzhol {

void SeriesOps::axpy(Elem& y, Complex c, const Elem& x) const {
    y.require_compatible(x);
    for (int d = 0; d <= y.degree(); ++d) {
        auto dst = y.part(d);
        auto src = x.part(d);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += c * src[i];
    }
}

Series SeriesOps::resolvent(const Residue& R, double k, const Elem& y) const {
    // (k - ad_R)^{-1} = (1/k) sum_m (ad_R / k)^m, finite since ad_R raises degree.
    Series term = y * Complex(1.0 / k);
    Series acc = term;
    for (int m = 1; m <= degree; ++m) {
        term = commutator(R, term) * Complex(1.0 / k);
        if (term.max_abs() == 0.0) break;
        acc += term;
    }
    return acc;
}

namespace {

struct HermitianEigen {
    Matrix vectors;
    Eigen::VectorXd values;
};

HermitianEigen hermitian_eigen(const Matrix& H, const char* what) {
    const double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-9 * std::max(1.0, H.cwiseAbs().maxCoeff()))
        throw NumericsError(std::string(what) + ": matrix is not a scaled Hermitian matrix");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (H + H.adjoint()));
    if (es.info() != Eigen::Success) throw NumericsError(std::string(what) + ": eigendecomposition failed");
    return {es.eigenvectors(), es.eigenvalues()};
}

}  // namespace

Matrix MatrixOps::inverse(const Elem& x) const {
    Eigen::FullPivLU<Matrix> lu(x);
    if (!lu.isInvertible()) throw NumericsError("matrix inverse of a singular matrix");
    return lu.inverse();
}

MatrixOps::Residue MatrixOps::residue(const Elem& R) const {
    auto eig = hermitian_eigen(R * kTwoPiI / scale, "residue");
    Residue out{eig.vectors, Eigen::VectorXcd(dim)};
    for (int a = 0; a < dim; ++a) out.values[a] = scale * eig.values[a] / kTwoPiI;
    return out;
}

Matrix MatrixOps::resolvent(const Residue& R, double k, const Elem& y) const {
    Matrix t = R.vectors.adjoint() * y * R.vectors;
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            const Complex den = k - (R.values[a] - R.values[b]);
            if (std::abs(den) < 1e-8) throw NumericsError("resonant local expansion");
            t(a, b) /= den;
        }
    return R.vectors * t * R.vectors.adjoint();
}

Matrix MatrixOps::power(const Residue& R, Complex log_x) const {
    Eigen::VectorXcd d(dim);
    for (int a = 0; a < dim; ++a) d[a] = std::exp(R.values[a] * log_x);
    return R.vectors * d.asDiagonal() * R.vectors.adjoint();
}

Matrix MatrixOps::exp_scaled(const Elem& X, Complex c) const {
    auto eig = hermitian_eigen(X / scale, "exp");
    Eigen::VectorXcd d(dim);
    for (int a = 0; a < dim; ++a) d[a] = std::exp(c * scale * eig.values[a]);
    return eig.vectors * d.asDiagonal() * eig.vectors.adjoint();
}

double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

}  // namespace kzhol
