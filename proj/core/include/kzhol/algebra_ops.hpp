#pragma once

#include <Eigen/Dense>

#include "kzhol/engine.hpp"
#include "kzhol/series.hpp"

namespace kzhol {

/// Truncated series in a fixed catalogue. Picard iteration is exact after
/// degree + 1 sweeps because the connection raises word degree.
struct SeriesOps {
    using Elem = Series;
    using Residue = Series;

    CataloguePtr gens;
    int degree = 3;

    SeriesOps(CataloguePtr g, int d) : gens(std::move(g)), degree(d) {}

    Elem zero() const { return Series::zero(gens, degree); }
    Elem identity() const { return Series::one(gens, degree); }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    void axpy(Elem& y, Complex c, const Elem& x) const;
    double norm(const Elem& x) const { return x.max_abs(); }
    Elem inverse(const Elem& x) const { return kzhol::inverse(x); }

    Residue residue(const Elem& R) const { return R; }
    Elem resolvent(const Residue& R, double k, const Elem& y) const;
    Elem power(const Residue& R, Complex log_x) const { return kzhol::exp(R * log_x); }
    /// exp(c X) for a degree-one element X.
    Elem exp_scaled(const Elem& X, Complex c) const { return kzhol::exp(X * c); }

    bool picard_done(int iteration, double, double) const { return iteration >= degree + 1; }
};

using Matrix = Eigen::MatrixXcd;

/// Dense matrices. Generator images are `scale` times Hermitian matrices, so
/// residues are diagonalized with a unitary eigenbasis.
struct MatrixOps {
    using Elem = Matrix;
    struct Residue {
        Matrix vectors;
        Eigen::VectorXcd values;  // eigenvalues of R
    };

    int dim = 1;
    Complex scale{1.0, 0.0};

    explicit MatrixOps(int d, Complex s = 1.0) : dim(d), scale(s) {}

    Elem zero() const { return Matrix::Zero(dim, dim); }
    Elem identity() const { return Matrix::Identity(dim, dim); }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    void axpy(Elem& y, Complex c, const Elem& x) const { y += c * x; }
    double norm(const Elem& x) const { return x.cwiseAbs().maxCoeff(); }
    Elem inverse(const Elem& x) const;

    /// R must be scale * H / (2 pi i) with H Hermitian.
    Residue residue(const Elem& R) const;
    Elem resolvent(const Residue& R, double k, const Elem& y) const;
    Elem power(const Residue& R, Complex log_x) const;
    /// exp(c X) where X is scale times a Hermitian matrix.
    Elem exp_scaled(const Elem& X, Complex c) const;

    bool picard_done(int iteration, double change, double scale_of_value) const {
        return iteration >= 2 && change <= 2e-14 * std::max(1.0, scale_of_value);
    }
};

/// Spectral norm (largest singular value).
double operator_norm(const Matrix& m);

}  // namespace kzhol
