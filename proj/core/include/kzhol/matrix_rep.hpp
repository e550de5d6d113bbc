#pragma once

#include <vector>

#include "kzhol/algebra_ops.hpp"
#include "kzhol/dk_algebra.hpp"

namespace kzhol {

/// rho(t_{a,b}) = flip of tensor factors a and b on (C^N)^{(x) m}, m = strand count.
class MatrixRep {
public:
    MatrixRep(const DKAlgebra& alg, int local_dim);

    int local_dim() const noexcept { return N_; }
    int dim() const noexcept { return dim_; }
    const DKAlgebra& algebra() const noexcept { return alg_; }

    /// Flip of the strands with positions a, b (0-based in alg.strands()).
    const Matrix& flip(std::size_t a, std::size_t b) const;
    const Matrix& of(const StrandLabel& a, const StrandLabel& b) const;
    /// Image of a generator id of the algebra's catalogue.
    const Matrix& generator(GeneratorId id) const { return gens_.at(id); }

    /// rho applied to a series word by word: sum_w c_w rho(w). `scale` multiplies each letter.
    Matrix apply(const Series& g, Complex scale = 1.0) const;
    /// rho of the degree-d part only.
    Matrix apply_degree(const Series& g, int d) const;

private:
    DKAlgebra alg_;
    int N_;
    int dim_;
    std::vector<Matrix> gens_;
};

}  // namespace kzhol
