#include "kzhol/matrix_rep.hpp"

namespace kzhol {

MatrixRep::MatrixRep(const DKAlgebra& alg, int local_dim) : alg_(alg), N_(local_dim) {
    if (local_dim < 1) throw ConfigError("matrix representation needs N >= 1");
    const std::size_t m = alg.strands().size();
    long long d = 1;
    for (std::size_t k = 0; k < m; ++k) {
        d *= local_dim;
        if (d > 4096) throw ConfigError("matrix representation dimension N^m exceeds 4096");
    }
    dim_ = static_cast<int>(d);

    const auto& cat = *alg.catalogue();
    gens_.resize(cat.size());
    // Digit of factor k in the base-N index; factor 0 is most significant.
    auto digit = [&](int idx, std::size_t k) {
        for (std::size_t r = m - 1; r > k; --r) idx /= N_;
        return idx % N_;
    };
    std::vector<int> place(m, 1);
    for (std::size_t k = m - 1; k-- > 0;) place[k] = place[k + 1] * N_;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            Matrix P = Matrix::Zero(dim_, dim_);
            for (int col = 0; col < dim_; ++col) {
                const int da = digit(col, a), db = digit(col, b);
                const int row = col + (db - da) * place[a] + (da - db) * place[b];
                P(row, col) = 1.0;
            }
            gens_[alg.t(alg.strands()[a], alg.strands()[b])] = std::move(P);
        }
}

const Matrix& MatrixRep::flip(std::size_t a, std::size_t b) const {
    return gens_.at(alg_.t(alg_.strands().at(a), alg_.strands().at(b)));
}

const Matrix& MatrixRep::of(const StrandLabel& a, const StrandLabel& b) const { return gens_.at(alg_.t(a, b)); }

Matrix MatrixRep::apply(const Series& g, Complex scale) const {
    if (!same_catalogue(g.catalogue(), alg_.catalogue())) throw ConfigError("MatrixRep::apply: catalogue mismatch");
    Matrix out = Matrix::Zero(dim_, dim_);
    for (int d = 0; d <= g.degree(); ++d) out += std::pow(scale, d) * apply_degree(g, d);
    return out;
}

Matrix MatrixRep::apply_degree(const Series& g, int d) const {
    if (!same_catalogue(g.catalogue(), alg_.catalogue())) throw ConfigError("MatrixRep::apply: catalogue mismatch");
    const auto block = g.part(d);
    const std::size_t G = g.generator_count();
    std::vector<Matrix> layer;
    layer.reserve(block.size());
    for (Complex c : block) layer.push_back(c * Matrix::Identity(dim_, dim_));
    // Peel letters off the right: the entry for prefix p holds sum_s c_{ps} rho(s).
    for (int len = d; len > 0; --len) {
        std::vector<Matrix> next;
        next.reserve(layer.size() / G);
        for (std::size_t prefix = 0; prefix < layer.size() / G; ++prefix) {
            Matrix acc = Matrix::Zero(dim_, dim_);
            for (std::size_t x = 0; x < G; ++x) {
                const Matrix& child = layer[prefix * G + x];
                if (child.isZero(0.0)) continue;
                acc += gens_[x] * child;
            }
            next.push_back(std::move(acc));
        }
        layer = std::move(next);
    }
    return layer.empty() ? Matrix::Zero(dim_, dim_) : layer[0];
}

}  // namespace kzhol
