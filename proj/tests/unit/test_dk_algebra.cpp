#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "kzhol/dk_algebra.hpp"
#include "kzhol/error.hpp"
#include "kzhol/matrix_rep.hpp"
#include "test_support.hpp"

using namespace kzhol;

namespace {

Series random_series(std::mt19937_64& rng, const CataloguePtr& g, int D) {
    std::normal_distribution<double> n;
    Series s(g, D);
    for (int d = 0; d <= D; ++d)
        for (auto& c : s.part(d)) c = {n(rng), n(rng)};
    return s;
}

Series lift(const Series& g, int D) {
    Series out(g.catalogue(), D);
    g.for_each_term([&](const Word& w, Complex c) { out.add_coeff(w, c); });
    return out;
}

}  // namespace

TEST(DKAlgebra, GeneratorAndRelationCounts) {
    const auto t3 = DKAlgebra::numbered(3);
    EXPECT_EQ(t3.catalogue()->size(), 3u);
    EXPECT_EQ(t3.triple_relation_count(), 3u);
    EXPECT_EQ(t3.disjoint_relation_count(), 0u);
    const auto t4 = DKAlgebra::numbered(4);
    EXPECT_EQ(t4.catalogue()->size(), 6u);
    EXPECT_EQ(t4.disjoint_relation_count(), 3u);
    EXPECT_EQ(t4.triple_relation_count(), 12u);
    const auto two = DKAlgebra::with_two_moving_points(2);
    EXPECT_EQ(two.strands(), (std::vector<StrandLabel>{"1", "2", "z", "w"}));
    EXPECT_EQ(two.t("z", "1"), two.t("1", "z"));
    EXPECT_EQ(pair_label("1", "z"), "t[1,z]");
    EXPECT_THROW(two.t("1", "1"), ConfigError);
    EXPECT_THROW(two.t("1", "q"), ConfigError);
}

TEST(DKAlgebra, QuotientDimensionsMatchHilbertSeries) {
    for (int m : {3, 4}) {
        const int D = m == 3 ? 3 : 4;
        const auto basis = ideal_basis(DKAlgebra::numbered(m), D);
        const auto expected = fixtures::dk_hilbert_series(m, D);
        for (int d = 0; d <= D; ++d) EXPECT_EQ(basis.quotient_dimension(d), static_cast<std::size_t>(expected[d]))
            << "strands " << m << " degree " << d;
    }
    EXPECT_EQ(fixtures::dk_hilbert_series(3, 2)[2], 7);
    EXPECT_EQ(fixtures::dk_hilbert_series(4, 4), (std::vector<long>{1, 6, 25, 90, 301}));
}

TEST(DKAlgebra, ReduceKillsTheIdealAndIsIdempotent) {
    std::mt19937_64 rng(17);
    const auto alg = DKAlgebra::numbered(4);
    const int D = 3;
    const auto basis = ideal_basis(alg, D);
    const auto& g = alg.catalogue();
    for (const auto& rel : alg.relations()) {
        const auto r = lift(rel, D);
        const auto x = random_series(rng, g, D), y = random_series(rng, g, D);
        EXPECT_LT(reduce(x * r * y, basis).max_abs(), 1e-12);
    }
    const auto x = random_series(rng, g, D), y = random_series(rng, g, D);
    const auto rx = reduce(x, basis);
    EXPECT_LT((reduce(rx, basis) - rx).max_abs(), 1e-12);
    EXPECT_LT((reduce(x + 2.0 * y, basis) - rx - 2.0 * reduce(y, basis)).max_abs(), 1e-12);
    // degree one and the unit are untouched
    EXPECT_LT(rx.max_abs(1) - x.max_abs(1), 1e-15);
    EXPECT_EQ(rx.constant(), x.constant());
}

TEST(DKAlgebra, CommutingGeneratorsReduceEqual) {
    const auto alg = DKAlgebra::numbered(4);
    const auto basis = ideal_basis(alg, 2);
    const auto& g = alg.catalogue();
    const auto a = Series::generator(g, 2, alg.t("1", "2")), b = Series::generator(g, 2, alg.t("3", "4"));
    EXPECT_LT(reduce(a * b - b * a, basis).max_abs(), 1e-14);
    const auto c = Series::generator(g, 2, alg.t("1", "3"));
    EXPECT_GT(reduce(a * c - c * a, basis).max_abs(), 0.1);
}

TEST(DKAlgebra, IdealBasisCacheRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "kzhol_test_ideal_cache";
    std::filesystem::remove_all(dir);
    const auto alg = DKAlgebra::with_two_moving_points(2);
    const auto fresh = cached_ideal_basis(alg, 3, dir);
    const auto again = cached_ideal_basis(alg, 3, dir);
    EXPECT_FALSE(std::filesystem::is_empty(dir));
    std::mt19937_64 rng(1);
    const auto x = random_series(rng, alg.catalogue(), 3);
    EXPECT_LT((reduce(x, fresh) - reduce(x, again)).max_abs(), 1e-14);
    std::filesystem::remove_all(dir);
}

TEST(DKAlgebra, SubstitutionImages) {
    const int n = 3;
    const auto alg = DKAlgebra::with_two_moving_points(n);
    const auto src = one_point_catalogue(n);
    EXPECT_EQ(src->label(0), "t[1,z]");
    const auto hz = substitution_Hz(alg, src, n, 1, 2);
    const auto hw = substitution_Hw(alg, src, n, 1, 2);
    const auto hzw = substitution_Hzw(alg, src, n);
    auto image = [&](const LinearSubstitution& phi, int k) {
        return apply_linear_substitution(Series::generator(src, 1, static_cast<GeneratorId>(k - 1)), phi);
    };
    const auto& tg = alg.catalogue();
    auto t = [&](const char* a, const char* b) { return Series::generator(tg, 1, alg.t(a, b)); };
    EXPECT_EQ((image(hz, 1) - t("1", "z")).max_abs(), 0.0);
    EXPECT_EQ((image(hz, 2) - t("2", "z") - t("z", "w")).max_abs(), 0.0);
    EXPECT_EQ((image(hw, 1) - t("1", "w") - t("z", "w")).max_abs(), 0.0);
    EXPECT_EQ((image(hw, 3) - t("3", "w")).max_abs(), 0.0);
    EXPECT_EQ((image(hzw, 2) - t("2", "z") - t("2", "w")).max_abs(), 0.0);
    EXPECT_THROW(substitution_Hz(alg, src, n, 1, 1), ConfigError);
}

TEST(DKAlgebra, SubstitutionCommutesWithProducts) {
    std::mt19937_64 rng(23);
    const int n = 2;
    const auto alg = DKAlgebra::with_two_moving_points(n);
    const auto src = one_point_catalogue(n);
    const auto basis = ideal_basis(alg, 3);
    for (const auto& phi : {substitution_Hz(alg, src, n, 1, 2), substitution_Hw(alg, src, n, 1, 2),
                            substitution_Hzw(alg, src, n)}) {
        const auto a = random_series(rng, src, 3), b = random_series(rng, src, 3);
        const auto lhs = reduce(apply_linear_substitution(a * b, phi), basis);
        const auto rhs = reduce(apply_linear_substitution(a, phi) * apply_linear_substitution(b, phi), basis);
        EXPECT_LT((lhs - rhs).max_abs(), 1e-12);
    }
}

TEST(DKAlgebra, ProjectionKillsDiagonalGenerator) {
    const auto alg = DKAlgebra::with_two_moving_points(2);
    const auto& g = alg.catalogue();
    const auto tzw = Series::generator(g, 2, alg.t("z", "w"));
    const auto t1z = Series::generator(g, 2, alg.t("1", "z"));
    const auto t2w = Series::generator(g, 2, alg.t("2", "w"));
    const auto p = projection_pi(exp(tzw) * t1z + t2w * t1z, alg);
    const auto& tau = p.catalogue();
    EXPECT_EQ(tau->size(), 4u);
    const GeneratorId z1 = *tau->find("t[1,z]"), w2 = *tau->find("t[2,w]");
    EXPECT_NEAR(std::abs(p.coeff({z1})), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(p.coeff({z1, w2})), 1.0, 1e-15);  // z-letters first
    EXPECT_EQ(std::abs(p.coeff({w2, z1})), 0.0);
    EXPECT_THROW(projection_pi(Series::generator(g, 2, alg.t("1", "2")), alg), ConfigError);
}

TEST(MatrixRep, RelationsVanishAndFlipsSquareToOne) {
    for (int N : {2, 3}) {
        const auto alg = DKAlgebra::numbered(4);
        const MatrixRep rep(alg, N);
        EXPECT_EQ(rep.dim(), N * N * N * N);
        for (const auto& rel : alg.relations()) EXPECT_LT(rep.apply(rel).cwiseAbs().maxCoeff(), 1e-14);
        const auto& f = rep.of("1", "3");
        EXPECT_LT((f * f - Matrix::Identity(rep.dim(), rep.dim())).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LT((f - f.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    }
    EXPECT_THROW(MatrixRep(DKAlgebra::numbered(7), 4), ConfigError);
}

TEST(MatrixRep, ApplyIsMultiplicative) {
    std::mt19937_64 rng(2);
    const auto alg = DKAlgebra::numbered(3);
    const MatrixRep rep(alg, 2);
    const auto a = random_series(rng, alg.catalogue(), 3), b = random_series(rng, alg.catalogue(), 3);
    // only words of total degree <= 3 survive, so compare against the product truncated alike
    Matrix lhs = rep.apply(a * b);
    Matrix rhs = Matrix::Zero(rep.dim(), rep.dim());
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) rhs += rep.apply_degree(a, i) * rep.apply_degree(b, j);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
}
