#include <gtest/gtest.h>

#include <cmath>

#include "kzhol/algebra_ops.hpp"
#include "kzhol/engine.hpp"
#include "kzhol/error.hpp"
#include "kzhol/quadrature.hpp"

using namespace kzhol;

TEST(Quadrature, ExactForPolynomials) {
    for (int q : {2, 5, 16}) {
        const auto& gl = gauss_legendre(q);
        for (int k = 0; k < 2 * q; ++k) {
            double sum = 0.0;
            for (int i = 0; i < q; ++i) sum += gl.weights[i] * std::pow(gl.nodes[i], k);
            EXPECT_NEAR(sum, 1.0 / (k + 1), 1e-14) << "q=" << q << " k=" << k;
        }
    }
    EXPECT_THROW(gauss_legendre(0), ConfigError);
}

TEST(Quadrature, IntegrationMatrix) {
    const int q = 12;
    const auto& gl = gauss_legendre(q);
    for (int k = 0; k < q; ++k)
        for (int m = 0; m < q; ++m) {
            double sum = 0.0;
            for (int n = 0; n < q; ++n) sum += gl.integral[m][n] * std::pow(gl.nodes[n], k);
            EXPECT_NEAR(sum, std::pow(gl.nodes[m], k + 1) / (k + 1), 1e-13);
        }
}

TEST(Engine, ConfigValidation) {
    EngineConfig c;
    EXPECT_NO_THROW(validate(c));
    c.eval_fraction = 1.5;
    EXPECT_THROW(validate(c), ConfigError);
    c = {};
    c.degree = -1;
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(Engine, PanelsRespectPoles) {
    const std::vector<Complex> poles{{0.5, 1e-3}};
    const auto panels = split_panels(poles, 0.0, 1.0, EngineConfig{});
    ASSERT_FALSE(panels.empty());
    EXPECT_EQ(panels.front().first, 0.0);
    EXPECT_EQ(panels.back().second, 1.0);
    for (const auto& [a, b] : panels) {
        EXPECT_LE(b - a, 0.25 + 1e-15);
        EXPECT_GE(bernstein_parameter(poles[0], a, b), 6.0);
    }
}

TEST(Engine, ScalarTransportMatchesClosedForm) {
    // dU = X dlog(z - p) U along a segment: U = ((z_b - p)/(z_a - p))^X U0
    const MatrixOps ops(1);
    EngineConfig cfg;
    const Complex X(0.3, -0.2), p(0.4, 0.05), za(-1.0, 0.0), zb(2.0, 0.5);
    Form<Matrix> form{{Matrix::Constant(1, 1, X), za - p, zb - za}};
    const Matrix U = transport(ops, form, Matrix::Identity(1, 1), 0.0, 1.0, cfg);
    const Complex exact = std::exp(X * std::log((zb - p) / (za - p)));
    EXPECT_NEAR(std::abs(U(0, 0) - exact), 0.0, 1e-13);
}

TEST(Engine, SeriesTransportMatchesIteratedIntegrals) {
    // two letters with poles at 0 and 1 along [a, b] on the real line: word AB
    // coefficient is the iterated integral int_{a<x<y<b} dlog(y-1) dlog(x), A acting last
    const auto gens = make_catalogue({"A", "B"});
    const SeriesOps ops(gens, 2);
    EngineConfig cfg;
    cfg.degree = 2;
    const double a = 0.2, b = 0.7;
    auto A = Series::generator(gens, 2, 0), B = Series::generator(gens, 2, 1);
    Form<Series> form{{A, Complex(a), Complex(b - a)}, {B, Complex(a - 1.0), Complex(b - a)}};
    const auto U = transport(ops, form, ops.identity(), 0.0, 1.0, cfg);
    EXPECT_NEAR(std::abs(U.coeff({0}) - std::log(b / a)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(U.coeff({0, 0}) - 0.5 * std::pow(std::log(b / a), 2)), 0.0, 1e-14);
    // closed form of int_a^b dlog(y) int_a^y dlog(1-x): use a fine Simpson rule as reference
    const int M = 20000;
    double ref = 0.0;
    for (int k = 0; k <= M; ++k) {
        const double y = a + (b - a) * k / M;
        const double inner = std::log((1.0 - y) / (1.0 - a));
        const double w = (k == 0 || k == M) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        ref += w * inner / y;
    }
    ref *= (b - a) / M / 3.0;
    EXPECT_NEAR(std::abs(U.coeff({0, 1}) - ref), 0.0, 1e-12);
}

TEST(Engine, NonResonantResolvent) {
    const MatrixOps ops(2, 1.0);
    Matrix R(2, 2);
    R << 0.0, 1.0, 1.0, 0.0;
    R /= kTwoPiI;
    const auto res = ops.residue(R);
    Matrix Y = Matrix::Random(2, 2);
    const Matrix F = ops.resolvent(res, 3.0, Y);
    EXPECT_LT((3.0 * F - (R * F - F * R) - Y).cwiseAbs().maxCoeff(), 1e-13);
}
