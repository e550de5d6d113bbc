#include "kzhol/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "kzhol/error.hpp"

namespace kzhol {

namespace {

GaussLegendre build(int q) {
    GaussLegendre gl;
    gl.order = q;
    std::vector<double> x(q), w(q);
    for (int k = 0; k < q; ++k) {
        // Chebyshev-like initial guess, then Newton on P_q.
        double r = std::cos(std::numbers::pi * (k + 0.75) / (q + 0.5));
        for (int it = 0; it < 100; ++it) {
            const double p = std::legendre(q, r);
            const double pm = q > 0 ? std::legendre(q - 1, r) : 0.0;
            const double dp = q * (r * p - pm) / (r * r - 1.0);
            const double step = p / dp;
            r -= step;
            if (std::abs(step) < 1e-16) break;
        }
        const double p = std::legendre(q, r);
        const double pm = std::legendre(q - 1, r);
        const double dp = q * (r * p - pm) / (r * r - 1.0);
        x[q - 1 - k] = r;
        w[q - 1 - k] = 2.0 / ((1.0 - r * r) * dp * dp);
    }

    // Interpolant l_n = sum_k (2k+1)/2 w_n P_k(x_n) P_k, integrated from -1.
    std::vector<std::vector<double>> P(q + 1, std::vector<double>(q));
    for (int k = 0; k <= q; ++k)
        for (int n = 0; n < q; ++n) P[k][n] = std::legendre(k, x[n]);
    auto int_P = [](int k, double t) {
        if (k == 0) return t + 1.0;
        return (std::legendre(k + 1, t) - std::legendre(k - 1, t)) / (2.0 * k + 1.0);
    };

    gl.nodes.resize(q);
    gl.weights.resize(q);
    gl.integral.assign(q, std::vector<double>(q, 0.0));
    for (int m = 0; m < q; ++m) {
        gl.nodes[m] = 0.5 * (x[m] + 1.0);
        gl.weights[m] = 0.5 * w[m];
        for (int k = 0; k < q; ++k) {
            const double ik = int_P(k, x[m]);
            for (int n = 0; n < q; ++n) gl.integral[m][n] += 0.25 * (2.0 * k + 1.0) * w[n] * P[k][n] * ik;
        }
    }
    return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
    if (order < 1) throw ConfigError("quadrature order must be positive");
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build(order)).first;
    return it->second;
}

}  // namespace kzhol
