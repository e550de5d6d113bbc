#pragma once

#include <vector>

namespace kzhol {

/// Gauss-Legendre rule on [0,1] together with the spectral integration
/// matrix: integral[m][n] * f(x_n) summed over n approximates the integral of
/// f from 0 to x_m, exactly for polynomials of degree < order.
struct GaussLegendre {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<std::vector<double>> integral;
};

/// Throws ConfigError for order < 1. Results are memoized per order.
const GaussLegendre& gauss_legendre(int order);

}  // namespace kzhol
