#pragma once

#include <vector>

namespace ballfun {

// Quadrature for the radial measure (1 - r^2)^{qAlpha - 1} r^{2N - 1} dr on
// (0, 1): sum_i weights[i] g(nodes[i]) approximates the weighted integral of
// g, exactly when g is a polynomial in r^2 of degree <= 2 * count - 1.
struct RadialRule {
    int dim = 1;
    double qAlpha = 1.0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

RadialRule buildRadialRule(int dim, double qAlpha, int count);

}  // namespace ballfun
