#pragma once

#include <vector>

namespace ballfun {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Jacobi rule for integrals over (0,1) against (1-u)^a u^b du;
// requires a > -1 and b > -1. Exact for polynomials of degree <= 2n-1.
Rule1D gaussJacobi01(int n, double a, double b);

Rule1D gaussLegendre01(int n);

// Same rule with weights rescaled so they sum to 1 (probability rule for
// the Beta(b+1, a+1) density).
Rule1D gaussJacobi01Normalized(int n, double a, double b);

}  // namespace ballfun
