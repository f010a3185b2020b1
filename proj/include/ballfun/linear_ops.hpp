#pragma once

#include <Eigen/Dense>

#include "ballfun/holo_poly.hpp"

namespace ballfun {

// f(Uz) for an N x N matrix with operator norm <= 1 (within normTol slack).
// Degree-k parts map to degree-k parts.
HoloPoly composeLinear(const HoloPoly& f, const Eigen::MatrixXcd& U, double normTol = 1e-9);

// f(rho z): the degree-k part is scaled by rho^k, 0 < rho <= 1.
HoloPoly dilate(const HoloPoly& f, double rho);

double operatorNorm(const Eigen::MatrixXcd& A);

}  // namespace ballfun
