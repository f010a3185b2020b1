#pragma once

#include "ballfun/holo_poly.hpp"
#include "ballfun/quad/sphere_rule.hpp"

namespace ballfun {

struct L2Approx {
    double error;
    HoloPoly best;
};

// E_nu(f)_2 exactly: homogeneous parts are orthogonal on the sphere, so the
// best degree-nu approximation is the truncation and the error is the
// coefficient-moment tail.
L2Approx bestApproxL2(const HoloPoly& f, int nu);

struct ApproxBracket {
    double upper;
    double lower;
    HoloPoly best;
    bool converged;
};

// Two-sided bracket for E_nu(f)_p when p != 2. Upper bound: best of the
// plain truncation, a smoothed (cutoff-multiplier) truncation, and cyclic
// coordinate descent over the coefficients of P on the quadrature grid
// (budget = number of coordinate line searches). Lower bound: duality
// probes against high-degree monomials and the coefficient tail of f, which
// annihilate every polynomial of degree <= nu.
ApproxBracket bestApproxGeneral(const HoloPoly& f, int nu, double p, const SphereRule& rule,
                                int budget, double tol = 1e-3);

}  // namespace ballfun
