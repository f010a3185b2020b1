#pragma once

#include <span>
#include <vector>

#include "ballfun/mixed_poly.hpp"

namespace ballfun {

// Formal partial derivative with respect to z_j (or conj(z_j)).
// Coordinates are 1-based. On a HoloPoly with conjugate = false the result
// has all antiholomorphic exponents zero.
MixedPoly partialDerivative(const HoloPoly& f, int j, bool conjugate = false);
MixedPoly partialDerivative(const MixedPoly& f, int j, bool conjugate = false);

// d/dz_j within the holomorphic class.
HoloPoly holoPartial(const HoloPoly& f, int j);

// All order-s holomorphic partials d^gamma f with |gamma| = s, paired with
// the number of ordered s-tuples realizing gamma (s! / gamma!).
std::vector<std::pair<HoloPoly, double>> gradientComponents(const HoloPoly& f, int s);

// l2 norm over ordered s-tuples of partials at z; s = 1 gives |grad f(z)|.
double gradientNorm(const HoloPoly& f, int s, std::span<const Cplx> z);

// Tangential derivative factor: T_{i,j} = conj(z_i) d_j - conj(z_j) d_i,
// or its conjugate version Tbar_{i,j} = z_i d_{conj(z_j)} - z_j d_{conj(z_i)}.
struct TangOp {
    int i;  // 1-based
    int j;  // 1-based
    bool bar = false;
};

MixedPoly tangentialApplyOne(const MixedPoly& f, const TangOp& op);

// Applies the factors left to right: ops[0] first.
MixedPoly tangentialApply(const MixedPoly& f, std::span<const TangOp> ops);

// All length-k compositions T_delta f where each factor ranges over ordered
// pairs (i, j), i != j; with plus = true each factor may also be a Tbar.
std::vector<MixedPoly> tangentialGradientPolys(const HoloPoly& f, int k, bool plus);

// Sum of |T_delta f(z)| over the composition family.
double tangentialGradientValue(const HoloPoly& f, int k, bool plus, std::span<const Cplx> z);

struct RadialIdentityConstants {
    std::vector<double> d;  // d_0 .. d_k
    double residual;        // max coefficient residual over the test monomials
};

// Constants d_j with sum_j d_j R^{k-j} f = sum_{delta} Tbar_delta T_delta f
// on all monomials of degree <= testDegree; least-squares solve.
RadialIdentityConstants solveRadialIdentityConstants(int k, int dim, int testDegree = -1,
                                                     double tol = 1e-10);

}  // namespace ballfun
