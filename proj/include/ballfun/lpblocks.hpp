#pragma once

#include <span>
#include <vector>

#include "ballfun/holo_poly.hpp"
#include "ballfun/quad/sphere_rule.hpp"

namespace ballfun {

// Dyadic frequency decomposition of the homogeneous expansion. Block nu
// keeps the coefficients whose degree lies in the dyadic band around 2^nu:
// the smooth basis uses psi(k / 2^{nu-1}) with psi(t) = omega(t/2) - omega(t)
// built from the standard mollifier bump; the sharp basis uses indicator
// bands (selectable for 1 < p < infinity comparisons).
class BlockBasis {
public:
    static BlockBasis build(int maxDegree, bool sharp = false);

    int maxDegree() const { return maxDegree_; }
    // Highest block index; blocks run 0 .. maxBlock().
    int maxBlock() const { return int(coeffs_.size()) - 1; }
    bool sharp() const { return sharp_; }

    // Smooth cutoff: 1 on t <= 1, 0 on t >= 2, monotone in between.
    static double omega(double t);
    static double psi(double t);

    // \hat w_nu(k); zero outside [2^{nu-1}, 2^{nu+1}).
    double coefficient(int nu, int k) const;
    const std::vector<double>& blockCoefficients(int nu) const;

private:
    int maxDegree_ = 1;
    bool sharp_ = false;
    std::vector<std::vector<double>> coeffs_;  // coeffs_[nu][k]
};

// Hadamard projection W_nu * f; the partition of unity makes
// sum_nu blockProject(f, nu) reproduce f exactly.
HoloPoly blockProject(const HoloPoly& f, int nu, const BlockBasis& basis);

// Triple-window partial reproducer Q_nu = W_{nu-1} + W_nu + W_{nu+1}
// (blocks outside range dropped); satisfies Q_nu * W_nu = W_nu.
HoloPoly windowProject(const HoloPoly& f, int nu, const BlockBasis& basis);

// Partial sum sum_{k < nu} W_k; a polynomial of degree < 2^nu that fixes
// every degree <= 2^{nu-1}.
HoloPoly partialSumProject(const HoloPoly& f, int nu, const BlockBasis& basis);

struct DyadicNormSpec {
    double p = 2.0;
    double q = 2.0;
    double beta = 0.0;
};

// l^q norm of the sequence 2^{-nu beta} ||W_nu * f||_p over all blocks.
double dyadicNorm(const HoloPoly& f, const DyadicNormSpec& spec, const BlockBasis& basis,
                  const SphereRule& rule);

// Exact block spectrum entries ||W_nu * f||_p for export.
std::vector<double> blockSpectrum(const HoloPoly& f, double p, const BlockBasis& basis,
                                  const SphereRule& rule);

struct TailBound {
    double lhs;
    double rhs;
};

// For a finitely supported sequence s: compares ||{2^{nu alpha} s_{nu-1}}||_{l^q}
// against (1 - 2^{-alpha})^{-1} ||{2^{nu alpha} (s_{nu-1} - s_nu)}||_{l^q};
// lhs <= rhs always (summation by parts plus Young's inequality).
TailBound sequenceTailBound(std::span<const Cplx> s, double alpha, double q);

}  // namespace ballfun
