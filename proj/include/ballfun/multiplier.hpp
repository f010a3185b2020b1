#pragma once

#include <variant>
#include <vector>

#include "ballfun/holo_poly.hpp"

namespace ballfun {

// Coefficient-multiplier operators acting degree-wise on the homogeneous
// expansion: the degree-k part is scaled by lambda_k.
//
//   radialPower(s):  lambda_k = k^s (k >= 1), constant part dropped.
//   gammaRatio(s,t): lambda_k = G(N+1+s) G(N+1+k+s+t) / (G(N+1+s+t) G(N+1+k+s)).
//   custom:          user-supplied sequence, missing entries treated as 0.
struct MultiplierSpec {
    struct RadialPower {
        Cplx exponent;
    };
    struct GammaRatio {
        double s;
        double t;
    };
    struct Custom {
        std::vector<Cplx> lambda;  // lambda[k]
    };

    std::variant<RadialPower, GammaRatio, Custom> kind;
    bool dropConstantTerm = true;

    static MultiplierSpec radialPower(Cplx s);
    static MultiplierSpec gammaRatio(double s, double t);
    static MultiplierSpec custom(std::vector<Cplx> lambda, bool dropConstantTerm = false);

    // lambda_k for the given ambient dimension.
    Cplx lambda(int k, int dim) const;
};

HoloPoly applyMultiplier(const HoloPoly& f, const MultiplierSpec& m);

// Radial derivative R^s f = sum k^s f_k; the constant part is annihilated.
HoloPoly radialDerivative(const HoloPoly& f, Cplx s = 1.0);

// Inverse of R^s on functions with vanishing constant part.
HoloPoly radialDerivativeInverse(const HoloPoly& f, double s);

// Hadamard product g*f: the degree-k part of f is scaled by g[k]
// (missing entries are 0).
HoloPoly hadamard(const std::vector<double>& g, const HoloPoly& f);
HoloPoly hadamard(const std::vector<Cplx>& g, const HoloPoly& f);

}  // namespace ballfun
