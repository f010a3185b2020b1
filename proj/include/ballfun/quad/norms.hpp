#pragma once

#include <functional>
#include <variant>

#include "ballfun/quad/radial_rule.hpp"
#include "ballfun/quad/sphere_rule.hpp"

namespace ballfun {

// Radial weight selectors. PowerWeight alpha gives the mixed norm
// ||f||_{p,q,alpha}; PhiWeight measures M_p(r, R^order f) against a general
// positive increasing majorant phi.
struct PowerWeight {
    double alpha;
};

struct PhiWeight {
    std::function<double(double)> phi;  // argument is 1 - r^2
    int order;                          // radial-derivative order n
};

struct NormSpec {
    double p = 2.0;
    double q = 2.0;
    std::variant<PowerWeight, PhiWeight> weight = PowerWeight{0.5};
};

// ||f||_{p,q,alpha} = (2N int_0^1 M_p^q(r,f) (1-r^2)^{q alpha - 1} r^{2N-1} dr)^{1/q};
// for q = infinity, sup_r (1-r^2)^alpha M_p(r,f) via grid + golden-section
// refinement. Nonintegrable weight (alpha <= 0, finite q, f != 0) returns
// +infinity. The radial rule must carry the matching weight exponent.
double mixedNorm(const HoloPoly& f, const NormSpec& spec, const SphereRule& sphereRule,
                 const RadialRule& radialRule);

// sup_r M_p(r, f); attained at r = 1 for polynomials.
double hardyNorm(const HoloPoly& f, double p, const SphereRule& rule);

// Growth seminorm against phi: with n = weight order and g = R^n f,
//   q < infinity: (2N int_0^1 (M_p(r,g) (1-r^2)^n / phi(1-r^2))^q
//                  (1-r^2)^{-1} r^{2N-1} dr)^{1/q},
//   q = infinity: sup_r M_p(r,g) (1-r^2)^n / phi(1-r^2).
// With phi(t) = t^alpha this is exactly the (p, q, n - alpha) mixed norm of
// R^n f. The radial rule must carry weight exponent q * n.
double phiSeminorm(const HoloPoly& f, const NormSpec& spec, const SphereRule& sphereRule,
                   const RadialRule& radialRule);

}  // namespace ballfun
