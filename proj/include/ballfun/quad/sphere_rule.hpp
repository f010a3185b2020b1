#pragma once

#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "ballfun/mixed_poly.hpp"

namespace ballfun {

// One radial-profile slice of the product rule: fixed moduli |zeta_j| with
// sum of squares 1, carrying the weight of the profile quadrature node.
struct SphereSlice {
    std::vector<double> modulus;
    double weight;
};

// Quadrature rule on the unit sphere of C^N exact for all monomial moments
// zeta^alpha conj(zeta)^beta with |alpha| + |beta| <= exactDegree.
//
// Construction: equispaced angles per coordinate (kills every nonzero
// angular frequency up to exactDegree) tensored with Gauss-Jacobi rules in
// stick-breaking coordinates for the simplex of squared moduli, whose
// uniform density is the push-forward of normalized surface measure.
class SphereRule {
public:
    static SphereRule build(int dim, int exactDegree);

    int dim() const { return dim_; }
    int exactDegree() const { return exactDegree_; }
    int anglesPerDim() const { return anglesPerDim_; }
    const std::vector<SphereSlice>& slices() const { return slices_; }
    std::size_t nodeCount() const;

    // Explicit node enumeration (slice-major, angle indices lexicographic).
    void forEachNode(const std::function<void(std::span<const Cplx>, double)>& fn) const;

    nlohmann::json toJson(std::size_t maxExplicitNodes = 2000000) const;
    static SphereRule fromJson(const nlohmann::json& j);

private:
    int dim_ = 1;
    int exactDegree_ = 0;
    int anglesPerDim_ = 1;
    std::vector<SphereSlice> slices_;
};

// Integral mean M_p(r, f): the L^p norm of z -> f(rz) over the sphere;
// for p = infinity, the max over rule nodes.
double sphereMean(const HoloPoly& f, double r, double p, const SphereRule& rule);
double sphereMean(const MixedPoly& f, double r, double p, const SphereRule& rule);

// M_p of z -> combine(values of the polys at z). Shares the node grid so
// pointwise combinations (gradient norms, tangential gradients) price one
// fast evaluation per polynomial.
enum class Combine {
    AbsSum,      // sum_i w_i |v_i|
    SqrtSumSq,   // sqrt(sum_i w_i |v_i|^2)
};
double sphereMeanCombined(std::span<const MixedPoly> polys, std::span<const double> weights,
                          Combine mode, double r, double p, const SphereRule& rule);
double sphereMeanCombined(std::span<const HoloPoly> polys, std::span<const double> weights,
                          Combine mode, double r, double p, const SphereRule& rule);

// Generic node-by-node path for arbitrary integrands (oracles, probes).
double sphereMeanFn(const SphereRule& rule, double r, double p,
                    const std::function<double(std::span<const Cplx>)>& fn);

// M_p(r, grad_s f) with the l2-over-ordered-tuples gradient.
double gradientMean(const HoloPoly& f, int s, double r, double p, const SphereRule& rule);

}  // namespace ballfun
