#include "ballfun/quad/radial_rule.hpp"

#include <cmath>

#include "ballfun/errors.hpp"
#include "ballfun/quad/gauss.hpp"

namespace ballfun {

RadialRule buildRadialRule(int dim, double qAlpha, int count) {
    if (dim < 1) throw RangeError("buildRadialRule: dim must be positive");
    if (count < 1) throw RangeError("buildRadialRule: need at least one node");
    if (!(qAlpha > 0.0)) throw WeightError("buildRadialRule: weight exponent must be positive");

    // Substitute u = r^2: the integral becomes
    // (1/2) int_0^1 g(sqrt(u)) (1-u)^{qAlpha-1} u^{N-1} du,
    // a Gauss-Jacobi integral whose endpoint singularity the rule absorbs.
    const Rule1D base = gaussJacobi01(count, qAlpha - 1.0, double(dim) - 1.0);
    RadialRule rule;
    rule.dim = dim;
    rule.qAlpha = qAlpha;
    rule.nodes.resize(base.nodes.size());
    rule.weights.resize(base.nodes.size());
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
        rule.nodes[i] = std::sqrt(base.nodes[i]);
        rule.weights[i] = 0.5 * base.weights[i];
    }
    return rule;
}

}  // namespace ballfun
