#include "ballfun/quad/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ballfun/errors.hpp"
#include "ballfun/multiplier.hpp"

namespace ballfun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void checkSpec(const NormSpec& spec) {
    if (!(spec.p >= 1.0)) throw RangeError("NormSpec: p must lie in [1, infinity]");
    if (!(spec.q >= 1.0)) throw RangeError("NormSpec: q must lie in [1, infinity]");
}

// Maximizes g on a bracket [lo, hi] by golden-section search (g unimodal on
// the bracket in practice; a local refinement of a grid maximum otherwise).
double goldenMax(const std::function<double(double)>& g, double lo, double hi, int iters = 60) {
    const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - invPhi * (b - a);
    double x2 = a + invPhi * (b - a);
    double g1 = g(x1), g2 = g(x2);
    for (int i = 0; i < iters; ++i) {
        if (g1 < g2) {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + invPhi * (b - a);
            g2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - invPhi * (b - a);
            g1 = g(x1);
        }
    }
    return std::max(g1, g2);
}

// Sup over r in [0, 1) of a weighted-mean profile: coarse grid (radial rule
// nodes plus dyadic points near 1) followed by golden-section refinement
// around the grid maximum.
double supOverRadius(const std::function<double(double)>& g, const RadialRule& radialRule) {
    std::vector<double> grid = radialRule.nodes;
    grid.push_back(0.0);
    for (int j = 1; j <= 40; ++j) grid.push_back(1.0 - std::pow(2.0, -j));
    std::sort(grid.begin(), grid.end());
    double best = 0.0;
    std::size_t bestIdx = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = g(grid[i]);
        if (v > best) {
            best = v;
            bestIdx = i;
        }
    }
    const double lo = bestIdx == 0 ? 0.0 : grid[bestIdx - 1];
    const double hi = bestIdx + 1 == grid.size() ? 1.0 - 1e-14 : grid[bestIdx + 1];
    return std::max(best, goldenMax(g, lo, hi));
}

}  // namespace

double mixedNorm(const HoloPoly& f, const NormSpec& spec, const SphereRule& sphereRule,
                 const RadialRule& radialRule) {
    checkSpec(spec);
    const auto* pw = std::get_if<PowerWeight>(&spec.weight);
    if (pw == nullptr) throw WeightError("mixedNorm: requires a power weight");
    if (f.isZero()) return 0.0;
    const double twoN = 2.0 * double(f.dim());

    if (std::isinf(spec.q)) {
        if (pw->alpha < 0.0) return kInf;  // (1-r^2)^alpha M_p blows up at r = 1
        auto profile = [&](double r) {
            return std::pow(1.0 - r * r, pw->alpha) * sphereMean(f, r, spec.p, sphereRule);
        };
        return supOverRadius(profile, radialRule);
    }

    if (pw->alpha <= 0.0) return kInf;  // nonintegrable radial weight
    const double expected = spec.q * pw->alpha;
    if (std::abs(radialRule.qAlpha - expected) > 1e-9 || radialRule.dim != f.dim()) {
        throw WeightError("mixedNorm: radial rule weight does not match the requested q and alpha");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < radialRule.nodes.size(); ++i) {
        const double mp = sphereMean(f, radialRule.nodes[i], spec.p, sphereRule);
        sum += radialRule.weights[i] * std::pow(mp, spec.q);
    }
    return std::pow(twoN * sum, 1.0 / spec.q);
}

double hardyNorm(const HoloPoly& f, double p, const SphereRule& rule) {
    if (!(p >= 1.0)) throw RangeError("hardyNorm: p must lie in [1, infinity]");
    return sphereMean(f, 1.0, p, rule);
}

double phiSeminorm(const HoloPoly& f, const NormSpec& spec, const SphereRule& sphereRule,
                   const RadialRule& radialRule) {
    checkSpec(spec);
    const auto* pw = std::get_if<PhiWeight>(&spec.weight);
    if (pw == nullptr) throw WeightError("phiSeminorm: requires a phi weight");
    if (pw->order < 0) throw RangeError("phiSeminorm: derivative order must be nonnegative");
    if (f.isZero()) return 0.0;

    HoloPoly g = f;
    for (int i = 0; i < pw->order; ++i) g = radialDerivative(g);
    const double n = double(pw->order);
    auto phiAt = [&](double t) {
        const double v = pw->phi(t);
        if (!(v > 0.0)) throw WeightError("phiSeminorm: phi must be positive on (0, 1]");
        return v;
    };

    if (std::isinf(spec.q)) {
        auto profile = [&](double r) {
            const double t = 1.0 - r * r;
            return sphereMean(g, r, spec.p, sphereRule) * std::pow(t, n) / phiAt(t);
        };
        return supOverRadius(profile, radialRule);
    }

    // Fold (1-r^2)^{qn-1} r^{2N-1} into the rule weight and evaluate the
    // remaining smooth factor (M_p / phi)^q at the nodes.
    const double expected = spec.q * n;
    if (std::abs(radialRule.qAlpha - expected) > 1e-9 || radialRule.dim != f.dim()) {
        throw WeightError("phiSeminorm: radial rule weight does not match the requested q and order");
    }
    const double twoN = 2.0 * double(f.dim());
    double sum = 0.0;
    for (std::size_t i = 0; i < radialRule.nodes.size(); ++i) {
        const double r = radialRule.nodes[i];
        const double mp = sphereMean(g, r, spec.p, sphereRule);
        sum += radialRule.weights[i] * std::pow(mp / phiAt(1.0 - r * r), spec.q);
    }
    return std::pow(twoN * sum, 1.0 / spec.q);
}

}  // namespace ballfun
