#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ballfun/holo_poly.hpp"
#include "ballfun/quad/sphere_rule.hpp"

namespace ballfun {

// Difference operator along the rotation group: the degree-k part of f is
// multiplied by (e^{ikt} - 1)^n; exact in coefficient space.
HoloPoly rotationDifference(const HoloPoly& f, double t, int n);

// n-th iterated difference along a linear contraction U:
// sum_{j=0}^n (-1)^{n-j} binom(n,j) f(U^j z).
HoloPoly transformDifference(const HoloPoly& f, const Eigen::MatrixXcd& U, int n);

enum class ModulusKind { minus, unitary, plus };

struct ModulusEstimate {
    double value = 0.0;
    ModulusKind kind = ModulusKind::unitary;
    double delta = 0.0;
    int order = 1;
    double p = 2.0;
    int samples = 0;
    bool clamped = false;  // delta >= 2 was clamped (||U - I|| <= 2 always)
    std::string witness;
};

struct ModulusOptions {
    // Minus kind: true uses the raw constraint |t| < delta; false metrizes it
    // as ||e^{it} I - I|| = 2|sin(t/2)| < delta like the other kinds.
    bool rawAngleConvention = true;
};

// Sampled-supremum estimate of the order-n modulus of smoothness at step
// delta. The transform sets are nested (rotations within unitaries within
// contractions) so minus <= unitary <= plus holds by construction; the
// minus kind solves its one-parameter sup by grid + golden section. Values
// are lower bounds of the true sup; deterministic given the seed, and
// sample lists are prefix-stable so enlarging the budget never decreases
// the estimate.
ModulusEstimate modulusEstimate(const HoloPoly& f, double delta, int n, double p,
                                ModulusKind kind, int budget, std::uint64_t seed,
                                const SphereRule& rule, const ModulusOptions& opts = {});

struct ModulusTable {
    std::vector<double> delta;
    std::vector<double> value;
};

// Estimates over an increasing delta grid, with a running cumulative max so
// the table is nondecreasing row to row.
ModulusTable modulusDial(const HoloPoly& f, std::span<const double> deltaGrid, int n, double p,
                         ModulusKind kind, int budget, std::uint64_t seed, const SphereRule& rule,
                         const ModulusOptions& opts = {});

struct HardySobolevReport {
    double slope = 0.0;     // log-log fit on the small-delta half of the grid
    double ratioSup = 0.0;  // sup over the grid of value / delta^exponent
    ModulusTable table;
};

// Probes the O(delta^n) law for the order-n modulus on a log grid; exponent
// defaults to n but can be overridden (e.g. the Zygmund-type regime).
HardySobolevReport hardySobolevCheck(const HoloPoly& f, int n, double p, int budget,
                                     std::uint64_t seed, const SphereRule& rule,
                                     double exponent = -1.0, int gridSize = 12);

}  // namespace ballfun
