#include <cmath>

#include "ballfun/errors.hpp"
#include "ballfun/harness.hpp"
#include "ballfun/rng.hpp"
#include "ballfun/serialization.hpp"

#include <fstream>

namespace ballfun::harness {

namespace {

// Coefficient stream indexed by (function seed, multi-index), so the same
// function truncated at a higher degree keeps its low-degree coefficients.
Cplx coefficientAt(std::uint64_t fnSeed, const MultiIndex& alpha) {
    std::uint64_t h = fnSeed;
    for (int e : alpha) h = Rng::mix(h, static_cast<std::uint64_t>(e) + 1);
    Rng rng(h);
    return rng.gaussianCplx();
}

HoloPoly randomDecayFunction(const FamilySpec& spec, std::uint64_t fnSeed) {
    HoloPoly f(spec.dim, spec.maxDegree);
    for (const auto& alpha : monomialsUpTo(spec.dim, spec.maxDegree)) {
        f.set(alpha, std::pow(spec.decay, degreeOf(alpha)) * coefficientAt(fnSeed, alpha));
    }
    return f;
}

HoloPoly lacunaryFunction(const FamilySpec& spec, std::uint64_t fnSeed) {
    int levels = spec.levels;
    if (levels < 0) {
        levels = 0;
        while ((1 << (levels + 1)) <= spec.maxDegree) ++levels;
    }
    HoloPoly f(spec.dim, spec.maxDegree);
    for (int nu = 0; nu <= levels && (1 << nu) <= spec.maxDegree; ++nu) {
        MultiIndex alpha(static_cast<std::size_t>(spec.dim), 0);
        alpha[0] = 1 << nu;
        f.set(alpha, std::pow(2.0, -double(nu)) * coefficientAt(fnSeed, alpha));
    }
    return f;
}

HoloPoly blockConcentratedFunction(const FamilySpec& spec, std::uint64_t fnSeed) {
    const int lo = spec.block >= 1 ? 1 << (spec.block - 1) : 0;
    const int hi = std::min(spec.maxDegree, (1 << (spec.block + 1)) - 1);
    if (lo > spec.maxDegree) {
        throw ConfigError("makeFamily: blockConcentrated band lies above maxDegree");
    }
    HoloPoly f(spec.dim, spec.maxDegree);
    for (int k = lo; k <= hi; ++k) {
        for (const auto& alpha : monomialsOfDegree(spec.dim, k)) {
            f.set(alpha, coefficientAt(fnSeed, alpha));
        }
    }
    return f;
}

std::vector<HoloPoly> loadUserFile(const FamilySpec& spec) {
    std::ifstream in(spec.path);
    if (!in) throw ConfigError("makeFamily: cannot open " + spec.path);
    nlohmann::json j;
    in >> j;
    std::vector<HoloPoly> out;
    if (j.is_array()) {
        for (const auto& item : j) out.push_back(holoPolyFromJson(item));
    } else {
        out.push_back(holoPolyFromJson(j));
    }
    return out;
}

}  // namespace

std::vector<HoloPoly> makeFamily(const FamilySpec& spec) {
    if (spec.dim < 1) throw ConfigError("makeFamily: dim must be >= 1");
    if (spec.maxDegree < 1) throw ConfigError("makeFamily: maxDegree must be >= 1");
    if (spec.kind == FamilyKind::userFile) return loadUserFile(spec);
    if (spec.count < 1) throw ConfigError("makeFamily: count must be >= 1");

    std::vector<HoloPoly> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    for (int j = 0; j < spec.count; ++j) {
        const std::uint64_t fnSeed = Rng::mix(spec.seed, static_cast<std::uint64_t>(j));
        switch (spec.kind) {
            case FamilyKind::randomDecay:
                out.push_back(randomDecayFunction(spec, fnSeed));
                break;
            case FamilyKind::lacunary:
                out.push_back(lacunaryFunction(spec, fnSeed));
                break;
            case FamilyKind::monomial: {
                MultiIndex alpha = spec.exponent;
                if (alpha.empty()) {
                    alpha.assign(static_cast<std::size_t>(spec.dim), 0);
                    alpha[0] = std::min(spec.maxDegree, 3 + j);
                }
                if (static_cast<int>(alpha.size()) != spec.dim || degreeOf(alpha) > spec.maxDegree) {
                    throw ConfigError("makeFamily: monomial exponent incompatible with dim/maxDegree");
                }
                out.push_back(monomial(spec.dim, alpha, 1.0, spec.maxDegree));
                break;
            }
            case FamilyKind::blockConcentrated:
                out.push_back(blockConcentratedFunction(spec, fnSeed));
                break;
            case FamilyKind::userFile:
                break;  // handled above
        }
    }
    return out;
}

}  // namespace ballfun::harness
