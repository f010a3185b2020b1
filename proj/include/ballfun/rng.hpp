#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "ballfun/multi_index.hpp"

namespace ballfun {

// Deterministic splitmix64 stream. Bit-for-bit reproducible regardless of
// platform or standard-library distribution internals, and indexable, so a
// prefix of a longer sample list is always identical to the shorter list.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t nextU64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Cplx gaussianCplx() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        return {r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2)};
    }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        Rng r(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)));
        r.nextU64();
        return r.nextU64() ^ b;
    }

    static std::uint64_t hashString(std::uint64_t seed, const char* s) {
        std::uint64_t h = seed ^ 1469598103934665603ULL;
        for (; *s; ++s) {
            h ^= static_cast<unsigned char>(*s);
            h *= 1099511628211ULL;
        }
        return h;
    }

private:
    std::uint64_t state_;
};

}  // namespace ballfun
