#include "ballfun/lpblocks.hpp"

#include <algorithm>
#include <cmath>

#include "ballfun/errors.hpp"
#include "ballfun/multiplier.hpp"
#include "ballfun/quad/norms.hpp"

namespace ballfun {

namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double BlockBasis::omega(double t) {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    const double a = bump(2.0 - t);
    const double b = bump(t - 1.0);
    return a / (a + b);
}

double BlockBasis::psi(double t) { return omega(t / 2.0) - omega(t); }

BlockBasis BlockBasis::build(int maxDegree, bool sharp) {
    if (maxDegree < 1) throw RangeError("BlockBasis: maxDegree must be at least 1");
    BlockBasis basis;
    basis.maxDegree_ = maxDegree;
    basis.sharp_ = sharp;

    // Enough blocks so every degree k <= maxDegree is fully covered:
    // smooth block nu spans [2^{nu-1}, 2^{nu+1}), sharp block nu spans
    // [2^{nu-1}, 2^nu); both need nu up to ceil(log2 maxDegree) + 1.
    int top = 1;
    while ((1 << (top - 1)) < maxDegree) ++top;  // top = ceil(log2 D) + 1
    if (sharp && (1 << (top - 1)) == maxDegree) ++top;

    for (int nu = 0; nu < top; ++nu) {
        std::vector<double> c(std::size_t(maxDegree) + 1, 0.0);
        for (int k = 0; k <= maxDegree; ++k) {
            if (nu == 0) {
                c[std::size_t(k)] = k <= 1 ? 1.0 : 0.0;
            } else if (sharp) {
                // Sharp bands partition {2, 3, ...}: block nu keeps
                // 2^{nu-1} <= k < 2^nu, with degrees 0 and 1 in block 0.
                c[std::size_t(k)] = k >= 2 && (1 << (nu - 1)) <= k && k < (1 << nu) ? 1.0 : 0.0;
            } else {
                c[std::size_t(k)] = psi(double(k) / double(1 << (nu - 1)));
            }
        }
        basis.coeffs_.push_back(std::move(c));
    }
    return basis;
}

double BlockBasis::coefficient(int nu, int k) const {
    if (nu < 0 || nu > maxBlock()) throw RangeError("BlockBasis: block index out of range");
    if (k < 0 || k > maxDegree_) return 0.0;
    return coeffs_[std::size_t(nu)][std::size_t(k)];
}

const std::vector<double>& BlockBasis::blockCoefficients(int nu) const {
    if (nu < 0 || nu > maxBlock()) throw RangeError("BlockBasis: block index out of range");
    return coeffs_[std::size_t(nu)];
}

HoloPoly blockProject(const HoloPoly& f, int nu, const BlockBasis& basis) {
    return hadamard(basis.blockCoefficients(nu), f);
}

HoloPoly windowProject(const HoloPoly& f, int nu, const BlockBasis& basis) {
    std::vector<double> c(std::size_t(basis.maxDegree()) + 1, 0.0);
    for (int j = nu - 1; j <= nu + 1; ++j) {
        if (j < 0 || j > basis.maxBlock()) continue;
        const auto& b = basis.blockCoefficients(j);
        for (std::size_t k = 0; k < c.size(); ++k) c[k] += b[k];
    }
    return hadamard(c, f);
}

HoloPoly partialSumProject(const HoloPoly& f, int nu, const BlockBasis& basis) {
    std::vector<double> c(std::size_t(basis.maxDegree()) + 1, 0.0);
    for (int j = 0; j < nu && j <= basis.maxBlock(); ++j) {
        const auto& b = basis.blockCoefficients(j);
        for (std::size_t k = 0; k < c.size(); ++k) c[k] += b[k];
    }
    return hadamard(c, f);
}

double dyadicNorm(const HoloPoly& f, const DyadicNormSpec& spec, const BlockBasis& basis,
                  const SphereRule& rule) {
    if (!(spec.p >= 1.0) || !(spec.q >= 1.0)) {
        throw RangeError("dyadicNorm: exponents must lie in [1, infinity]");
    }
    if (std::isinf(spec.q)) {
        double best = 0.0;
        for (int nu = 0; nu <= basis.maxBlock(); ++nu) {
            const double a =
                std::pow(2.0, -double(nu) * spec.beta) * hardyNorm(blockProject(f, nu, basis), spec.p, rule);
            best = std::max(best, a);
        }
        return best;
    }
    double sum = 0.0;
    for (int nu = 0; nu <= basis.maxBlock(); ++nu) {
        const double a =
            std::pow(2.0, -double(nu) * spec.beta) * hardyNorm(blockProject(f, nu, basis), spec.p, rule);
        sum += std::pow(a, spec.q);
    }
    return std::pow(sum, 1.0 / spec.q);
}

std::vector<double> blockSpectrum(const HoloPoly& f, double p, const BlockBasis& basis,
                                  const SphereRule& rule) {
    std::vector<double> out;
    for (int nu = 0; nu <= basis.maxBlock(); ++nu) {
        out.push_back(hardyNorm(blockProject(f, nu, basis), p, rule));
    }
    return out;
}

TailBound sequenceTailBound(std::span<const Cplx> s, double alpha, double q) {
    if (!(alpha > 0.0)) throw RangeError("sequenceTailBound: alpha must be positive");
    if (!(q >= 1.0)) throw RangeError("sequenceTailBound: q must lie in [1, infinity]");
    auto at = [&](int idx) { return idx >= 0 && idx < int(s.size()) ? s[std::size_t(idx)] : Cplx(0.0); };
    double lhs = 0.0, rhs = 0.0;
    const bool qInf = std::isinf(q);
    for (int nu = 1; nu <= int(s.size()); ++nu) {
        const double w = std::pow(2.0, double(nu) * alpha);
        const double a = w * std::abs(at(nu - 1));
        const double d = w * std::abs(at(nu - 1) - at(nu));
        if (qInf) {
            lhs = std::max(lhs, a);
            rhs = std::max(rhs, d);
        } else {
            lhs += std::pow(a, q);
            rhs += std::pow(d, q);
        }
    }
    if (!qInf) {
        lhs = std::pow(lhs, 1.0 / q);
        rhs = std::pow(rhs, 1.0 / q);
    }
    return {lhs, rhs / (1.0 - std::pow(2.0, -alpha))};
}

}  // namespace ballfun
