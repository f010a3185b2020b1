#include "ballfun/multiplier.hpp"

#include <cmath>

namespace ballfun {

MultiplierSpec MultiplierSpec::radialPower(Cplx s) {
    return MultiplierSpec{RadialPower{s}, true};
}

MultiplierSpec MultiplierSpec::gammaRatio(double s, double t) {
    return MultiplierSpec{GammaRatio{s, t}, false};
}

MultiplierSpec MultiplierSpec::custom(std::vector<Cplx> lambda, bool dropConstantTerm) {
    return MultiplierSpec{Custom{std::move(lambda)}, dropConstantTerm};
}

static bool isNegativeInteger(double x) {
    return x < 0.0 && std::abs(x - std::round(x)) < 1e-12;
}

static double gammaLogAbs(double x, int& sign) {
    // lgamma of possibly negative non-integer argument, with sign tracking.
    if (x > 0.0) {
        sign = 1;
        return std::lgamma(x);
    }
    // Reflection handled by std::lgamma; recover the sign of Gamma(x).
    double l = std::lgamma(x);
    double fl = std::floor(x);
    int negCount = static_cast<int>(-fl);  // number of poles passed
    sign = (negCount % 2 == 0) ? 1 : -1;
    return l;
}

Cplx MultiplierSpec::lambda(int k, int dim) const {
    if (std::holds_alternative<RadialPower>(kind)) {
        const Cplx s = std::get<RadialPower>(kind).exponent;
        if (k == 0) return dropConstantTerm ? Cplx(0.0) : Cplx(s == Cplx(0.0) ? 1.0 : 0.0);
        return std::exp(s * std::log(static_cast<double>(k)));
    }
    if (std::holds_alternative<GammaRatio>(kind)) {
        const auto& g = std::get<GammaRatio>(kind);
        const double N = dim;
        if (isNegativeInteger(N + g.s) || isNegativeInteger(N + g.s + g.t))
            throw InvalidMultiplierError("gammaRatio: N+s or N+s+t is a negative integer");
        if (dropConstantTerm && k == 0) return 0.0;
        int s1, s2, s3, s4;
        const double logv = gammaLogAbs(N + 1 + g.s, s1) + gammaLogAbs(N + 1 + k + g.s + g.t, s2) -
                            gammaLogAbs(N + 1 + g.s + g.t, s3) - gammaLogAbs(N + 1 + k + g.s, s4);
        return static_cast<double>(s1 * s2 * s3 * s4) * std::exp(logv);
    }
    const auto& c = std::get<Custom>(kind);
    if (dropConstantTerm && k == 0) return 0.0;
    if (k < 0 || k >= static_cast<int>(c.lambda.size())) return 0.0;
    return c.lambda[k];
}

HoloPoly applyMultiplier(const HoloPoly& f, const MultiplierSpec& m) {
    HoloPoly out(f.dim(), f.maxDegree());
    for (int k = 0; k <= f.maxDegree(); ++k) {
        const Cplx lam = m.lambda(k, f.dim());
        if (lam == Cplx(0.0)) continue;
        for (const auto& [alpha, c] : f.part(k)) out.set(alpha, lam * c);
    }
    return out;
}

HoloPoly radialDerivative(const HoloPoly& f, Cplx s) {
    return applyMultiplier(f, MultiplierSpec::radialPower(s));
}

HoloPoly radialDerivativeInverse(const HoloPoly& f, double s) {
    if (!f.part(0).empty()) {
        for (const auto& [alpha, c] : f.part(0))
            if (c != Cplx(0.0)) throw InvertibilityError("radialDerivativeInverse: nonzero constant part");
    }
    return applyMultiplier(f, MultiplierSpec::radialPower(-s));
}

HoloPoly hadamard(const std::vector<double>& g, const HoloPoly& f) {
    std::vector<Cplx> gc(g.begin(), g.end());
    return hadamard(gc, f);
}

HoloPoly hadamard(const std::vector<Cplx>& g, const HoloPoly& f) {
    return applyMultiplier(f, MultiplierSpec::custom(g));
}

}  // namespace ballfun
