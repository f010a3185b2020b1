#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "ballfun/derivative_ops.hpp"
#include "ballfun/multiplier.hpp"
#include "ballfun/linear_ops.hpp"
#include "ballfun/quad/gauss.hpp"
#include "ballfun/quad/norms.hpp"
#include "ballfun/quad/radial_rule.hpp"
#include "ballfun/quad/sphere_rule.hpp"
#include "ballfun/rng.hpp"

using namespace ballfun;

namespace {

HoloPoly randomPoly(int dim, int maxDegree, Rng& rng, double decay = 1.0) {
    HoloPoly f(dim, maxDegree);
    for (const auto& alpha : monomialsUpTo(dim, maxDegree)) {
        const double scale = std::pow(decay, degreeOf(alpha));
        f.set(alpha, scale * rng.gaussianCplx());
    }
    return f;
}

// Quadrature value of the monomial moment int zeta^alpha conj(zeta)^beta.
Cplx quadMoment(const SphereRule& rule, const MultiIndex& alpha, const MultiIndex& beta) {
    Cplx total = 0.0;
    rule.forEachNode([&](std::span<const Cplx> z, double w) {
        Cplx v = 1.0;
        for (std::size_t j = 0; j < z.size(); ++j) {
            for (int t = 0; t < alpha[j]; ++t) v *= z[j];
            for (int t = 0; t < beta[j]; ++t) v *= std::conj(z[j]);
        }
        total += w * v;
    });
    return total;
}

std::vector<Cplx> randomSpherePoint(int dim, Rng& rng) {
    std::vector<Cplx> z(static_cast<std::size_t>(dim));
    double norm2 = 0.0;
    for (auto& c : z) {
        c = rng.gaussianCplx();
        norm2 += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : z) c *= inv;
    return z;
}

}  // namespace

TEST_CASE("circle rule: moments and structure") {
    const auto rule = SphereRule::build(1, 10);
    CHECK(rule.nodeCount() == 22);
    double wsum = 0.0;
    rule.forEachNode([&](std::span<const Cplx> z, double w) {
        CHECK(std::abs(std::abs(z[0]) - 1.0) < 1e-14);
        wsum += w;
    });
    CHECK(std::abs(wsum - 1.0) < 1e-14);
    CHECK(std::abs(quadMoment(rule, {0}, {0}) - 1.0) < 1e-14);
    for (int k = 1; k <= 10; ++k) {
        CHECK(std::abs(quadMoment(rule, {k}, {0})) < 1e-13);
    }
}

TEST_CASE("sphere rule: N=2 second moments vs closed form and Monte Carlo") {
    const auto rule = SphereRule::build(2, 8);
    const double viaQuad = quadMoment(rule, {1, 0}, {1, 0}).real();
    CHECK(std::abs(viaQuad - 0.5) < 1e-12);
    CHECK(std::abs(monomialSphereMoment(2, {1, 0}) - 0.5) < 1e-15);
    CHECK(std::abs(quadMoment(rule, {1, 0}, {0, 1})) < 1e-12);

    // Independent Monte Carlo estimate of the same moment.
    Rng rng(20240901);
    const int samples = 10000000;
    double acc = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Cplx a = rng.gaussianCplx();
        const Cplx b = rng.gaussianCplx();
        acc += std::norm(a) / (std::norm(a) + std::norm(b));
    }
    CHECK(std::abs(acc / samples - 0.5) < 1e-3);
}

TEST_CASE("sphere rule: full moment exactness through the advertised degree") {
    for (int dim : {2, 3}) {
        const int d = dim == 2 ? 8 : 6;
        const auto rule = SphereRule::build(dim, d);
        for (const auto& alpha : monomialsUpTo(dim, d)) {
            for (const auto& beta : monomialsUpTo(dim, d - degreeOf(alpha))) {
                const Cplx got = quadMoment(rule, alpha, beta);
                const double want = alpha == beta ? monomialSphereMoment(dim, alpha) : 0.0;
                CHECK(std::abs(got - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("sphere rule: capability and range errors") {
    CHECK_THROWS_AS(SphereRule::build(5, 4), CapabilityError);
    CHECK_THROWS_AS(SphereRule::build(0, 4), RangeError);
    CHECK_THROWS_AS(SphereRule::build(2, -1), RangeError);
}

TEST_CASE("sphere rule: JSON round trip") {
    const auto rule = SphereRule::build(2, 5);
    const auto j = rule.toJson();
    CHECK(j.at("dim") == 2);
    CHECK(j.at("nodes").size() == rule.nodeCount());
    double wsum = 0.0;
    for (const auto& w : j.at("weights")) wsum += w.get<double>();
    CHECK(std::abs(wsum - 1.0) < 1e-14);
    const auto back = SphereRule::fromJson(j);
    CHECK(back.nodeCount() == rule.nodeCount());
    CHECK(back.exactDegree() == 5);
}

TEST_CASE("sphereMean: closed forms") {
    const auto circle = SphereRule::build(1, 12);
    const auto ball2 = SphereRule::build(2, 12);

    HoloPoly c(1, 0);
    c.set({0}, Cplx(3.0, -4.0));
    for (double p : {1.0, 2.0, 3.5, std::numeric_limits<double>::infinity()}) {
        CHECK(sphereMean(c, 0.7, p, circle) == doctest::Approx(5.0).epsilon(1e-12));
    }

    const auto zk = monomial(1, {5});
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
        CHECK(sphereMean(zk, 0.8, p, circle) == doctest::Approx(std::pow(0.8, 5)).epsilon(1e-12));
    }

    const auto z1 = monomial(2, {1, 0});
    CHECK(sphereMean(z1, 0.6, 2.0, ball2) == doctest::Approx(0.6 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("sphereMean: separable evaluator agrees with direct node evaluation") {
    Rng rng(11);
    for (int dim : {1, 2, 3}) {
        const int D = 5;
        const auto rule = SphereRule::build(dim, 2 * D + 2);
        const auto f = randomPoly(dim, D, rng);
        for (double p : {1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
            const double fast = sphereMean(f, 0.9, p, rule);
            const double slow = sphereMeanFn(
                rule, 0.9, p, [&](std::span<const Cplx> z) { return std::abs(f.eval(z)); });
            CHECK(fast == doctest::Approx(slow).epsilon(1e-10));
        }

        // MixedPoly path through a tangential derivative (leaves the class).
        if (dim >= 2) {
            const auto g = tangentialApplyOne(MixedPoly::fromHolo(f), {1, 2, false});
            const double fast = sphereMean(g, 0.8, 2.0, rule);
            const double slow = sphereMeanFn(
                rule, 0.8, 2.0, [&](std::span<const Cplx> z) { return std::abs(g.eval(z)); });
            CHECK(fast == doctest::Approx(slow).epsilon(1e-10));
        }
    }
}

TEST_CASE("sphereMean: monotone in r and covariant under dilation") {
    Rng rng(12);
    const auto rule = SphereRule::build(2, 16);
    const auto f = randomPoly(2, 7, rng);
    double prev = 0.0;
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        const double cur = sphereMean(f, r, 3.0, rule);
        CHECK(cur >= prev - 1e-10);
        prev = cur;
    }
    const auto fr = dilate(f, 0.6);
    CHECK(sphereMean(fr, 0.9, 3.0, rule) ==
          doctest::Approx(sphereMean(f, 0.9 * 0.6, 3.0, rule)).epsilon(1e-12));
}

TEST_CASE("hardyNorm: Parseval consistency at p=2") {
    Rng rng(13);
    for (int dim : {1, 2, 3}) {
        const int D = 6;
        const auto rule = SphereRule::build(dim, 2 * D);
        const auto f = randomPoly(dim, D, rng);
        double sum = 0.0;
        f.forEachTerm([&](const MultiIndex& alpha, Cplx c) {
            sum += std::norm(c) * monomialSphereMoment(dim, alpha);
        });
        CHECK(hardyNorm(f, 2.0, rule) == doctest::Approx(std::sqrt(sum)).epsilon(1e-10));
    }
    const auto circle = SphereRule::build(1, 8);
    CHECK(hardyNorm(monomial(1, {3}), 4.0, circle) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("radial rule: beta-moment exactness") {
    const int dim = 2;
    const double qAlpha = 1.7;
    const auto rule = buildRadialRule(dim, qAlpha, 12);
    REQUIRE(rule.nodes.size() == 12);
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    CHECK(rule.nodes.front() > 0.0);
    CHECK(rule.nodes.back() < 1.0);
    // int_0^1 r^{2k} (1-r^2)^{qAlpha-1} r^{2N-1} dr = B(k+N, qAlpha) / 2.
    for (int k = 0; k <= 10; ++k) {
        double got = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            got += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
        }
        const double want = 0.5 * std::exp(std::lgamma(k + dim) + std::lgamma(qAlpha) -
                                           std::lgamma(k + dim + qAlpha));
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK_THROWS_AS(buildRadialRule(2, 0.0, 5), WeightError);
}

TEST_CASE("mixedNorm: agrees with the volume-integral Monte Carlo oracle at p=q") {
    Rng rng(14);
    const int dim = 2;
    const double p = 2.0, alpha = 1.0;
    const auto f = randomPoly(dim, 4, rng);
    const auto sphere = SphereRule::build(dim, 2 * 4 + 4);
    const auto radial = buildRadialRule(dim, p * alpha, 30);
    const NormSpec spec{p, p, PowerWeight{alpha}};
    const double viaQuad = mixedNorm(f, spec, sphere, radial);

    // Uniform samples on the ball: sphere direction times r with density
    // 2N r^{2N-1}; the normalized volume integral of |f|^p (1-|z|^2)^{p a - 1}.
    Rng mc(20240902);
    const int samples = 1000000;
    double acc = 0.0;
    std::vector<Cplx> z(dim);
    for (int i = 0; i < samples; ++i) {
        auto zeta = randomSpherePoint(dim, mc);
        const double r = std::pow(mc.uniform(), 1.0 / (2.0 * dim));
        for (int j = 0; j < dim; ++j) z[std::size_t(j)] = r * zeta[std::size_t(j)];
        acc += std::pow(std::abs(f.eval(z)), p) * std::pow(1.0 - r * r, p * alpha - 1.0);
    }
    const double viaMc = std::pow(acc / samples, 1.0 / p);
    CHECK(viaQuad == doctest::Approx(viaMc).epsilon(0.01));
}

TEST_CASE("mixedNorm: q=infinity closed form for circle monomials") {
    const int k = 6;
    const double alpha = 0.8;
    const auto sphere = SphereRule::build(1, 2 * k);
    const auto radial = buildRadialRule(1, 1.0, 24);
    NormSpec spec;
    spec.p = 3.0;
    spec.q = std::numeric_limits<double>::infinity();
    spec.weight = PowerWeight{alpha};
    const double got = mixedNorm(monomial(1, {k}), spec, sphere, radial);
    // max_r (1-r^2)^alpha r^k attained at r^2 = k / (k + 2 alpha).
    const double u = double(k) / (k + 2.0 * alpha);
    const double want = std::pow(1.0 - u, alpha) * std::pow(u, k / 2.0);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("mixedNorm: zero, divergence marker, and weight mismatch") {
    const auto sphere = SphereRule::build(2, 8);
    const auto radial = buildRadialRule(2, 2.0, 16);
    const NormSpec spec{2.0, 2.0, PowerWeight{1.0}};
    CHECK(mixedNorm(HoloPoly(2, 3), spec, sphere, radial) == 0.0);

    const auto f = monomial(2, {1, 1});
    const NormSpec bad{2.0, 2.0, PowerWeight{-0.5}};
    CHECK(std::isinf(mixedNorm(f, bad, sphere, radial)));

    const NormSpec mismatched{2.0, 2.0, PowerWeight{0.7}};
    CHECK_THROWS_AS(mixedNorm(f, mismatched, sphere, radial), WeightError);
}

TEST_CASE("mixedNorm: dilation contracts and radial refinement converges") {
    Rng rng(15);
    const int dim = 2;
    const auto f = randomPoly(dim, 16, rng, 0.8);
    const auto sphere = SphereRule::build(dim, 2 * 16 + 2);
    const NormSpec spec{3.0, 2.5, PowerWeight{0.9}};
    const auto radial = buildRadialRule(dim, spec.q * 0.9, 24);
    const double base = mixedNorm(f, spec, sphere, radial);
    for (double rho : {0.5, 0.9, 1.0}) {
        CHECK(mixedNorm(dilate(f, rho), spec, sphere, radial) <= base + 1e-10);
    }

    const auto g = randomPoly(dim, 64, rng, 0.9);
    const auto sphereHi = SphereRule::build(dim, 2 * 64 + 2);
    const auto coarse = buildRadialRule(dim, spec.q * 0.9, 40);
    const auto fine = buildRadialRule(dim, spec.q * 0.9, 80);
    const double a = mixedNorm(g, spec, sphereHi, coarse);
    const double b = mixedNorm(g, spec, sphereHi, fine);
    CHECK(std::abs(a - b) / b < 1e-3);
}

TEST_CASE("phiSeminorm: power phi reduces to the mixed norm of R^n f") {
    Rng rng(16);
    const int dim = 2, n = 2;
    const double p = 2.0, q = 2.0, alpha = 0.5;
    const auto f = randomPoly(dim, 6, rng);
    const auto sphere = SphereRule::build(dim, 2 * 6 + 2);

    NormSpec phiSpec;
    phiSpec.p = p;
    phiSpec.q = q;
    phiSpec.weight = PhiWeight{[&](double t) { return std::pow(t, alpha); }, n};
    const auto radialPhi = buildRadialRule(dim, q * n, 300);
    const double viaPhi = phiSeminorm(f, phiSpec, sphere, radialPhi);

    HoloPoly g = radialDerivative(radialDerivative(f));
    const NormSpec powerSpec{p, q, PowerWeight{n - alpha}};
    const auto radialPow = buildRadialRule(dim, q * (n - alpha), 60);
    const double viaPower = mixedNorm(g, powerSpec, sphere, radialPow);
    CHECK(viaPhi == doctest::Approx(viaPower).epsilon(0.01));

    NormSpec badPhi = phiSpec;
    badPhi.weight = PhiWeight{[](double) { return -1.0; }, n};
    CHECK_THROWS_AS(phiSeminorm(f, badPhi, sphere, radialPhi), WeightError);
    CHECK(phiSeminorm(HoloPoly(dim, 2), phiSpec, sphere, radialPhi) == 0.0);
}

TEST_CASE("phiSeminorm: lacunary series stable under truncation doubling") {
    auto lacunary = [](int maxDegree) {
        HoloPoly f(1, maxDegree);
        for (int nu = 0; (1 << nu) <= maxDegree; ++nu) {
            f.set({1 << nu}, std::pow(2.0, -nu));
        }
        return f;
    };
    NormSpec spec;
    spec.p = 2.0;
    spec.q = std::numeric_limits<double>::infinity();
    spec.weight = PhiWeight{[](double t) { return t * std::log(std::numbers::e / t); }, 1};
    const auto radial = buildRadialRule(1, 2.0, 20);

    const auto fA = lacunary(1 << 10);
    const auto fB = lacunary(1 << 11);
    const double a = phiSeminorm(fA, spec, SphereRule::build(1, 1 << 10), radial);
    const double b = phiSeminorm(fB, spec, SphereRule::build(1, 1 << 11), radial);
    CHECK(a > 0.0);
    CHECK(std::isfinite(a));
    CHECK(std::abs(a - b) / b < 0.02);
}

TEST_CASE("gradient and combined means agree with pointwise oracles") {
    Rng rng(17);
    const int dim = 2, D = 5;
    const auto rule = SphereRule::build(dim, 2 * D + 2);
    const auto f = randomPoly(dim, D, rng);

    const double fast = gradientMean(f, 2, 0.7, 3.0, rule);
    const double slow = sphereMeanFn(
        rule, 0.7, 3.0, [&](std::span<const Cplx> z) { return gradientNorm(f, 2, z); });
    CHECK(fast == doctest::Approx(slow).epsilon(1e-10));

    const auto polys = tangentialGradientPolys(f, 1, false);
    const std::vector<double> ones(polys.size(), 1.0);
    const double combined = sphereMeanCombined(std::span<const MixedPoly>(polys), ones,
                                               Combine::AbsSum, 0.8, 2.0, rule);
    const double direct = sphereMeanFn(rule, 0.8, 2.0, [&](std::span<const Cplx> z) {
        return tangentialGradientValue(f, 1, false, z);
    });
    CHECK(combined == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("slice integration: product rule decomposes into torus-slice circles") {
    Rng rng(18);
    const int dim = 2, D = 4;
    const auto rule = SphereRule::build(dim, 2 * D + 2);
    const auto f = randomPoly(dim, D, rng);
    const double p = 2.0, r = 0.9;

    // Average over slices of the angular means must reproduce M_p^p.
    const int m = rule.anglesPerDim();
    double acc = 0.0;
    std::vector<Cplx> z(dim);
    for (const auto& slice : rule.slices()) {
        double sliceMean = 0.0;
        for (int l1 = 0; l1 < m; ++l1) {
            for (int l2 = 0; l2 < m; ++l2) {
                const double t1 = 2.0 * std::numbers::pi * l1 / m;
                const double t2 = 2.0 * std::numbers::pi * l2 / m;
                z[0] = r * slice.modulus[0] * Cplx(std::cos(t1), std::sin(t1));
                z[1] = r * slice.modulus[1] * Cplx(std::cos(t2), std::sin(t2));
                sliceMean += std::pow(std::abs(f.eval(z)), p);
            }
        }
        acc += slice.weight * sliceMean / (double(m) * m);
    }
    CHECK(std::pow(acc, 1.0 / p) == doctest::Approx(sphereMean(f, r, p, rule)).epsilon(1e-10));
}
