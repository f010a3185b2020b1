#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ballfun/approx.hpp"
#include "ballfun/lpblocks.hpp"
#include "ballfun/multiplier.hpp"
#include "ballfun/quad/norms.hpp"
#include "ballfun/rng.hpp"

using namespace ballfun;

namespace {

HoloPoly randomPoly(int dim, int maxDegree, Rng& rng, double decay = 1.0) {
    HoloPoly f(dim, maxDegree);
    for (const auto& alpha : monomialsUpTo(dim, maxDegree)) {
        f.set(alpha, std::pow(decay, degreeOf(alpha)) * rng.gaussianCplx());
    }
    return f;
}

}  // namespace

TEST_CASE("block basis: cutoff endpoints and smoothness plateau") {
    CHECK(BlockBasis::omega(0.3) == 1.0);
    CHECK(BlockBasis::omega(1.0) == 1.0);
    CHECK(BlockBasis::omega(2.0) == 0.0);
    CHECK(BlockBasis::omega(3.0) == 0.0);
    CHECK(BlockBasis::omega(1.5) > 0.0);
    CHECK(BlockBasis::omega(1.5) < 1.0);
    // omega is nonincreasing.
    double prev = 1.0;
    for (double t = 0.0; t <= 2.5; t += 0.01) {
        const double v = BlockBasis::omega(t);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    // psi(2) = omega(1) - omega(2) = 1.
    CHECK(BlockBasis::psi(2.0) == 1.0);
}

TEST_CASE("block basis: support, partition of unity, and dyadic peaks") {
    const int D = 40;
    const auto basis = BlockBasis::build(D);
    CHECK(basis.maxBlock() + 1 == 7);  // ceil(log2 40) + 1 blocks

    for (int nu = 1; nu <= basis.maxBlock(); ++nu) {
        for (int k = 0; k <= D; ++k) {
            if (k < (1 << (nu - 1)) || k >= (1 << (nu + 1))) {
                CHECK(basis.coefficient(nu, k) == 0.0);
            }
        }
        if ((1 << nu) <= D) CHECK(basis.coefficient(nu, 1 << nu) == 1.0);
    }
    for (int k = 0; k <= D; ++k) {
        double sum = 0.0;
        for (int nu = 0; nu <= basis.maxBlock(); ++nu) sum += basis.coefficient(nu, k);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    }
    // k = 4 is shared by blocks 2 and 3 only.
    CHECK(basis.coefficient(2, 4) + basis.coefficient(3, 4) == doctest::Approx(1.0));
    CHECK(basis.coefficient(0, 4) == 0.0);
    CHECK(basis.coefficient(1, 4) == 0.0);
    for (int nu = 4; nu <= basis.maxBlock(); ++nu) CHECK(basis.coefficient(nu, 4) == 0.0);
    // Block 0 passes exactly degrees 0 and 1.
    CHECK(basis.coefficient(0, 0) == 1.0);
    CHECK(basis.coefficient(0, 1) == 1.0);
    CHECK(basis.coefficient(0, 2) == 0.0);
}

TEST_CASE("sharp basis: indicator bands partition every degree") {
    const int D = 32;
    const auto basis = BlockBasis::build(D, true);
    for (int k = 0; k <= D; ++k) {
        double sum = 0.0;
        for (int nu = 0; nu <= basis.maxBlock(); ++nu) {
            const double c = basis.coefficient(nu, k);
            CHECK((c == 0.0 || c == 1.0));
            sum += c;
        }
        CHECK(sum == 1.0);
    }
}

TEST_CASE("blockProject: scaling, window reproduction, reconstruction") {
    const auto basis = BlockBasis::build(40);
    const auto f4 = monomial(2, {4, 0});
    for (int nu = 0; nu <= basis.maxBlock(); ++nu) {
        const auto proj = blockProject(f4, nu, basis);
        const double want = nu >= 1 ? BlockBasis::psi(4.0 / (1 << (nu - 1))) : 0.0;
        CHECK(std::abs(proj.coeff({4, 0}) - want) < 1e-15);
    }

    Rng rng(21);
    const auto f = randomPoly(2, 40, rng);
    HoloPoly sum(2, 40);
    for (int nu = 0; nu <= basis.maxBlock(); ++nu) sum += blockProject(f, nu, basis);
    CHECK(maxCoeffDistance(sum, f) < 1e-13);

    // Q_nu * W_nu = W_nu for the triple window.
    for (int nu = 1; nu <= basis.maxBlock(); ++nu) {
        const auto w = blockProject(f, nu, basis);
        CHECK(maxCoeffDistance(windowProject(w, nu, basis), w) < 1e-13);
    }

    // Partial sums fix all low degrees and have degree < 2^nu.
    for (int nu = 2; nu <= 5; ++nu) {
        const auto q = partialSumProject(f, nu, basis);
        for (const auto& alpha : monomialsUpTo(2, 1 << (nu - 1))) {
            CHECK(std::abs(q.coeff(alpha) - f.coeff(alpha)) < 1e-13);
        }
        CHECK(q.truncated(std::min((1 << nu) - 1, 40)).termCount() == q.termCount());
    }
}

TEST_CASE("dyadicNorm: block-dominant monomials and the l^infinity case") {
    const auto rule = SphereRule::build(1, 80);
    const auto basis = BlockBasis::build(40);
    const double p = 2.0, beta = 0.7;

    for (int nu : {2, 3, 4, 5}) {
        const auto f = monomial(1, {1 << nu});
        const double got = dyadicNorm(f, {p, 2.0, beta}, basis, rule);
        const double dominant = std::pow(2.0, -double(nu) * beta);  // w_nu(2^nu) = 1
        CHECK(got >= dominant);
        CHECK(got <= 2.0 * dominant);
    }

    CHECK(dyadicNorm(HoloPoly(1, 5), {2.0, 2.0, 0.3}, basis, rule) == 0.0);

    Rng rng(22);
    const auto f = randomPoly(1, 40, rng);
    const double inf = dyadicNorm(f, {p, std::numeric_limits<double>::infinity(), beta}, basis, rule);
    double maxTerm = 0.0;
    for (int nu = 0; nu <= basis.maxBlock(); ++nu) {
        maxTerm = std::max(maxTerm, std::pow(2.0, -double(nu) * beta) *
                                        hardyNorm(blockProject(f, nu, basis), p, rule));
    }
    CHECK(inf == doctest::Approx(maxTerm).epsilon(1e-12));
}

TEST_CASE("bestApproxL2: exactness and optimality") {
    // nu beyond the degree: zero error.
    Rng rng(23);
    const auto f = randomPoly(2, 6, rng);
    const auto full = bestApproxL2(f, 6);
    CHECK(full.error == 0.0);
    CHECK(maxCoeffDistance(full.best, f) == 0.0);

    // One-variable split.
    HoloPoly g(1, 5);
    g.set({1}, 1.0);
    g.set({5}, 1.0);
    const auto split = bestApproxL2(g, 2);
    CHECK(split.error == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(maxCoeffDistance(split.best, monomial(1, {1})) == 0.0);

    // N=2 cubic monomial: E = sqrt(3! 1! / 4!) = 1/2, checked by quadrature.
    const auto cubic = monomial(2, {3, 0});
    const auto res = bestApproxL2(cubic, 2);
    CHECK(res.error == doctest::Approx(0.5).epsilon(1e-12));
    const auto rule = SphereRule::build(2, 8);
    CHECK(hardyNorm(cubic, 2.0, rule) == doctest::Approx(0.5).epsilon(1e-12));

    // No polynomial of degree <= nu beats the projection.
    const auto rule2 = SphereRule::build(2, 14);
    for (int trial = 0; trial < 50; ++trial) {
        const auto h = randomPoly(2, 6, rng);
        const auto proj = bestApproxL2(h, 3);
        const auto competitor = randomPoly(2, 3, rng);
        const double dist = hardyNorm(h - competitor, 2.0, rule2);
        CHECK(dist >= proj.error - 1e-10);
    }
}

TEST_CASE("bestApproxGeneral: polynomial in the class and circle monomials") {
    const auto rule = SphereRule::build(1, 24);
    Rng rng(24);
    const auto inClass = randomPoly(1, 3, rng);
    const auto zero = bestApproxGeneral(inClass, 3, 4.0, rule, 50);
    CHECK(zero.upper < 1e-12);
    CHECK(zero.lower < 1e-12);
    CHECK(zero.converged);

    // Best approximation of z^m by lower-degree polynomials on the circle
    // has error exactly 1 in every p.
    for (double p : {1.0, 4.0, std::numeric_limits<double>::infinity()}) {
        const auto res = bestApproxGeneral(monomial(1, {7}), 4, p, rule, 400);
        CHECK(res.lower <= 1.0 + 1e-3);
        CHECK(res.upper >= 1.0 - 1e-3);
        CHECK(res.upper - res.lower < 2e-3);
    }
}

TEST_CASE("bestApproxGeneral: bracket sandwiches the L2 answer and the proof-chain bound") {
    Rng rng(25);
    const auto rule = SphereRule::build(2, 28);
    const auto basis = BlockBasis::build(12);
    for (int trial = 0; trial < 5; ++trial) {
        const auto f = randomPoly(2, 12, rng, 0.7);
        const auto bracket = bestApproxGeneral(f, 4, 2.0, rule, 300);
        const auto exact = bestApproxL2(f, 4);
        CHECK(bracket.upper >= exact.error - 1e-9);
        CHECK(bracket.lower <= exact.error + 1e-9);

        // E_{2^nu}(f)_p <= ||f - Q_nu * f||_p <= sum_{k >= nu-1} ||W_k * f||_p.
        const int nu = 2;
        const auto viaQ = hardyNorm(f - partialSumProject(f, nu, basis), 3.0, rule);
        double tailSum = 0.0;
        for (int k = nu - 1; k <= basis.maxBlock(); ++k) {
            tailSum += hardyNorm(blockProject(f, k, basis), 3.0, rule);
        }
        CHECK(viaQ <= tailSum + 1e-10);
        const auto bracketP = bestApproxGeneral(f, 1 << nu, 3.0, rule, 100);
        CHECK(bracketP.upper <= viaQ + 1e-10);
    }
}

TEST_CASE("sequenceTailBound: explicit arithmetic and random inequality") {
    std::vector<Cplx> s{1.0};
    const auto one = sequenceTailBound(s, 1.0, 1.0);
    CHECK(one.lhs == doctest::Approx(2.0));
    CHECK(one.rhs == doctest::Approx(4.0));
    CHECK(one.lhs <= one.rhs);

    const auto empty = sequenceTailBound(std::vector<Cplx>{}, 0.5, 2.0);
    CHECK(empty.lhs == 0.0);
    CHECK(empty.rhs == 0.0);

    Rng rng(26);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Cplx> seq(8);
        for (auto& v : seq) v = rng.gaussianCplx();
        for (double q : {1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
            const auto b = sequenceTailBound(seq, 0.5, q);
            CHECK(b.lhs <= b.rhs * (1.0 + 1e-12));
        }
    }
    CHECK_THROWS_AS(sequenceTailBound(s, -0.1, 2.0), RangeError);
}

TEST_CASE("block norms bounded across a random family") {
    Rng rng(27);
    const auto rule = SphereRule::build(2, 42);
    const auto basis = BlockBasis::build(20);
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = randomPoly(2, 20, rng, 0.9);
        const double base = hardyNorm(f, 3.0, rule);
        if (base < 1e-12) continue;
        for (int nu = 0; nu <= basis.maxBlock(); ++nu) {
            worst = std::max(worst, hardyNorm(blockProject(f, nu, basis), 3.0, rule) / base);
        }
    }
    CHECK(worst <= 10.0);
}
