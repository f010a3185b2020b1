#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>

#include "ballfun/derivative_ops.hpp"
#include "ballfun/holo_poly.hpp"
#include "ballfun/linear_ops.hpp"
#include "ballfun/multiplier.hpp"
#include "ballfun/rng.hpp"
#include "ballfun/serialization.hpp"

using namespace ballfun;

namespace {

HoloPoly randomPoly(int dim, int maxDegree, Rng& rng, double decay = 1.0) {
    HoloPoly f(dim, maxDegree);
    for (const auto& alpha : monomialsUpTo(dim, maxDegree))
        f.set(alpha, std::pow(degreeOf(alpha) + 1.0, -decay) * rng.gaussianCplx());
    return f;
}

std::vector<Cplx> randomPoint(int dim, Rng& rng, double radius) {
    std::vector<Cplx> z(dim);
    double norm2 = 0.0;
    for (auto& c : z) {
        c = rng.gaussianCplx();
        norm2 += std::norm(c);
    }
    const double scale = radius * std::pow(rng.uniform(), 1.0 / (2 * dim)) / std::sqrt(norm2);
    for (auto& c : z) c *= scale;
    return z;
}

}  // namespace

TEST_CASE("homogeneous parts partition the polynomial") {
    HoloPoly f(2, 3);
    f.set({0, 0}, 1.0);
    f.set({1, 0}, 1.0);
    f.set({1, 1}, 1.0);

    HoloPoly h2 = f.homogeneousPart(2);
    CHECK(h2.coeff({1, 1}) == Cplx(1.0));
    CHECK(h2.termCount() == 1);

    HoloPoly cube = monomial(1, {3});
    CHECK(cube.homogeneousPart(2).isZero());

    Rng rng(11);
    HoloPoly g = randomPoly(3, 6, rng);
    HoloPoly sum(3, 6);
    for (int k = 0; k <= 6; ++k) sum += g.homogeneousPart(k);
    CHECK(maxCoeffDistance(sum, g) == 0.0);

    CHECK_THROWS_AS((void)g.homogeneousPart(7), DegreeRangeError);
}

TEST_CASE("radial power multiplier") {
    HoloPoly f = monomial(2, {1, 1});
    HoloPoly rf = applyMultiplier(f, MultiplierSpec::radialPower(2.0));
    CHECK(rf.coeff({1, 1}) == Cplx(4.0));

    HoloPoly g(1, 1);
    g.set({0}, 1.0);
    g.set({1}, 1.0);
    HoloPoly rg = radialDerivative(g);
    CHECK(rg.coeff({0}) == Cplx(0.0));
    CHECK(rg.coeff({1}) == Cplx(1.0));
}

TEST_CASE("gamma ratio multiplier against log-Gamma arithmetic") {
    // Independent oracle: direct log-Gamma evaluation for N=2, k=5, s=0, t=1.
    const int N = 2, k = 5;
    const double s = 0.0, t = 1.0;
    const double expected =
        std::exp(std::lgamma(N + 1 + s) + std::lgamma(N + 1 + k + s + t) - std::lgamma(N + 1 + s + t) -
                 std::lgamma(N + 1 + k + s));
    HoloPoly f = monomial(2, {5, 0});
    HoloPoly g = applyMultiplier(f, MultiplierSpec::gammaRatio(s, t));
    CHECK(std::abs(g.coeff({5, 0}) - Cplx(expected)) < 1e-12);

    CHECK_THROWS_AS((void)applyMultiplier(f, MultiplierSpec::gammaRatio(-5.0, 1.0)), InvalidMultiplierError);
}

TEST_CASE("radial derivative inverse") {
    HoloPoly f = monomial(2, {2, 1}, 8.0);
    HoloPoly g = radialDerivativeInverse(f, 2.0);
    CHECK(std::abs(g.coeff({2, 1}) - Cplx(8.0 / 9.0)) < 1e-15);

    HoloPoly lin = monomial(1, {1});
    CHECK(maxCoeffDistance(radialDerivativeInverse(lin, 0.0), lin) == 0.0);

    Rng rng(5);
    HoloPoly h = randomPoly(2, 8, rng);
    h.set({0, 0}, 0.0);
    HoloPoly round = radialDerivativeInverse(radialDerivative(h, 2.5), 2.5);
    CHECK(maxCoeffDistance(round, h) < 1e-12);

    HoloPoly withConst(1, 2);
    withConst.set({0}, 1.0);
    CHECK_THROWS_AS((void)radialDerivativeInverse(withConst, 1.0), InvertibilityError);
}

TEST_CASE("multiplier composition invariant") {
    Rng rng(7);
    HoloPoly f = randomPoly(2, 10, rng);
    f.set({0, 0}, 0.0);
    for (double s : {0.5, -1.0, 2.0}) {
        for (double t : {1.5, 0.25}) {
            HoloPoly a = radialDerivative(radialDerivative(f, s), t);
            HoloPoly b = radialDerivative(f, s + t);
            CHECK(maxCoeffDistance(a, b) < 1e-12 * std::max(1.0, b.maxAbsCoeff()));
        }
    }
}

TEST_CASE("hadamard product") {
    Rng rng(3);
    HoloPoly f = randomPoly(2, 6, rng);
    std::vector<double> ones(7, 1.0);
    CHECK(maxCoeffDistance(hadamard(ones, f), f) == 0.0);

    HoloPoly g(2, 2);
    g.set({0, 0}, 1.0);
    g.set({1, 0}, 1.0);
    g.set({1, 1}, 1.0);
    std::vector<double> pick = {0.0, 0.0, 1.0};
    HoloPoly proj = hadamard(pick, g);
    CHECK(proj.coeff({1, 1}) == Cplx(1.0));
    CHECK(proj.termCount() == 1);

    // Short sequences pad with zero.
    std::vector<double> shortSeq = {1.0};
    HoloPoly only0 = hadamard(shortSeq, f);
    for (int k = 1; k <= 6; ++k) CHECK(only0.homogeneousPart(k).isZero());
}

TEST_CASE("composeLinear identity, rotation and permutation") {
    Rng rng(17);
    HoloPoly f = randomPoly(2, 8, rng);

    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(2, 2);
    CHECK(maxCoeffDistance(composeLinear(f, I), f) < 1e-14);

    const double theta = 0.7;
    Eigen::MatrixXcd rot = std::exp(Cplx(0, theta)) * I;
    HoloPoly zk = monomial(2, {0, 4});
    HoloPoly rzk = composeLinear(zk, rot);
    CHECK(std::abs(rzk.coeff({0, 4}) - std::exp(Cplx(0, 4 * theta))) < 1e-14);

    // Pointwise evaluation oracle for a coordinate swap.
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(2, 2);
    P(0, 1) = 1.0;
    P(1, 0) = 1.0;
    HoloPoly g = composeLinear(f, P);
    for (int trial = 0; trial < 100; ++trial) {
        auto z = randomPoint(2, rng, 0.9);
        std::vector<Cplx> pz = {z[1], z[0]};
        CHECK(std::abs(g.eval(z) - f.eval(pz)) < 1e-10);
    }

    Eigen::MatrixXcd bad = 2.0 * I;
    CHECK_THROWS_AS((void)composeLinear(f, bad), RangeError);
    Eigen::MatrixXcd wrongShape = Eigen::MatrixXcd::Identity(3, 3);
    CHECK_THROWS_AS((void)composeLinear(f, wrongShape), ShapeError);
}

TEST_CASE("dilate") {
    Rng rng(23);
    HoloPoly f = randomPoly(2, 5, rng);
    CHECK(maxCoeffDistance(dilate(f, 1.0), f) == 0.0);

    HoloPoly c = dilate(monomial(1, {3}), 0.5);
    CHECK(std::abs(c.coeff({3}) - Cplx(0.125)) < 1e-15);

    CHECK_THROWS_AS((void)dilate(f, 0.0), RangeError);
    CHECK_THROWS_AS((void)dilate(f, 1.5), RangeError);
}

TEST_CASE("rotation commutation identity") {
    // R^n (f o U) = (R^n f) o U, exactly on coefficients.
    Rng rng(29);
    for (int dim : {2, 3}) {
        HoloPoly f = randomPoly(dim, 6, rng);
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Random(dim, dim);
        Eigen::MatrixXcd U = (H + H.adjoint());  // Hermitian
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(U);
        Eigen::VectorXcd phases(dim);
        for (int j = 0; j < dim; ++j) phases(j) = std::exp(Cplx(0, es.eigenvalues()(j)));
        Eigen::MatrixXcd Un = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

        HoloPoly a = radialDerivative(composeLinear(f, Un), 2.0);
        HoloPoly b = composeLinear(radialDerivative(f, 2.0), Un);
        CHECK(maxCoeffDistance(a, b) < 1e-11);
    }
}

TEST_CASE("radial-partial commutation relation") {
    // R^{n-1} d_j f = d_j (R - I)^{n-1} f as polynomials.
    Rng rng(31);
    HoloPoly f = randomPoly(2, 7, rng);
    for (int n : {2, 3}) {
        for (int j = 1; j <= 2; ++j) {
            HoloPoly lhs = holoPartial(f, j);
            for (int t = 0; t < n - 1; ++t) lhs = radialDerivative(lhs, 1.0);

            // (R - I)^{n-1} via binomial expansion of multipliers (k-1)^{n-1}.
            std::vector<Cplx> lam(f.maxDegree() + 1);
            for (int k = 0; k <= f.maxDegree(); ++k) lam[k] = std::pow(k - 1.0, n - 1.0);
            HoloPoly rhs = holoPartial(hadamard(lam, f), j);
            CHECK(maxCoeffDistance(lhs, rhs) < 1e-10 * std::max(1.0, rhs.maxAbsCoeff()));
        }
    }
}

TEST_CASE("partial derivatives") {
    HoloPoly f = monomial(2, {2, 1});
    MixedPoly d1 = partialDerivative(f, 1);
    CHECK(std::abs(d1.coeff({1, 1}, {0, 0}) - Cplx(2.0)) < 1e-15);

    MixedPoly dbar = partialDerivative(monomial(1, {2}), 1, true);
    CHECK(dbar.isZero());

    // dbar_2 (conj(z_2) d_1 f) = d_1 f for any HoloPoly f.
    Rng rng(37);
    HoloPoly g = randomPoly(2, 5, rng);
    MixedPoly d1g = partialDerivative(g, 1);
    MixedPoly prod(2);
    for (const auto& [key, c] : d1g.terms()) {
        MultiIndex beta = key.second;
        ++beta[1];
        prod.add(key.first, beta, c);
    }
    MixedPoly back = partialDerivative(prod, 2, true);
    MixedPoly diff = back - d1g;
    CHECK(diff.isZero(1e-14));
}

TEST_CASE("gradient norm") {
    std::vector<Cplx> z = {Cplx(0.3, 0.1), Cplx(-0.2, 0.4)};
    CHECK(gradientNorm(monomial(2, {1, 0}), 1, z) == doctest::Approx(1.0));
    CHECK(gradientNorm(monomial(2, {1, 1}), 2, z) == doctest::Approx(std::sqrt(2.0)));

    // Finite-difference oracle for |grad f|.
    Rng rng(41);
    HoloPoly f = randomPoly(2, 6, rng);
    const double h = 1e-6;
    double sum = 0.0;
    for (int j = 0; j < 2; ++j) {
        auto zp = std::vector<Cplx>(z.begin(), z.end());
        auto zm = zp;
        zp[j] += h;
        zm[j] -= h;
        Cplx dj = (f.eval(zp) - f.eval(zm)) / (2.0 * h);
        sum += std::norm(dj);
    }
    CHECK(gradientNorm(f, 1, z) == doctest::Approx(std::sqrt(sum)).epsilon(1e-6));
}

TEST_CASE("tangential operators") {
    HoloPoly z2 = monomial(2, {0, 1});
    MixedPoly t = tangentialApplyOne(MixedPoly::fromHolo(z2), {1, 2, false});
    CHECK(std::abs(t.coeff({0, 0}, {1, 0}) - Cplx(1.0)) < 1e-15);

    HoloPoly z1z2 = monomial(2, {1, 1});
    MixedPoly t2 = tangentialApplyOne(MixedPoly::fromHolo(z1z2), {1, 2, false});
    CHECK(std::abs(t2.coeff({1, 0}, {1, 0}) - Cplx(1.0)) < 1e-15);
    CHECK(std::abs(t2.coeff({0, 1}, {0, 1}) - Cplx(-1.0)) < 1e-15);

    // Tbar_{1,2} T_{1,2} f = -(z_1 d_1 + z_2 d_2) f for holomorphic f.
    Rng rng(43);
    HoloPoly f = randomPoly(2, 6, rng);
    std::vector<TangOp> ops = {{1, 2, false}, {1, 2, true}};
    MixedPoly lhs = tangentialApply(MixedPoly::fromHolo(f), ops);
    MixedPoly rhs = MixedPoly::fromHolo(Cplx(-1.0) * radialDerivative(f));
    MixedPoly diff = lhs - rhs;
    CHECK(diff.isZero(1e-12));
}

TEST_CASE("tangential gradient value") {
    std::vector<Cplx> z = {Cplx(0.0), Cplx(0.5)};
    HoloPoly constant = monomial(2, {0, 0}, 3.0);
    CHECK(tangentialGradientValue(constant, 1, false, z) == 0.0);
    CHECK(tangentialGradientValue(constant, 2, true, z) == 0.0);

    // |T_{1,2} z_1| + |T_{2,1} z_1| at (0, 1/2) = 1.
    HoloPoly z1 = monomial(2, {1, 0});
    CHECK(tangentialGradientValue(z1, 1, false, z) == doctest::Approx(1.0));

    // Brute-force enumeration oracle for k = 2.
    Rng rng(47);
    HoloPoly f = randomPoly(2, 4, rng);
    auto zz = randomPoint(2, rng, 0.8);
    double brute = 0.0;
    std::vector<TangOp> choices = {{1, 2, false}, {2, 1, false}};
    for (const auto& a : choices)
        for (const auto& b : choices) {
            std::vector<TangOp> seq = {a, b};
            brute += std::abs(tangentialApply(MixedPoly::fromHolo(f), seq).eval(zz));
        }
    CHECK(tangentialGradientValue(f, 2, false, zz) == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("radial identity constants") {
    auto c1 = solveRadialIdentityConstants(1, 2);
    REQUIRE(c1.d.size() == 2);
    CHECK(c1.d[0] == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(std::abs(c1.d[1]) < 1e-10);

    auto c2 = solveRadialIdentityConstants(1, 3);
    CHECK(c2.d[0] == doctest::Approx(-4.0).epsilon(1e-10));
    CHECK(std::abs(c2.d[1]) < 1e-10);

    auto c3 = solveRadialIdentityConstants(2, 2, 8);
    CHECK(c3.residual < 1e-10);
}

TEST_CASE("degree preservation") {
    Rng rng(53);
    HoloPoly f = randomPoly(2, 6, rng);
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(2, 2);
    CHECK(composeLinear(f, 0.5 * I).maxDegree() == 6);
    CHECK(radialDerivative(f, 1.5).maxDegree() == 6);
    CHECK(hadamard(std::vector<double>{1, 1}, f).maxDegree() == 6);
}

TEST_CASE("serialization round trip") {
    Rng rng(59);
    HoloPoly f = randomPoly(3, 5, rng);
    auto j = toJson(f);
    HoloPoly g = holoPolyFromJson(j);
    CHECK(maxCoeffDistance(f, g) == 0.0);
    CHECK(toJson(g) == j);  // deterministic term ordering

    const auto path = std::filesystem::temp_directory_path() / "ballfun_roundtrip.json";
    saveHoloPoly(f, path.string());
    HoloPoly h = loadHoloPoly(path.string());
    CHECK(maxCoeffDistance(f, h) == 0.0);
    std::filesystem::remove(path);
}
