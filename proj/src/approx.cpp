#include "ballfun/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ballfun/errors.hpp"
#include "ballfun/lpblocks.hpp"
#include "ballfun/multiplier.hpp"
#include "ballfun/quad/norms.hpp"

namespace ballfun {

L2Approx bestApproxL2(const HoloPoly& f, int nu) {
    if (nu < 0) throw RangeError("bestApproxL2: degree must be nonnegative");
    double tail2 = 0.0;
    f.forEachTerm([&](const MultiIndex& alpha, Cplx c) {
        if (degreeOf(alpha) > nu) tail2 += std::norm(c) * monomialSphereMoment(f.dim(), alpha);
    });
    return {std::sqrt(tail2), f.truncated(std::min(nu, f.maxDegree()))};
}

namespace {

struct NodeGrid {
    std::vector<std::vector<Cplx>> points;
    std::vector<double> weights;
};

NodeGrid collectNodes(const SphereRule& rule) {
    NodeGrid grid;
    rule.forEachNode([&](std::span<const Cplx> z, double w) {
        grid.points.emplace_back(z.begin(), z.end());
        grid.weights.push_back(w);
    });
    return grid;
}

double pNorm(const std::vector<Cplx>& vals, const std::vector<double>& w, double p) {
    if (std::isinf(p)) {
        double best = 0.0;
        for (const Cplx& v : vals) best = std::max(best, std::abs(v));
        return best;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) sum += w[i] * std::pow(std::abs(vals[i]), p);
    return std::pow(sum, 1.0 / p);
}

// Minimizes t -> ||r - t m||_p for real t by golden section on a bracket
// guaranteed to contain the minimum of this convex profile.
double lineSearch(const std::vector<Cplx>& r, const std::vector<Cplx>& m,
                  const std::vector<double>& w, double p, Cplx dir) {
    const double mNorm = pNorm(m, w, p);
    if (mNorm == 0.0) return 0.0;
    const double cur = pNorm(r, w, p);
    double a = -2.0 * cur / mNorm, b = -a;
    auto eval = [&](double t) {
        double sum = 0.0, best = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double av = std::abs(r[i] - t * dir * m[i]);
            if (std::isinf(p)) {
                best = std::max(best, av);
            } else {
                sum += w[i] * std::pow(av, p);
            }
        }
        return std::isinf(p) ? best : sum;
    };
    const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invPhi * (b - a), x2 = a + invPhi * (b - a);
    double g1 = eval(x1), g2 = eval(x2);
    for (int i = 0; i < 40; ++i) {
        if (g1 > g2) {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + invPhi * (b - a);
            g2 = eval(x2);
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - invPhi * (b - a);
            g1 = eval(x1);
        }
    }
    const double t = 0.5 * (a + b);
    return eval(t) < eval(0.0) ? t : 0.0;
}

// Exact sup of |zeta^alpha| over the unit sphere (Lagrange point
// s_j^2 = alpha_j / |alpha|).
double monomialSupOnSphere(const MultiIndex& alpha) {
    const int total = degreeOf(alpha);
    if (total == 0) return 1.0;
    double v = 1.0;
    for (int a : alpha) {
        if (a > 0) v *= std::pow(double(a) / total, 0.5 * a);
    }
    return v;
}

}  // namespace

ApproxBracket bestApproxGeneral(const HoloPoly& f, int nu, double p, const SphereRule& rule,
                                int budget, double tol) {
    if (nu < 0) throw RangeError("bestApproxGeneral: degree must be nonnegative");
    if (!(p >= 1.0)) throw RangeError("bestApproxGeneral: p must lie in [1, infinity]");
    if (f.dim() != rule.dim()) throw ShapeError("bestApproxGeneral: dimension mismatch");
    const int dim = f.dim();

    // Candidate starting points in coefficient space.
    const HoloPoly trunc = f.truncated(std::min(nu, f.maxDegree()));
    std::vector<Cplx> smoothSeq(std::size_t(f.maxDegree()) + 1, 0.0);
    for (int k = 0; k <= f.maxDegree(); ++k) {
        smoothSeq[std::size_t(k)] = BlockBasis::omega(2.0 * k / (nu + 1.0));
    }
    const HoloPoly smooth =
        applyMultiplier(f, MultiplierSpec::custom(std::move(smoothSeq))).truncated(
            std::min(nu, f.maxDegree()));

    const NodeGrid grid = collectNodes(rule);
    const std::size_t n = grid.points.size();
    std::vector<Cplx> fvals(n);
    for (std::size_t i = 0; i < n; ++i) fvals[i] = f.eval(grid.points[i]);

    const auto basisIdx = monomialsUpTo(dim, std::min(nu, f.maxDegree()));
    std::vector<std::vector<Cplx>> mvals(basisIdx.size(), std::vector<Cplx>(n));
    for (std::size_t a = 0; a < basisIdx.size(); ++a) {
        const auto mono = monomial(dim, basisIdx[a]);
        for (std::size_t i = 0; i < n; ++i) mvals[a][i] = mono.eval(grid.points[i]);
    }

    auto residualOf = [&](const HoloPoly& P) {
        std::vector<Cplx> r = fvals;
        for (std::size_t i = 0; i < n; ++i) r[i] -= P.eval(grid.points[i]);
        return r;
    };

    HoloPoly best = trunc;
    std::vector<Cplx> residual = residualOf(trunc);
    double upper = pNorm(residual, grid.weights, p);
    {
        const auto rs = residualOf(smooth);
        const double e = pNorm(rs, grid.weights, p);
        if (e < upper) {
            upper = e;
            best = smooth;
            residual = rs;
        }
    }

    // Cyclic coordinate descent over Re and Im of each coefficient.
    bool converged = false;
    int used = 0;
    while (used < budget && !basisIdx.empty()) {
        double before = upper;
        for (std::size_t a = 0; a < basisIdx.size() && used < budget; ++a, ++used) {
            for (Cplx dir : {Cplx(1.0, 0.0), Cplx(0.0, 1.0)}) {
                const double t = lineSearch(residual, mvals[a], grid.weights, p, dir);
                if (t != 0.0) {
                    for (std::size_t i = 0; i < n; ++i) residual[i] -= t * dir * mvals[a][i];
                    best.add(basisIdx[a], t * dir);
                }
            }
        }
        upper = pNorm(residual, grid.weights, p);
        if (before - upper < tol * std::max(1.0, upper)) break;
    }

    // Duality lower bounds: functionals vanishing on every P of degree <= nu.
    const double pdual = std::isinf(p) ? 1.0 : p / (p - 1.0);  // p=1 handled below
    double lower = 0.0;
    double tailMass = 0.0;
    HoloPoly tailPoly(dim, f.maxDegree());
    f.forEachTerm([&](const MultiIndex& alpha, Cplx c) {
        if (degreeOf(alpha) <= nu) return;
        const double mu = monomialSphereMoment(dim, alpha);
        tailMass += std::norm(c) * mu;
        tailPoly.set(alpha, c);
        double dualNorm;
        if (p == 1.0) {
            dualNorm = monomialSupOnSphere(alpha);
        } else {
            dualNorm = sphereMean(monomial(dim, alpha), 1.0, std::isinf(p) ? 1.0 : pdual, rule);
        }
        if (dualNorm > 0.0) lower = std::max(lower, std::abs(c) * mu / dualNorm);
    });
    if (tailMass > 0.0) {
        const double tailDual =
            p == 1.0 ? sphereMean(tailPoly, 1.0, std::numeric_limits<double>::infinity(), rule)
                     : sphereMean(tailPoly, 1.0, std::isinf(p) ? 1.0 : pdual, rule);
        if (tailDual > 0.0) lower = std::max(lower, tailMass / tailDual);
    }
    lower = std::min(lower, upper);

    if (upper - lower <= tol * std::max(1.0, upper)) converged = true;
    return {upper, lower, best, converged};
}

}  // namespace ballfun
