#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "ballfun/approx.hpp"
#include "ballfun/derivative_ops.hpp"
#include "ballfun/errors.hpp"
#include "ballfun/harness.hpp"
#include "ballfun/linear_ops.hpp"
#include "ballfun/lpblocks.hpp"
#include "ballfun/moduli.hpp"
#include "ballfun/multiplier.hpp"
#include "ballfun/quad/gauss.hpp"
#include "ballfun/quad/norms.hpp"
#include "ballfun/rng.hpp"

namespace ballfun::harness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerate = 1e-12;

// ---------------------------------------------------------------------------
// Shared per-run resources: quadrature rules sized to the family degree.
// ---------------------------------------------------------------------------

struct Resources {
    int dim;
    int maxDegree;
    CheckParams P;
    SphereRule sphere;
    BlockBasis basis;
    mutable std::map<long long, RadialRule> radials;

    Resources(int dimIn, int degree, const CheckParams& params)
        : dim(dimIn),
          maxDegree(degree),
          P(params),
          sphere(SphereRule::build(dimIn, 2 * degree)),
          basis(BlockBasis::build(degree)) {}

    const RadialRule& radial(double qAlpha) const {
        const long long key = std::llround(qAlpha * 1e9);
        auto it = radials.find(key);
        if (it == radials.end()) {
            it = radials.emplace(key, buildRadialRule(dim, qAlpha, P.radialNodes)).first;
        }
        return it->second;
    }
};

FunctionRecord makeRecord(double lhs, double rhs) {
    FunctionRecord r;
    r.lhs = lhs;
    r.rhs = rhs;
    if (std::max(lhs, rhs) < kDegenerate) {
        r.degenerate = true;
        return r;
    }
    r.ratio = rhs > 0.0 ? lhs / rhs : kInf;
    return r;
}

HoloPoly radialPow(const HoloPoly& f, int n) { return radialDerivative(f, double(n)); }

// Lambda-space functional: mixed (p, q, s - alpha) norm of R^s f.
double lambdaFunctional(const HoloPoly& f, double s, const Resources& R) {
    NormSpec spec{R.P.p, R.P.q, PowerWeight{s - R.P.alpha}};
    return mixedNorm(radialDerivative(f, s), spec, R.sphere,
                     R.radial(std::isinf(R.P.q) ? 1.0 : R.P.q * (s - R.P.alpha)));
}

std::vector<double> logGrid(double lo, double hi, int size) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        out.push_back(lo * std::pow(hi / lo, double(i) / double(size - 1)));
    }
    return out;
}

// Trapezoid rule in log t for integral of g(t) dt = g(t) t dlog t.
double integralLog(const std::vector<double>& t, const std::vector<double>& g) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double du = std::log(t[i + 1] / t[i]);
        sum += 0.5 * du * (g[i] * t[i] + g[i + 1] * t[i + 1]);
    }
    return sum;
}

// (integral of [x(t)/t^a]^q dt/t)^{1/q}; q = infinity gives the sup.
double qIntegralOverT(const std::vector<double>& t, const std::vector<double>& x, double a,
                      double q) {
    if (std::isinf(q)) {
        double best = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            best = std::max(best, x[i] / std::pow(t[i], a));
        }
        return best;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double du = std::log(t[i + 1] / t[i]);
        const double g0 = std::pow(x[i] / std::pow(t[i], a), q);
        const double g1 = std::pow(x[i + 1] / std::pow(t[i + 1], a), q);
        sum += 0.5 * du * (g0 + g1);
    }
    return std::pow(sum, 1.0 / q);
}

// l^q norm of a nonnegative sequence.
double qSeqNorm(const std::vector<double>& a, double q) {
    if (std::isinf(q)) {
        double best = 0.0;
        for (double v : a) best = std::max(best, v);
        return best;
    }
    double sum = 0.0;
    for (double v : a) sum += std::pow(v, q);
    return std::pow(sum, 1.0 / q);
}

Eigen::MatrixXcd randomHermitianUnit(int dim, Rng& rng) {
    Eigen::MatrixXcd H(dim, dim);
    for (int i = 0; i < dim; ++i) {
        H(i, i) = rng.gaussian();
        for (int j = i + 1; j < dim; ++j) {
            const Cplx v = rng.gaussianCplx();
            H(i, j) = v;
            H(j, i) = std::conj(v);
        }
    }
    const double norm = operatorNorm(H);
    if (norm > 0.0) H /= norm;
    return H;
}

// A seeded unitary sample within operator distance bound of the identity,
// U = exp(i tau H) with ||U - I|| = 2 sin(tau/2) scaled below the bound.
struct UnitarySampler {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
    double tauFraction;   // tau = tauFraction * tauMax(bound)
    double rhoFraction;   // contraction draw for plus-kind samples

    UnitarySampler(int dim, std::uint64_t seed) : es() {
        Rng rng(seed);
        const auto H = randomHermitianUnit(dim, rng);
        es.compute(H);
        tauFraction = rng.uniform();
        rhoFraction = rng.uniform();
    }

    Eigen::MatrixXcd at(double bound, bool boundary = false) const {
        const double tauMax = 2.0 * std::asin(0.5 * std::min(bound, 2.0 - 1e-12));
        // Boundary samples pin the step size at its admissible maximum
        // (where the sup over the constraint set lives), so enlarging the
        // sample budget only varies the rotation direction.
        const double tau = tauMax * (boundary ? 1.0 : tauFraction);
        Eigen::VectorXcd phases(es.eigenvalues().size());
        for (int i = 0; i < phases.size(); ++i) {
            phases(i) = std::polar(1.0, tau * es.eigenvalues()(i));
        }
        return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    }
};

// Lower-bound curves for the three moduli on an increasing delta grid.
// Rotations feed the minus curve; seeded unitaries extend it; contracted
// variants extend that, so minus <= unitary <= plus by construction.
struct ModulusCurves {
    std::vector<double> delta;
    std::vector<double> diff;     // raw ||Delta^n_t f||_p at t = delta
    std::vector<double> minus;
    std::vector<double> unitary;
    std::vector<double> plus;
};

ModulusCurves modulusCurves(const HoloPoly& f, const std::vector<double>& grid, int n, double p,
                            int budget, std::uint64_t seed, const SphereRule& rule) {
    ModulusCurves c;
    c.delta = grid;
    for (double t : grid) {
        c.diff.push_back(hardyNorm(rotationDifference(f, t, n), p, rule));
    }
    c.minus = c.diff;
    for (std::size_t i = 1; i < c.minus.size(); ++i) {
        c.minus[i] = std::max(c.minus[i], c.minus[i - 1]);
    }
    c.unitary = c.minus;
    c.plus = c.minus;
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(f.dim(), f.dim());
    for (int j = 0; j < budget; ++j) {
        const UnitarySampler sampler(f.dim(), Rng::mix(seed, static_cast<std::uint64_t>(j)));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Eigen::MatrixXcd U = sampler.at(grid[i]);
            const double v = hardyNorm(transformDifference(f, U, n), p, rule);
            c.unitary[i] = std::max(c.unitary[i], v);
            c.plus[i] = std::max(c.plus[i], v);
            const double d0 = operatorNorm(U - I);
            if (d0 < 1.0) {
                const double bound = std::min(grid[i], 2.0 - 1e-12);
                const double room = std::min((bound - d0) / (1.0 - d0), 1.0);
                const double rho = 1.0 - 0.999 * std::max(room, 0.0) * sampler.rhoFraction;
                const double vc = hardyNorm(transformDifference(f, rho * U, n), p, rule);
                c.plus[i] = std::max(c.plus[i], vc);
            }
        }
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        c.unitary[i] = std::max(c.unitary[i], c.unitary[i - 1]);
        c.plus[i] = std::max(c.plus[i], c.plus[i - 1]);
    }
    return c;
}

// Mixed (p, q, k/2 - alpha) norm of the order-k tangential gradient.
double tangentialMixedNorm(const HoloPoly& f, const Resources& R) {
    const auto polys = tangentialGradientPolys(f, R.P.k, false);
    const std::vector<double> w(polys.size(), 1.0);
    const double a = 0.5 * double(R.P.k) - R.P.alpha;
    const auto& rr = R.radial(R.P.q * a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
        const double m =
            sphereMeanCombined(polys, w, Combine::AbsSum, rr.nodes[i], R.P.p, R.sphere);
        sum += rr.weights[i] * std::pow(m, R.P.q);
    }
    return std::pow(2.0 * double(R.dim) * sum, 1.0 / R.P.q);
}

// integral over (0,1) of h(u) (1-u)^a u^b du.
double jacobiIntegral(const std::function<double(double)>& h, double a, double b, int count) {
    const auto rule = gaussJacobi01(count, a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * h(rule.nodes[i]);
    }
    return sum;
}

double evalAtOrigin(const HoloPoly& f) {
    const MultiIndex zero(static_cast<std::size_t>(f.dim()), 0);
    return std::abs(f.coeff(zero));
}

// ---------------------------------------------------------------------------
// Check registry
// ---------------------------------------------------------------------------

struct CheckDef {
    CheckInfo info;
    std::function<void(const CheckParams&, int dim)> validate;
    std::function<FunctionRecord(const HoloPoly&, const Resources&, std::uint64_t)> eval;
};

void needAlpha(const CheckParams& P) {
    if (!(P.alpha > 0.0)) throw ConfigError("check requires alpha > 0");
}

void needOrderAbove(double s, double alpha, const char* what) {
    if (!(s > alpha)) throw ConfigError(std::string(what) + " must exceed alpha");
}

void needFiniteQ(const CheckParams& P) {
    if (std::isinf(P.q)) throw ConfigError("check requires finite q");
}

std::vector<CheckDef> buildRegistry() {
    std::vector<CheckDef> defs;
    auto add = [&](CheckInfo info, std::function<void(const CheckParams&, int)> validate,
                   std::function<FunctionRecord(const HoloPoly&, const Resources&, std::uint64_t)>
                       eval) {
        defs.push_back({std::move(info), std::move(validate), std::move(eval)});
    };

    // ---- equivalences -----------------------------------------------------

    add({"besov-block-norms",
         "(p,q,s-a) mixed norm of R^s f vs l^q norm of {2^{nu a} ||W_nu f||_p}",
         CheckKind::equivalence, 0.0, false, 1},
        [](const CheckParams& P, int) {
            needAlpha(P);
            needOrderAbove(P.s, P.alpha, "s");
        },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            const double lhs = lambdaFunctional(f, R.P.s, R);
            const double rhs =
                dyadicNorm(f, {R.P.p, R.P.q, -R.P.alpha}, R.basis, R.sphere);
            return makeRecord(lhs, rhs);
        });

    add({"besov-order-independence",
         "(p,q,s1-a) mixed norm of R^{s1} f vs the same functional at order s2",
         CheckKind::equivalence, 0.0, false, 1},
        [](const CheckParams& P, int) {
            needAlpha(P);
            needOrderAbove(P.s, P.alpha, "s");
            needOrderAbove(P.s2, P.alpha, "s2");
            if (P.s == P.s2) throw ConfigError("order-independence needs s != s2");
        },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            return makeRecord(lambdaFunctional(f, R.P.s, R), lambdaFunctional(f, R.P.s2, R));
        });

    add({"multiplier-transfer",
         "(p,q,t-a) mixed norm of the k^t(1+1/k)-multiplier image vs the R^s functional",
         CheckKind::equivalence, 0.0, false, 1},
        [](const CheckParams& P, int) {
            needAlpha(P);
            needOrderAbove(P.s, P.alpha, "s");
            needOrderAbove(P.t, P.alpha, "t");
        },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            std::vector<Cplx> lam(static_cast<std::size_t>(R.maxDegree) + 1, 0.0);
            for (int k = 1; k <= R.maxDegree; ++k) {
                lam[static_cast<std::size_t>(k)] =
                    std::pow(double(k), R.P.t) * (1.0 + 1.0 / double(k));
            }
            const HoloPoly Tf = applyMultiplier(f, MultiplierSpec::custom(std::move(lam)));
            NormSpec spec{R.P.p, R.P.q, PowerWeight{R.P.t - R.P.alpha}};
            const double lhs =
                mixedNorm(Tf, spec, R.sphere,
                          R.radial(std::isinf(R.P.q) ? 1.0 : R.P.q * (R.P.t - R.P.alpha)));
            return makeRecord(lhs, lambdaFunctional(f, R.P.s, R));
        });

    add({"approximation-rate",
         "l^q norm of {2^{nu a} E_{2^nu}(f)_2} vs the dyadic block norm at p = 2",
         CheckKind::equivalence, 0.0, false, 1},
        [](const CheckParams& P, int) { needAlpha(P); },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            std::vector<double> seq;
            for (int nu = 0; nu <= R.basis.maxBlock(); ++nu) {
                seq.push_back(std::pow(2.0, double(nu) * R.P.alpha) *
                              bestApproxL2(f, 1 << nu).error);
            }
            const double lhs = qSeqNorm(seq, R.P.q);
            const double rhs = dyadicNorm(f, {2.0, R.P.q, -R.P.alpha}, R.basis, R.sphere);
            return makeRecord(lhs, rhs);
        });

    auto validateModulusPair = [](const CheckParams& P, int) {
        needAlpha(P);
        needOrderAbove(double(P.n), P.alpha, "n");
    };
    auto modulusPairEval = [](int which) {
        // which: 0 raw rotation differences, 1 minus, 2 unitary, 3 plus.
        return [which](const HoloPoly& f, const Resources& R, std::uint64_t seed) {
            const double lhs = lambdaFunctional(f, double(R.P.n), R);
            const auto grid = logGrid(R.P.gridLo, 1.0, R.P.gridSize);
            double rhs;
            if (which == 0) {
                std::vector<double> x;
                for (double t : grid) {
                    x.push_back(hardyNorm(rotationDifference(f, t, R.P.n), R.P.p, R.sphere));
                }
                rhs = qIntegralOverT(grid, x, R.P.alpha, R.P.q);
            } else {
                const auto c = modulusCurves(f, grid, R.P.n, R.P.p, R.P.budget, seed, R.sphere);
                const auto& x = which == 1 ? c.minus : which == 2 ? c.unitary : c.plus;
                rhs = qIntegralOverT(grid, x, R.P.alpha, R.P.q);
            }
            return makeRecord(lhs, rhs);
        };
    };
    add({"radial-vs-rotation-difference",
         "(p,q,n-a) norm of R^n f vs (int [||Delta^n_t f||_p / t^a]^q dt/t)^{1/q}",
         CheckKind::equivalence, 0.0, false, 1},
        validateModulusPair, modulusPairEval(0));
    add({"radial-vs-modulus-minus",
         "(p,q,n-a) norm of R^n f vs the same t-integral with the rotation modulus",
         CheckKind::equivalence, 0.0, false, 1},
        validateModulusPair, modulusPairEval(1));
    add({"radial-vs-modulus-unitary",
         "(p,q,n-a) norm of R^n f vs the t-integral with the unitary modulus",
         CheckKind::equivalence, 0.0, true, 1},
        validateModulusPair, modulusPairEval(2));
    add({"radial-vs-modulus-plus",
         "(p,q,n-a) norm of R^n f vs the t-integral with the contraction modulus",
         CheckKind::equivalence, 0.0, true, 1},
        validateModulusPair, modulusPairEval(3));

    add({"tangential-gradient-norm",
         "(p,q,k/2-a) mixed norm of the order-k tangential gradient vs the R^s functional",
         CheckKind::equivalence, 0.0, false, 2},
        [](const CheckParams& P, int) {
            needAlpha(P);
            needFiniteQ(P);
            needOrderAbove(P.s, P.alpha, "s");
            if (!(double(P.k) > 2.0 * P.alpha)) throw ConfigError("k must exceed 2 alpha");
        },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            return makeRecord(tangentialMixedNorm(f, R), lambdaFunctional(f, R.P.s, R));
        });

    // ---- one-sided inequalities ------------------------------------------

    add({"gradient-vs-radial", "||grad_n f||_p <= C ||R^n f||_p on the sphere",
         CheckKind::inequality, 0.0, false, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            const double lhs = gradientMean(f, R.P.n, 1.0, R.P.p, R.sphere);
            const double rhs = hardyNorm(radialPow(f, R.P.n), R.P.p, R.sphere);
            return makeRecord(lhs, rhs);
        });

    add({"radial-mean-via-gradient",
         "M_p(r, R^n f) <= C (sum_{k<n} grad_k f(0) + M_p(r, grad_n f))",
         CheckKind::inequality, 0.0, false, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            double low = 0.0;
            for (int k = 1; k < R.P.n; ++k) {
                const std::vector<Cplx> origin(static_cast<std::size_t>(f.dim()), 0.0);
                low += gradientNorm(f, k, origin);
            }
            const HoloPoly g = radialPow(f, R.P.n);
            FunctionRecord best;
            double bestRatio = -1.0;
            for (double r : {0.5, 0.75, 0.9}) {
                const double lhs = sphereMean(g, r, R.P.p, R.sphere);
                const double rhs = low + gradientMean(f, R.P.n, r, R.P.p, R.sphere);
                const auto rec = makeRecord(lhs, rhs);
                if (rec.ratio > bestRatio) {
                    bestRatio = rec.ratio;
                    best = rec;
                }
            }
            return best;
        });

    add({"mean-growth-transfer",
         "int M_p^q(r, grad_n f) psi(1-r) dr <= C int [t^{-n} ||Delta^n_t f||_p]^q psi(t) dt, "
         "psi(t) = t^{q(n-a)-1}",
         CheckKind::inequality, 0.0, false, 1},
        [](const CheckParams& P, int) {
            needAlpha(P);
            needFiniteQ(P);
            needOrderAbove(double(P.n), P.alpha, "n");
        },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            const double a = R.P.q * (double(R.P.n) - R.P.alpha) - 1.0;
            const double lhs = jacobiIntegral(
                [&](double r) {
                    return std::pow(gradientMean(f, R.P.n, r, R.P.p, R.sphere), R.P.q);
                },
                a, 0.0, R.P.radialNodes);
            const auto grid = logGrid(R.P.gridLo, 1.0, R.P.gridSize);
            std::vector<double> g;
            for (double t : grid) {
                const double x = hardyNorm(rotationDifference(f, t, R.P.n), R.P.p, R.sphere);
                g.push_back(std::pow(x / std::pow(t, double(R.P.n)), R.P.q) * std::pow(t, a));
            }
            return makeRecord(lhs, integralLog(grid, g));
        });

    add({"difference-controls-gradient",
         "M_p(r, grad_n f) <= C (1-r)^{-n-1} int_0^{1-r} ||Delta^n_t f||_p dt",
         CheckKind::inequality, 0.0, false, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            FunctionRecord best;
            double bestRatio = -1.0;
            for (double r : {0.6, 0.8, 0.9}) {
                const double lhs = gradientMean(f, R.P.n, r, R.P.p, R.sphere);
                const auto grid = logGrid(R.P.gridLo * (1.0 - r), 1.0 - r, R.P.gridSize);
                std::vector<double> g;
                for (double t : grid) {
                    g.push_back(hardyNorm(rotationDifference(f, t, R.P.n), R.P.p, R.sphere));
                }
                const double rhs =
                    std::pow(1.0 - r, -double(R.P.n) - 1.0) * integralLog(grid, g);
                const auto rec = makeRecord(lhs, rhs);
                if (rec.ratio > bestRatio) {
                    bestRatio = rec.ratio;
                    best = rec;
                }
            }
            return best;
        });

    add({"plus-modulus-radial-tail",
         "omega_n^+(d, f)_p <= C int_{1-d}^1 M_p(r, R^n f) (1-r)^{n-1} dr",
         CheckKind::inequality, 0.0, true, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t seed) {
            const std::vector<double> grid{0.1, 0.25, 0.5};
            const auto c = modulusCurves(f, grid, R.P.n, R.P.p, R.P.budget, seed, R.sphere);
            const HoloPoly g = radialPow(f, R.P.n);
            FunctionRecord best;
            double bestRatio = -1.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double d = grid[i];
                const double rhs =
                    std::pow(d, double(R.P.n)) *
                    jacobiIntegral(
                        [&](double u) { return sphereMean(g, 1.0 - d * u, R.P.p, R.sphere); },
                        0.0, double(R.P.n) - 1.0, 16);
                const auto rec = makeRecord(c.plus[i], rhs);
                if (rec.ratio > bestRatio) {
                    bestRatio = rec.ratio;
                    best = rec;
                }
            }
            return best;
        });

    add({"dilated-modulus-bound",
         "omega_n^+(d, f_{1-d})_p <= C d^n M_p(1-d, R^n f)",
         CheckKind::inequality, 0.0, true, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t seed) {
            const HoloPoly g = radialPow(f, R.P.n);
            FunctionRecord best;
            double bestRatio = -1.0;
            for (double d : {0.2, 0.4}) {
                const HoloPoly fd = dilate(f, 1.0 - d);
                const auto c = modulusCurves(fd, {d}, R.P.n, R.P.p, R.P.budget,
                                             Rng::mix(seed, std::uint64_t(d * 1000.0)), R.sphere);
                const double rhs =
                    std::pow(d, double(R.P.n)) * sphereMean(g, 1.0 - d, R.P.p, R.sphere);
                const auto rec = makeRecord(c.plus[0], rhs);
                if (rec.ratio > bestRatio) {
                    bestRatio = rec.ratio;
                    best = rec;
                }
            }
            return best;
        });

    add({"composed-derivative-growth",
         "M_p(r, X Y f) <= C (1-r)^{-m} M_p(rbar, Y f), rbar = r + (1-r)/4, m = weight of X",
         CheckKind::inequality, 0.0, false, 2},
        [](const CheckParams&, int dim) {
            if (dim < 2) throw ConfigError("composed-derivative-growth needs dim >= 2");
        },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            const TangOp T{1, 2, false};
            const TangOp Tbar{1, 2, true};
            const HoloPoly Rf = radialDerivative(f);
            const MixedPoly RfM = MixedPoly::fromHolo(Rf);
            const MixedPoly Tf = tangentialApplyOne(MixedPoly::fromHolo(f), T);
            struct Pair {
                MixedPoly xy;
                const MixedPoly* y;
                double m;
            };
            const MixedPoly RRf = MixedPoly::fromHolo(radialDerivative(Rf));
            std::vector<Pair> pairs;
            pairs.push_back({RRf, &RfM, 1.0});
            pairs.push_back({tangentialApplyOne(RfM, T), &RfM, 0.5});
            pairs.push_back({tangentialApplyOne(RfM, Tbar), &RfM, 0.5});
            pairs.push_back({tangentialApplyOne(Tf, T), &Tf, 0.5});
            FunctionRecord best;
            double bestRatio = -1.0;
            for (double r : {0.6, 0.85}) {
                const double rbar = r + (1.0 - r) / 4.0;
                for (const auto& pr : pairs) {
                    const double lhs = sphereMean(pr.xy, r, R.P.p, R.sphere);
                    const double rhs = std::pow(1.0 - r, -pr.m) *
                                       sphereMean(*pr.y, rbar, R.P.p, R.sphere);
                    const auto rec = makeRecord(lhs, rhs);
                    if (rec.ratio > bestRatio) {
                        bestRatio = rec.ratio;
                        best = rec;
                    }
                }
            }
            return best;
        });

    add({"hardy-convolution",
         "int (1-r)^{a-1} (int_0^r (r-t)^{b-1} F)^p dr <= C int (1-r)^{a+bp-1} F^p dr",
         CheckKind::inequality, 0.0, false, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly&, const Resources& R, std::uint64_t seed) {
            // a = b = 1 with a seeded positive step profile F.
            const double p = std::isinf(R.P.p) ? 2.0 : R.P.p;
            const int J = 8;
            std::vector<double> F(J);
            Rng rng(Rng::mix(seed, 4242));
            for (double& v : F) v = rng.uniform(0.1, 1.1);
            auto at = [&](double r) { return F[std::min(J - 1, int(r * J))]; };
            const int M = 512;
            double lhs = 0.0, rhs = 0.0, inner = 0.0;
            for (int i = 0; i < M; ++i) {
                const double r = (i + 0.5) / M;
                inner += at(r) / M;  // running int_0^r F
                lhs += std::pow(inner, p) / M;
                rhs += std::pow(1.0 - r, p) * std::pow(at(r), p) / M;
            }
            return makeRecord(lhs, rhs);
        });

    add({"difference-tail-integral",
         "int_r^1 M_p^q(s, R^n f) (1-s)^w ds <= C int_0^{1-r} [t^{-n}||Delta^n_t f||_p]^q t^w dt",
         CheckKind::inequality, 0.0, false, 1},
        [](const CheckParams& P, int) {
            needAlpha(P);
            needFiniteQ(P);
            needOrderAbove(double(P.n), P.alpha, "n");
        },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            const double w = R.P.q * (double(R.P.n) - R.P.alpha) - 1.0;
            const HoloPoly g = radialPow(f, R.P.n);
            FunctionRecord best;
            double bestRatio = -1.0;
            for (double r : {0.5, 0.8}) {
                const double lhs =
                    std::pow(1.0 - r, w + 1.0) *
                    jacobiIntegral(
                        [&](double u) {
                            return std::pow(
                                sphereMean(g, 1.0 - (1.0 - r) * u, R.P.p, R.sphere), R.P.q);
                        },
                        0.0, w, 24);
                const auto grid = logGrid(R.P.gridLo * (1.0 - r), 1.0 - r, R.P.gridSize);
                std::vector<double> gv;
                for (double t : grid) {
                    const double x = hardyNorm(rotationDifference(f, t, R.P.n), R.P.p, R.sphere);
                    gv.push_back(std::pow(x / std::pow(t, double(R.P.n)), R.P.q) *
                                 std::pow(t, w));
                }
                const auto rec = makeRecord(lhs, integralLog(grid, gv));
                if (rec.ratio > bestRatio) {
                    bestRatio = rec.ratio;
                    best = rec;
                }
            }
            return best;
        });

    add({"difference-controls-radial-mean",
         "M_p(r, R^n f) <= C {(1-r)^{-w-1} int_0^{1-r} [t^{-n}||Delta^n_t f||_p]^q t^w dt}^{1/q}",
         CheckKind::inequality, 0.0, false, 1},
        [](const CheckParams& P, int) {
            needAlpha(P);
            needFiniteQ(P);
            needOrderAbove(double(P.n), P.alpha, "n");
        },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            const double w = R.P.q * (double(R.P.n) - R.P.alpha) - 1.0;
            const HoloPoly g = radialPow(f, R.P.n);
            FunctionRecord best;
            double bestRatio = -1.0;
            for (double r : {0.6, 0.9}) {
                const double lhs = sphereMean(g, r, R.P.p, R.sphere);
                const auto grid = logGrid(R.P.gridLo * (1.0 - r), 1.0 - r, R.P.gridSize);
                std::vector<double> gv;
                for (double t : grid) {
                    const double x = hardyNorm(rotationDifference(f, t, R.P.n), R.P.p, R.sphere);
                    gv.push_back(std::pow(x / std::pow(t, double(R.P.n)), R.P.q) *
                                 std::pow(t, w));
                }
                const double rhs = std::pow(
                    std::pow(1.0 - r, -w - 1.0) * integralLog(grid, gv), 1.0 / R.P.q);
                const auto rec = makeRecord(lhs, rhs);
                if (rec.ratio > bestRatio) {
                    bestRatio = rec.ratio;
                    best = rec;
                }
            }
            return best;
        });

    add({"hardy-membership",
         "||f||_p <= C (|f(0)| + K^{1/p}), K = int_0^1 (1-r)^{n-1} M_p(r, R^n f) dr",
         CheckKind::inequality, 0.0, false, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            const HoloPoly g = radialPow(f, R.P.n);
            const double K = jacobiIntegral(
                [&](double r) { return sphereMean(g, r, R.P.p, R.sphere); },
                double(R.P.n) - 1.0, 0.0, 24);
            const double pEff = std::isinf(R.P.p) ? 1.0 : R.P.p;
            const double rhs = evalAtOrigin(f) + std::pow(K, 1.0 / pEff);
            return makeRecord(hardyNorm(f, R.P.p, R.sphere), rhs);
        });

    add({"difference-of-tail",
         "||Delta_U^n (f - f_r)||_p <= C int_r^1 (1-s)^{n-1} M_p(s, R^n f) ds, ||U-I|| < 1-r",
         CheckKind::inequality, 0.0, true, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t seed) {
            const HoloPoly g = radialPow(f, R.P.n);
            FunctionRecord best;
            double bestRatio = -1.0;
            for (double r : {0.5, 0.7}) {
                const HoloPoly tail = f - dilate(f, r);
                double lhs = 0.0;
                for (int j = 0; j < R.P.budget; ++j) {
                    const UnitarySampler sampler(
                        f.dim(), Rng::mix(seed, 100 + std::uint64_t(j) * 2 +
                                                    (r > 0.6 ? 1 : 0)));
                    const auto U = sampler.at(0.999 * (1.0 - r), true);
                    lhs = std::max(
                        lhs, hardyNorm(transformDifference(tail, U, R.P.n), R.P.p, R.sphere));
                }
                const double rhs =
                    std::pow(1.0 - r, double(R.P.n)) *
                    jacobiIntegral(
                        [&](double v) {
                            return sphereMean(g, 1.0 - (1.0 - r) * v, R.P.p, R.sphere);
                        },
                        0.0, double(R.P.n) - 1.0, 16);
                const auto rec = makeRecord(lhs, rhs);
                if (rec.ratio > bestRatio) {
                    bestRatio = rec.ratio;
                    best = rec;
                }
            }
            return best;
        });

    add({"difference-radial-shape",
         "M_p(r, Delta^n_U f) <= C (1-r)^n M_p(r_n, R^n f), r_n = 1 - (1-r)/2^n",
         CheckKind::inequality, 0.0, true, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t seed) {
            const double r = 0.7;
            const double rn = 1.0 - (1.0 - r) / std::pow(2.0, R.P.n);
            double lhs = 0.0;
            for (int j = 0; j < R.P.budget; ++j) {
                const UnitarySampler sampler(f.dim(),
                                             Rng::mix(seed, 500 + std::uint64_t(j)));
                const auto U = sampler.at(0.999 * (1.0 - r), true);
                lhs = std::max(lhs, sphereMean(MixedPoly::fromHolo(transformDifference(f, U, R.P.n)),
                                               r, R.P.p, R.sphere));
            }
            const double rhs = std::pow(1.0 - r, double(R.P.n)) *
                               sphereMean(radialPow(f, R.P.n), rn, R.P.p, R.sphere);
            return makeRecord(lhs, rhs);
        });

    auto validatePhi = [](const CheckParams& P, int) {
        if (!(P.phiAlpha > 0.0) || !(P.phiAlpha < double(P.n))) {
            throw ConfigError("phi inclusion needs 0 < phiAlpha < n");
        }
        // phi(x)/x^c must increase on (0, 1] for some 0 < c < n; verify
        // numerically for c = phiAlpha / 2.
        const double c = 0.5 * P.phiAlpha;
        double prev = 0.0;
        for (int i = 1; i <= 32; ++i) {
            const double x = double(i) / 32.0;
            const double v = std::pow(x, P.phiAlpha) / std::pow(x, c);
            if (v + 1e-15 < prev) throw ConfigError("phi(x)/x^c fails to increase");
            prev = v;
        }
    };

    add({"phi-inclusion-sup",
         "sup_d omega_n^+(d, f)_p / phi(d) <= C sup_r M_p(r, R^n f) (1-r^2)^n / phi(1-r^2)",
         CheckKind::inequality, 0.0, true, 1}, validatePhi,
        [](const HoloPoly& f, const Resources& R, std::uint64_t seed) {
            const double pa = R.P.phiAlpha;
            const auto grid = logGrid(R.P.gridLo, 0.9, R.P.gridSize);
            const auto c = modulusCurves(f, grid, R.P.n, R.P.p, R.P.budget, seed, R.sphere);
            double lhs = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                lhs = std::max(lhs, c.plus[i] / std::pow(grid[i], pa));
            }
            NormSpec spec{R.P.p, kInf,
                          PhiWeight{[pa](double t) { return std::pow(t, pa); }, R.P.n}};
            const double rhs = phiSeminorm(f, spec, R.sphere, R.radial(1.0));
            return makeRecord(lhs, rhs);
        });

    add({"phi-inclusion-integral",
         "int (||Delta^n_t f||_p / phi(t))^q dt/t <= C int (M_p(r,R^n f)(1-r^2)^n/phi(1-r^2))^q "
         "dmu(r)",
         CheckKind::inequality, 0.0, false, 1},
        [validatePhi](const CheckParams& P, int dim) {
            needFiniteQ(P);
            validatePhi(P, dim);
        },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            const double pa = R.P.phiAlpha;
            const auto grid = logGrid(R.P.gridLo, 1.0, R.P.gridSize);
            std::vector<double> x;
            for (double t : grid) {
                x.push_back(hardyNorm(rotationDifference(f, t, R.P.n), R.P.p, R.sphere));
            }
            const double lhs = qIntegralOverT(grid, x, pa, R.P.q);
            NormSpec spec{R.P.p, R.P.q,
                          PhiWeight{[pa](double t) { return std::pow(t, pa); }, R.P.n}};
            const double rhs =
                phiSeminorm(f, spec, R.sphere, R.radial(R.P.q * double(R.P.n)));
            return makeRecord(lhs, rhs);
        });

    // ---- constant-free / exact checks ------------------------------------

    add({"radial-monotonicity", "||R f||_p <= ||R^2 f||_p", CheckKind::exact, 1.0, false, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            return makeRecord(hardyNorm(radialDerivative(f), R.P.p, R.sphere),
                              hardyNorm(radialPow(f, 2), R.P.p, R.sphere));
        });

    add({"block-triangle", "||f||_p <= sum_nu ||W_nu f||_p", CheckKind::exact, 1.0, false, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            double sum = 0.0;
            for (int nu = 0; nu <= R.basis.maxBlock(); ++nu) {
                sum += hardyNorm(blockProject(f, nu, R.basis), R.P.p, R.sphere);
            }
            return makeRecord(hardyNorm(f, R.P.p, R.sphere), sum);
        });

    add({"modulus-nesting", "omega_n^-(d) <= omega_n(d) <= omega_n^+(d)", CheckKind::exact, 1.0,
         true, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t seed) {
            const std::vector<double> grid{0.15, 0.4};
            const auto c = modulusCurves(f, grid, R.P.n, R.P.p, R.P.budget, seed, R.sphere);
            FunctionRecord rec;
            rec.lhs = c.minus.back();
            rec.rhs = c.plus.back();
            if (std::max(rec.lhs, rec.rhs) < kDegenerate) {
                rec.degenerate = true;
                return rec;
            }
            double worst = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (c.unitary[i] > kDegenerate) {
                    worst = std::max(worst, c.minus[i] / c.unitary[i]);
                }
                if (c.plus[i] > kDegenerate) {
                    worst = std::max(worst, c.unitary[i] / c.plus[i]);
                }
            }
            rec.ratio = worst;
            return rec;
        });

    add({"tail-sequence-constant",
         "||{2^{nu a} s_{nu-1}}||_q <= (1-2^{-a})^{-1} ||{2^{nu a}(s_{nu-1}-s_nu)}||_q "
         "for s_nu = (Q_nu f - f)(z0)",
         CheckKind::exact, 1.0, false, 1},
        [](const CheckParams& P, int) { needAlpha(P); },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            std::vector<Cplx> z0(static_cast<std::size_t>(f.dim()));
            for (int j = 0; j < f.dim(); ++j) {
                z0[static_cast<std::size_t>(j)] =
                    std::polar(0.7 / std::sqrt(double(f.dim())), double(j + 1));
            }
            const Cplx fz = f.eval(z0);
            std::vector<Cplx> s;
            for (int nu = 0; nu <= R.basis.maxBlock() + 1; ++nu) {
                s.push_back(partialSumProject(f, nu, R.basis).eval(z0) - fz);
            }
            const auto b = sequenceTailBound(s, R.P.alpha, R.P.q);
            return makeRecord(b.lhs, b.rhs);
        });

    add({"monotone-mean", "r -> M_p(r, f) is nondecreasing", CheckKind::exact, 1.0, false, 1},
        [](const CheckParams&, int) {},
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            double prev = -1.0, worst = 0.0, last = 0.0;
            for (int i = 1; i <= 20; ++i) {
                const double m = sphereMean(f, double(i) / 20.0, R.P.p, R.sphere);
                if (prev >= kDegenerate && m > kDegenerate) {
                    worst = std::max(worst, prev / m);
                }
                prev = m;
                last = m;
            }
            FunctionRecord rec;
            rec.lhs = last;
            rec.rhs = last;
            if (last < kDegenerate) {
                rec.degenerate = true;
                return rec;
            }
            rec.ratio = worst;
            return rec;
        });

    add({"block-derivative-window",
         "||W_nu R^s f||_2 / (2^{nu s} ||W_nu f||_2) lies in [2^{-s-1}, 2^{s+1}], nu >= 2",
         CheckKind::exact, 1.0, false, 1},
        [](const CheckParams& P, int) {
            if (P.s == 0.0) throw ConfigError("block-derivative-window needs s != 0");
        },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            const double s = R.P.s;
            const double hi = std::pow(2.0, std::abs(s) + 1.0);
            const double lo = 1.0 / hi;
            const HoloPoly g = radialDerivative(f, s);
            FunctionRecord rec;
            double worst = 0.0;
            int counted = 0;
            for (int nu = 2; nu <= R.basis.maxBlock(); ++nu) {
                const double base = hardyNorm(blockProject(f, nu, R.basis), 2.0, R.sphere);
                if (base < kDegenerate) continue;
                const double top = hardyNorm(blockProject(g, nu, R.basis), 2.0, R.sphere);
                const double rho = top / (std::pow(2.0, double(nu) * s) * base);
                worst = std::max(worst, std::max(rho / hi, lo / rho));
                rec.lhs = std::max(rec.lhs, rho);
                ++counted;
            }
            if (counted == 0) {
                rec.degenerate = true;
                return rec;
            }
            rec.rhs = hi;
            rec.ratio = worst;
            return rec;
        });

    add({"tangential-radial-identity",
         "sum_j d_j R^{k-j} f = sum_delta Tbar_delta T_delta f (fitted d, residual ~ 0)",
         CheckKind::exact, 1.0, false, 2},
        [](const CheckParams& P, int dim) {
            if (dim < 2) throw ConfigError("tangential-radial-identity needs dim >= 2");
            if (P.k < 1) throw ConfigError("tangential-radial-identity needs k >= 1");
        },
        [](const HoloPoly& f, const Resources& R, std::uint64_t) {
            const int k = R.P.k;
            const auto fit = solveRadialIdentityConstants(k, R.dim);
            std::vector<Cplx> lam(static_cast<std::size_t>(R.maxDegree) + 1, 0.0);
            lam[0] = fit.d[static_cast<std::size_t>(k)];
            for (int m = 1; m <= R.maxDegree; ++m) {
                double v = 0.0;
                for (int j = 0; j <= k; ++j) {
                    v += fit.d[static_cast<std::size_t>(j)] * std::pow(double(m), k - j);
                }
                lam[static_cast<std::size_t>(m)] = v;
            }
            const HoloPoly lhsPoly = applyMultiplier(f, MultiplierSpec::custom(std::move(lam)));

            MixedPoly rhsPoly(R.dim);
            std::vector<TangOp> choices;
            for (int i = 1; i <= R.dim; ++i) {
                for (int j = 1; j <= R.dim; ++j) {
                    if (i != j) choices.push_back({i, j, false});
                }
            }
            std::vector<int> pick(static_cast<std::size_t>(k), 0);
            const MixedPoly base = MixedPoly::fromHolo(f);
            while (true) {
                std::vector<TangOp> tuple;
                for (int t = 0; t < k; ++t) tuple.push_back(choices[std::size_t(pick[std::size_t(t)])]);
                MixedPoly g = tangentialApply(base, tuple);
                for (auto& op : tuple) op.bar = true;
                rhsPoly += tangentialApply(g, tuple);
                int pos = k - 1;
                while (pos >= 0 && ++pick[std::size_t(pos)] == int(choices.size())) {
                    pick[std::size_t(pos--)] = 0;
                }
                if (pos < 0) break;
            }
            MixedPoly diff = rhsPoly;
            diff -= MixedPoly::fromHolo(lhsPoly);
            diff.prune(0.0);
            const double scale = std::max(1.0, lhsPoly.maxAbsCoeff());
            return makeRecord(diff.maxAbsCoeff(), 1e-8 * scale);
        });

    return defs;
}

const std::vector<CheckDef>& registry() {
    static const std::vector<CheckDef> defs = buildRegistry();
    return defs;
}

const CheckDef& findCheck(const std::string& id) {
    for (const auto& def : registry()) {
        if (def.info.id == id) return def;
    }
    std::string known;
    for (const auto& def : registry()) {
        if (!known.empty()) known += ", ";
        known += def.info.id;
    }
    throw ConfigError("unknown check id '" + id + "'; registered: " + known);
}

double windowDrift(const RatioStats& a, const RatioStats& b) {
    if (a.counted == 0 || b.counted == 0) return 0.0;
    const double tiny = 1e-300;
    const double dMax = std::abs(b.max - a.max) / std::max(std::abs(a.max), tiny);
    const double dMin = std::abs(b.min - a.min) / std::max(std::abs(a.min), tiny);
    return std::max(dMax, dMin);
}

}  // namespace

const std::vector<CheckInfo>& registeredChecks() {
    static const std::vector<CheckInfo> infos = [] {
        std::vector<CheckInfo> out;
        for (const auto& def : registry()) out.push_back(def.info);
        return out;
    }();
    return infos;
}

RatioStats ratioStats(const std::vector<FunctionRecord>& records) {
    std::vector<double> ratios;
    for (const auto& r : records) {
        if (!r.degenerate && std::isfinite(r.ratio)) ratios.push_back(r.ratio);
    }
    RatioStats s;
    s.counted = static_cast<int>(ratios.size());
    if (ratios.empty()) return s;
    std::sort(ratios.begin(), ratios.end());
    s.min = ratios.front();
    s.max = ratios.back();
    const std::size_t m = ratios.size() / 2;
    s.median = ratios.size() % 2 == 1 ? ratios[m] : 0.5 * (ratios[m - 1] + ratios[m]);
    return s;
}

CheckResult runCheck(const std::string& id, const FamilySpec& family, const CheckParams& params) {
    const CheckDef& def = findCheck(id);
    FamilySpec fam = family;
    fam.dim = std::max(fam.dim, def.info.minDim);
    def.validate(params, fam.dim);

    CheckResult res;
    res.id = def.info.id;
    res.anchor = def.info.anchor;
    res.kind = def.info.kind;
    res.params = {{"p", params.p},         {"q", params.q},       {"alpha", params.alpha},
                  {"s", params.s},         {"s2", params.s2},     {"n", double(params.n)},
                  {"k", double(params.k)}, {"t", params.t},       {"phiAlpha", params.phiAlpha},
                  {"budget", double(params.budget)},              {"dim", double(fam.dim)},
                  {"maxDegree", double(fam.maxDegree)}};

    auto evalFamily = [&](int degree, int budget) {
        FamilySpec fs = fam;
        fs.maxDegree = degree;
        CheckParams P = params;
        P.budget = budget;
        const auto funcs = makeFamily(fs);
        const Resources R(fs.dim, degree, P);
        std::vector<FunctionRecord> out;
        const std::uint64_t checkSeed = Rng::hashString(fs.seed, def.info.id.c_str());
        for (std::size_t j = 0; j < funcs.size(); ++j) {
            out.push_back(def.eval(funcs[j], R, Rng::mix(checkSeed, j)));
        }
        return out;
    };

    res.base = evalFamily(fam.maxDegree, params.budget);
    res.doubled = evalFamily(2 * fam.maxDegree, params.budget);
    if (def.info.sampled) res.budgeted = evalFamily(fam.maxDegree, 2 * params.budget);

    res.baseStats = ratioStats(res.base);
    res.doubledStats = ratioStats(res.doubled);
    res.budgetedStats = ratioStats(res.budgeted);
    res.degreeDrift = windowDrift(res.baseStats, res.doubledStats);
    if (def.info.sampled) res.budgetDrift = windowDrift(res.baseStats, res.budgetedStats);

    for (const auto* stage : {&res.base, &res.doubled, &res.budgeted}) {
        for (const auto& r : *stage) {
            res.degenerateCount += r.degenerate ? 1 : 0;
            if (!r.degenerate && !std::isfinite(r.ratio)) res.hardFail = true;
        }
    }

    switch (def.info.kind) {
        case CheckKind::equivalence:
            res.pass = !res.hardFail && res.degreeDrift < 0.25;
            if (!res.pass && res.hardFail) res.note = "one side vanished against the other";
            else if (!res.pass) res.note = "ratio window unstable under degree doubling";
            break;
        case CheckKind::inequality: {
            const bool stable = res.degreeDrift < 0.25 && res.budgetDrift < 0.25;
            res.pass = !res.hardFail && stable;
            if (res.hardFail) res.note = "right side vanished against the left";
            else if (!stable) res.note = "empirical constant drifted";
            break;
        }
        case CheckKind::exact: {
            bool ok = !res.hardFail;
            for (const auto* stage : {&res.base, &res.doubled, &res.budgeted}) {
                for (const auto& r : *stage) {
                    if (!r.degenerate && r.ratio > def.info.bound + 1e-9) ok = false;
                }
            }
            res.pass = ok;
            if (!ok) res.note = "hard bound exceeded";
            break;
        }
    }
    return res;
}

}  // namespace ballfun::harness
