#include "ballfun/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ballfun/errors.hpp"
#include "ballfun/linear_ops.hpp"
#include "ballfun/quad/norms.hpp"
#include "ballfun/rng.hpp"

namespace ballfun {

HoloPoly rotationDifference(const HoloPoly& f, double t, int n) {
    if (n < 1) throw RangeError("rotationDifference: order must be at least 1");
    HoloPoly out(f.dim(), f.maxDegree());
    for (int k = 0; k <= f.maxDegree(); ++k) {
        const Cplx factor = std::pow(std::polar(1.0, double(k) * t) - 1.0, n);
        for (const auto& [alpha, c] : f.part(k)) out.set(alpha, factor * c);
    }
    return out;
}

HoloPoly transformDifference(const HoloPoly& f, const Eigen::MatrixXcd& U, int n) {
    if (n < 1) throw RangeError("transformDifference: order must be at least 1");
    if (U.rows() != f.dim() || U.cols() != f.dim()) {
        throw ShapeError("transformDifference: matrix dimension mismatch");
    }
    HoloPoly out(f.dim(), f.maxDegree());
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(f.dim(), f.dim());
    double sign = n % 2 == 0 ? 1.0 : -1.0;
    double binom = 1.0;
    for (int j = 0; j <= n; ++j) {
        out += (sign * binom) * (j == 0 ? f : composeLinear(f, power));
        sign = -sign;
        binom = binom * double(n - j) / double(j + 1);
        if (j < n) power = power * U;
    }
    return out;
}

namespace {

// Sup over |t| <= tmax of ||Delta_t^n f||_p: coarse grid, then golden
// section on the bracketing interval around the best grid point.
std::pair<double, double> minusSup(const HoloPoly& f, double tmax, int n, double p,
                                   const SphereRule& rule) {
    auto value = [&](double t) { return hardyNorm(rotationDifference(f, t, n), p, rule); };
    const int gridN = 33;
    double bestT = 0.0, bestV = 0.0;
    for (int i = 0; i <= gridN; ++i) {
        const double t = -tmax + 2.0 * tmax * i / gridN;
        const double v = value(t);
        if (v > bestV) {
            bestV = v;
            bestT = t;
        }
    }
    double a = std::max(-tmax, bestT - 2.0 * tmax / gridN);
    double b = std::min(tmax, bestT + 2.0 * tmax / gridN);
    const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invPhi * (b - a), x2 = a + invPhi * (b - a);
    double g1 = value(x1), g2 = value(x2);
    for (int i = 0; i < 60; ++i) {
        if (g1 < g2) {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + invPhi * (b - a);
            g2 = value(x2);
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - invPhi * (b - a);
            g1 = value(x1);
        }
    }
    if (g1 > bestV) {
        bestV = g1;
        bestT = x1;
    }
    if (g2 > bestV) {
        bestV = g2;
        bestT = x2;
    }
    // The sup is often at the endpoint; evaluate both explicitly.
    for (double t : {tmax, -tmax}) {
        const double v = value(t);
        if (v > bestV) {
            bestV = v;
            bestT = t;
        }
    }
    return {bestV, bestT};
}

// Random Hermitian matrix of unit operator norm, drawn from the sample
// stream of the given generator.
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

Eigen::MatrixXcd unitaryFromGenerator(const Eigen::MatrixXcd& H, double tau) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    Eigen::VectorXcd phases(H.rows());
    for (int i = 0; i < H.rows(); ++i) {
        phases(i) = std::polar(1.0, tau * es.eigenvalues()(i));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

ModulusEstimate modulusEstimate(const HoloPoly& f, double delta, int n, double p,
                                ModulusKind kind, int budget, std::uint64_t seed,
                                const SphereRule& rule, const ModulusOptions& opts) {
    if (!(delta > 0.0)) throw RangeError("modulusEstimate: delta must be positive");
    if (budget < 1) throw RangeError("modulusEstimate: budget must be at least 1");
    if (n < 1) throw RangeError("modulusEstimate: order must be at least 1");

    ModulusEstimate est;
    est.kind = kind;
    est.delta = delta;
    est.order = n;
    est.p = p;

    double deltaEff = delta;
    if (deltaEff >= 2.0) {
        deltaEff = 2.0;
        est.clamped = true;
    }

    // Minus kind: exact 1-D optimization over rotation angles; also the
    // rotation subset shared by the larger kinds.
    const double tmax = opts.rawAngleConvention
                            ? std::min(delta, std::numbers::pi)
                            : 2.0 * std::asin(0.5 * std::min(deltaEff, 2.0 - 1e-12));
    const auto [rotV, rotT] = minusSup(f, tmax, n, p, rule);
    est.value = rotV;
    {
        std::ostringstream w;
        w << "rotation t=" << rotT;
        est.witness = w.str();
    }
    if (kind == ModulusKind::minus) {
        est.samples = 1;
        return est;
    }

    // Unitary samples: U = exp(i tau H) with ||U - I|| = 2 sin(tau/2) < delta.
    const double tauMax = 2.0 * std::asin(0.5 * std::min(deltaEff, 2.0 - 1e-12));
    const bool plus = kind == ModulusKind::plus;
    for (int j = 0; j < budget; ++j) {
        Rng rng(Rng::mix(seed, std::uint64_t(j)));
        const auto H = randomHermitianUnit(f.dim(), rng);
        const double tau = tauMax * rng.uniform();
        const Eigen::MatrixXcd U = unitaryFromGenerator(H, tau);
        const double v = hardyNorm(transformDifference(f, U, n), p, rule);
        if (v > est.value) {
            est.value = v;
            std::ostringstream w;
            w << "unitary sample " << j << " tau=" << tau;
            est.witness = w.str();
        }
        if (plus) {
            // The plus kind keeps every unitary sample and adds a contracted
            // variant rho U with ||rho U - I|| still below delta, so its
            // sample set is a strict superset of the unitary kind's.
            const double d0 = operatorNorm(U - Eigen::MatrixXcd::Identity(f.dim(), f.dim()));
            if (d0 < 1.0) {
                const double room = std::min((deltaEff - d0) / (1.0 - d0), 1.0);
                const double rho = 1.0 - 0.999 * room * rng.uniform();
                const double vc = hardyNorm(transformDifference(f, rho * U, n), p, rule);
                if (vc > est.value) {
                    est.value = vc;
                    std::ostringstream w;
                    w << "contraction sample " << j << " tau=" << tau << " rho=" << rho;
                    est.witness = w.str();
                }
            }
        }
    }
    est.samples = budget + 1;
    return est;
}

ModulusTable modulusDial(const HoloPoly& f, std::span<const double> deltaGrid, int n, double p,
                         ModulusKind kind, int budget, std::uint64_t seed, const SphereRule& rule,
                         const ModulusOptions& opts) {
    for (std::size_t i = 1; i < deltaGrid.size(); ++i) {
        if (!(deltaGrid[i] > deltaGrid[i - 1])) {
            throw RangeError("modulusDial: delta grid must be strictly increasing");
        }
    }
    ModulusTable table;
    double running = 0.0;
    for (double d : deltaGrid) {
        const auto est = modulusEstimate(f, d, n, p, kind, budget, seed, rule, opts);
        running = std::max(running, est.value);
        table.delta.push_back(d);
        table.value.push_back(running);
    }
    return table;
}

HardySobolevReport hardySobolevCheck(const HoloPoly& f, int n, double p, int budget,
                                     std::uint64_t seed, const SphereRule& rule, double exponent,
                                     int gridSize) {
    if (gridSize < 2) throw RangeError("hardySobolevCheck: grid needs at least two points");
    const double e = exponent > 0.0 ? exponent : double(n);
    std::vector<double> grid;
    const double lo = 1e-3, hi = 0.5;
    for (int i = 0; i < gridSize; ++i) {
        grid.push_back(lo * std::pow(hi / lo, double(i) / (gridSize - 1)));
    }
    HardySobolevReport report;
    report.table = modulusDial(f, grid, n, p, ModulusKind::unitary, budget, seed, rule);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (report.table.value[i] > 0.0) {
            report.ratioSup = std::max(report.ratioSup, report.table.value[i] / std::pow(grid[i], e));
        }
    }
    // Least-squares slope of log(value) vs log(delta) on the small-delta half.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < grid.size() / 2; ++i) {
        if (report.table.value[i] <= 0.0) continue;
        const double x = std::log(grid[i]);
        const double y = std::log(report.table.value[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2) {
        report.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    }
    return report;
}

}  // namespace ballfun
