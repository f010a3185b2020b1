#include "ballfun/linear_ops.hpp"

#include <cmath>
#include <map>

namespace ballfun {

double operatorNorm(const Eigen::MatrixXcd& A) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    return svd.singularValues()(0);
}

namespace {

// Homogeneous sparse polynomial used while expanding (Uz)^alpha.
using Homo = std::map<MultiIndex, Cplx>;

// Multiply a homogeneous polynomial by the linear form sum_i U(row,i) z_i.
Homo timesLinearForm(const Homo& h, const Eigen::MatrixXcd& U, int row) {
    Homo out;
    const int dim = static_cast<int>(U.cols());
    for (const auto& [alpha, c] : h) {
        for (int i = 0; i < dim; ++i) {
            const Cplx u = U(row, i);
            if (u == Cplx(0.0)) continue;
            MultiIndex next = alpha;
            ++next[i];
            out[next] += c * u;
        }
    }
    return out;
}

}  // namespace

HoloPoly composeLinear(const HoloPoly& f, const Eigen::MatrixXcd& U, double normTol) {
    const int dim = f.dim();
    if (U.rows() != dim || U.cols() != dim) throw ShapeError("composeLinear: matrix dimension mismatch");
    if (operatorNorm(U) > 1.0 + normTol) throw RangeError("composeLinear: operator norm exceeds 1");

    // composed[alpha] = (Uz)^alpha, built bottom-up via alpha -> alpha - e_j.
    std::map<MultiIndex, Homo> prev, cur;
    prev[MultiIndex(dim, 0)] = Homo{{MultiIndex(dim, 0), Cplx(1.0)}};

    HoloPoly out(f.dim(), f.maxDegree());
    for (const auto& [alpha, c] : f.part(0)) out.add(alpha, c);

    for (int k = 1; k <= f.maxDegree(); ++k) {
        cur.clear();
        // Expand every monomial of degree k that can still contribute: those
        // below some support multi-index of f in the componentwise order would
        // suffice, but the plain chain through the first nonzero coordinate is
        // already cheap at desk scale, so expand descendants of what exists.
        bool anyHigher = false;
        for (int kk = k; kk <= f.maxDegree(); ++kk)
            if (!f.part(kk).empty()) anyHigher = true;
        if (!anyHigher) break;

        for (const auto& [beta, homo] : prev) {
            for (int j = 0; j < dim; ++j) {
                MultiIndex alpha = beta;
                ++alpha[j];
                // Avoid recomputing alpha reachable through several parents:
                // only extend through the first nonzero coordinate of alpha.
                int firstNonzero = 0;
                while (alpha[firstNonzero] == 0) ++firstNonzero;
                if (firstNonzero != j) continue;
                cur[alpha] = timesLinearForm(homo, U, j);
            }
        }
        for (const auto& [alpha, c] : f.part(k)) {
            auto it = cur.find(alpha);
            if (it == cur.end()) continue;  // unreachable in practice
            for (const auto& [gamma, v] : it->second) out.add(gamma, c * v);
        }
        prev.swap(cur);
    }
    out.prune(0.0);
    return out;
}

HoloPoly dilate(const HoloPoly& f, double rho) {
    if (!(rho > 0.0 && rho <= 1.0)) throw RangeError("dilate: rho must lie in (0,1]");
    HoloPoly out(f.dim(), f.maxDegree());
    double scale = 1.0;
    for (int k = 0; k <= f.maxDegree(); ++k) {
        for (const auto& [alpha, c] : f.part(k)) out.set(alpha, scale * c);
        scale *= rho;
    }
    return out;
}

}  // namespace ballfun
