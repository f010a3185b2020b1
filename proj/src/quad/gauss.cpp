#include "ballfun/quad/gauss.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "ballfun/errors.hpp"

namespace ballfun {

// Golub-Welsch from the Jacobi-polynomial three-term recurrence for the
// weight (1-x)^a (1+x)^b on [-1,1], then mapped to [0,1].
Rule1D gaussJacobi01(int n, double a, double b) {
    if (n < 1) throw RangeError("gaussJacobi01: need at least one node");
    if (a <= -1.0 || b <= -1.0) throw RangeError("gaussJacobi01: weight exponents must exceed -1");

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    auto diag = [&](int k) -> double {
        if (k == 0) return (b - a) / (a + b + 2.0);
        const double s = 2.0 * k + a + b;
        return (b * b - a * a) / (s * (s + 2.0));
    };
    auto offdiag2 = [&](int k) -> double {  // beta_k for k >= 1
        const double s = 2.0 * k + a + b;
        return 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    };
    for (int k = 0; k < n; ++k) J(k, k) = diag(k);
    for (int k = 1; k < n; ++k) {
        const double e = std::sqrt(offdiag2(k));
        J(k, k - 1) = e;
        J(k - 1, k) = e;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 =
        std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                 std::lgamma(a + b + 2.0));

    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        const double x = es.eigenvalues()(k);                 // node on [-1,1]
        const double w = mu0 * std::pow(es.eigenvectors()(0, k), 2);
        // Map x -> u = (1+x)/2; (1-x)^a (1+x)^b dx = 2^{a+b+1} (1-u)^a u^b du.
        rule.nodes[k] = 0.5 * (1.0 + x);
        rule.weights[k] = w * std::pow(2.0, -(a + b + 1.0));
    }
    return rule;
}

Rule1D gaussLegendre01(int n) {
    return gaussJacobi01(n, 0.0, 0.0);
}

Rule1D gaussJacobi01Normalized(int n, double a, double b) {
    Rule1D rule = gaussJacobi01(n, a, b);
    const double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    for (auto& w : rule.weights) w /= total;
    return rule;
}

}  // namespace ballfun
