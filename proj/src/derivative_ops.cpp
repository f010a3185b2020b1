#include "ballfun/derivative_ops.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace ballfun {

MixedPoly partialDerivative(const HoloPoly& f, int j, bool conjugate) {
    return partialDerivative(MixedPoly::fromHolo(f), j, conjugate);
}

MixedPoly partialDerivative(const MixedPoly& f, int j, bool conjugate) {
    if (j < 1 || j > f.dim()) throw ShapeError("partialDerivative: coordinate out of range");
    MixedPoly out(f.dim());
    const int idx = j - 1;
    for (const auto& [key, c] : f.terms()) {
        const MultiIndex& exp = conjugate ? key.second : key.first;
        if (exp[idx] == 0) continue;
        MultiIndex alpha = key.first, beta = key.second;
        double power;
        if (conjugate) {
            power = beta[idx];
            --beta[idx];
        } else {
            power = alpha[idx];
            --alpha[idx];
        }
        out.add(alpha, beta, power * c);
    }
    return out;
}

HoloPoly holoPartial(const HoloPoly& f, int j) {
    if (j < 1 || j > f.dim()) throw ShapeError("holoPartial: coordinate out of range");
    const int idx = j - 1;
    HoloPoly out(f.dim(), std::max(0, f.maxDegree() - 1));
    f.forEachTerm([&](const MultiIndex& alpha, Cplx c) {
        if (alpha[idx] == 0) return;
        MultiIndex a = alpha;
        --a[idx];
        out.add(a, static_cast<double>(alpha[idx]) * c);
    });
    return out;
}

std::vector<std::pair<HoloPoly, double>> gradientComponents(const HoloPoly& f, int s) {
    if (s < 1) throw RangeError("gradientComponents: order must be >= 1");
    std::vector<std::pair<HoloPoly, double>> out;
    for (const auto& gamma : monomialsOfDegree(f.dim(), s)) {
        HoloPoly g = f;
        for (int j = 0; j < f.dim(); ++j)
            for (int t = 0; t < gamma[j]; ++t) g = holoPartial(g, j + 1);
        out.emplace_back(std::move(g), multinomial(gamma));
    }
    return out;
}

double gradientNorm(const HoloPoly& f, int s, std::span<const Cplx> z) {
    double sum = 0.0;
    for (const auto& [g, mult] : gradientComponents(f, s)) {
        const double a = std::abs(g.eval(z));
        sum += mult * a * a;
    }
    return std::sqrt(sum);
}

MixedPoly tangentialApplyOne(const MixedPoly& f, const TangOp& op) {
    if (op.i < 1 || op.i > f.dim() || op.j < 1 || op.j > f.dim())
        throw ShapeError("tangentialApplyOne: index out of range");
    MixedPoly out(f.dim());
    const MultiIndex zero(f.dim(), 0);
    MultiIndex ei = zero, ej = zero;
    ei[op.i - 1] = 1;
    ej[op.j - 1] = 1;

    auto addProduct = [&](const MultiIndex& mulA, const MultiIndex& mulB, const MixedPoly& g, Cplx sign) {
        for (const auto& [key, c] : g.terms()) {
            MultiIndex alpha = key.first, beta = key.second;
            for (int t = 0; t < f.dim(); ++t) {
                alpha[t] += mulA[t];
                beta[t] += mulB[t];
            }
            out.add(alpha, beta, sign * c);
        }
    };

    if (!op.bar) {
        // conj(z_i) d_j f - conj(z_j) d_i f
        addProduct(zero, ei, partialDerivative(f, op.j, false), 1.0);
        addProduct(zero, ej, partialDerivative(f, op.i, false), -1.0);
    } else {
        // z_i d_{conj(z_j)} f - z_j d_{conj(z_i)} f
        addProduct(ei, zero, partialDerivative(f, op.j, true), 1.0);
        addProduct(ej, zero, partialDerivative(f, op.i, true), -1.0);
    }
    out.prune(0.0);
    return out;
}

MixedPoly tangentialApply(const MixedPoly& f, std::span<const TangOp> ops) {
    MixedPoly g = f;
    for (const auto& op : ops) g = tangentialApplyOne(g, op);
    return g;
}

namespace {

std::vector<TangOp> factorChoices(int dim, bool plus) {
    std::vector<TangOp> out;
    for (int i = 1; i <= dim; ++i)
        for (int j = 1; j <= dim; ++j) {
            if (i == j) continue;
            out.push_back({i, j, false});
            if (plus) out.push_back({i, j, true});
        }
    return out;
}

void enumerateCompositions(const MixedPoly& f, const std::vector<TangOp>& choices, int k,
                           std::vector<MixedPoly>& out) {
    if (k == 0) {
        out.push_back(f);
        return;
    }
    for (const auto& op : choices) enumerateCompositions(tangentialApplyOne(f, op), choices, k - 1, out);
}

}  // namespace

std::vector<MixedPoly> tangentialGradientPolys(const HoloPoly& f, int k, bool plus) {
    if (k < 1) throw RangeError("tangentialGradientPolys: order must be >= 1");
    std::vector<MixedPoly> out;
    enumerateCompositions(MixedPoly::fromHolo(f), factorChoices(f.dim(), plus), k, out);
    return out;
}

double tangentialGradientValue(const HoloPoly& f, int k, bool plus, std::span<const Cplx> z) {
    double sum = 0.0;
    for (const auto& g : tangentialGradientPolys(f, k, plus)) sum += std::abs(g.eval(z));
    return sum;
}

RadialIdentityConstants solveRadialIdentityConstants(int k, int dim, int testDegree, double tol) {
    if (k < 1) throw RangeError("solveRadialIdentityConstants: order must be >= 1");
    if (dim < 2) throw ShapeError("solveRadialIdentityConstants: needs dimension >= 2");
    if (testDegree < 0) testDegree = 2 * k + 4;

    const auto choices = factorChoices(dim, false);
    const MultiIndex zeroIdx(dim, 0);

    // Rows with a nonzero left side: coefficient at (alpha, 0) of the right
    // side against sum_j d_j m^{k-j}. Rows for any other monomial of the
    // right side have an identically zero left side and feed the residual.
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    double offDiagonalResidual = 0.0;

    for (int m = 0; m <= testDegree; ++m) {
        for (const auto& alpha : monomialsOfDegree(dim, m)) {
            // Right side: sum over delta of Tbar_delta T_delta z^alpha.
            MixedPoly total(dim);
            const MixedPoly base = MixedPoly::fromHolo(monomial(dim, alpha));
            std::vector<TangOp> tuple(k, choices[0]);
            std::vector<int> pick(k, 0);
            while (true) {
                for (int t = 0; t < k; ++t) tuple[t] = choices[pick[t]];
                MixedPoly g = tangentialApply(base, tuple);
                for (auto& op : tuple) op.bar = true;
                g = tangentialApply(g, tuple);
                total += g;
                int pos = k - 1;
                while (pos >= 0 && ++pick[pos] == static_cast<int>(choices.size())) pick[pos--] = 0;
                if (pos < 0) break;
            }
            total.prune(1e-13);

            std::vector<double> row(k + 1);
            for (int j = 0; j <= k; ++j) row[j] = std::pow(static_cast<double>(m), k - j);
            if (m == 0) {
                for (int j = 0; j < k; ++j) row[j] = 0.0;
                row[k] = 1.0;
            }
            double diag = 0.0;
            for (const auto& [key, c] : total.terms()) {
                if (key.first == alpha && degreeOf(key.second) == 0) {
                    if (std::abs(c.imag()) > 1e-10)
                        throw IdentityError("solveRadialIdentityConstants: complex coefficient in expansion");
                    diag = c.real();
                } else {
                    offDiagonalResidual = std::max(offDiagonalResidual, std::abs(c));
                }
            }
            rows.push_back(row);
            rhs.push_back(diag);
        }
    }

    Eigen::MatrixXd A(rows.size(), k + 1);
    Eigen::VectorXd b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int j = 0; j <= k; ++j) A(r, j) = rows[r][j];
        b(r) = rhs[r];
    }
    Eigen::VectorXd d = A.colPivHouseholderQr().solve(b);
    const double lsResidual = (A * d - b).lpNorm<Eigen::Infinity>();
    const double residual = std::max(lsResidual, offDiagonalResidual);
    if (residual > tol)
        throw IdentityError("solveRadialIdentityConstants: identity residual above tolerance");

    RadialIdentityConstants out;
    out.d.assign(d.data(), d.data() + k + 1);
    out.residual = residual;
    return out;
}

}  // namespace ballfun
