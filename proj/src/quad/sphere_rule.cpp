#include "ballfun/quad/sphere_rule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ballfun/derivative_ops.hpp"
#include "ballfun/errors.hpp"
#include "ballfun/quad/gauss.hpp"

namespace ballfun {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace

SphereRule SphereRule::build(int dim, int exactDegree) {
    if (dim < 1) throw RangeError("SphereRule: dim must be positive");
    if (dim > 4) throw CapabilityError("SphereRule: dim > 4 not supported");
    if (exactDegree < 0) throw RangeError("SphereRule: exactDegree must be nonnegative");

    SphereRule rule;
    rule.dim_ = dim;
    rule.exactDegree_ = exactDegree;

    if (dim == 1) {
        rule.anglesPerDim_ = 2 * (exactDegree + 1);
        rule.slices_.push_back({{1.0}, 1.0});
        return rule;
    }

    // Equispaced angles kill every per-axis frequency a_j - b_j that is a
    // nonzero multiple of m; with m = exactDegree + 1 only a_j = b_j survives
    // through degree exactDegree, leaving an even monomial in the moduli.
    rule.anglesPerDim_ = exactDegree + 1;

    // Squared moduli u are uniform on the simplex; stick-breaking gives
    // independent v_j ~ Beta(1, dim - j) with u_j = v_j prod_{i<j} (1 - v_i).
    const int uDegree = exactDegree / 2;
    const int profileNodes = uDegree / 2 + 1;
    std::vector<Rule1D> vRules;
    for (int j = 1; j < dim; ++j) {
        vRules.push_back(gaussJacobi01Normalized(profileNodes, double(dim - j - 1), 0.0));
    }

    std::vector<int> idx(dim - 1, 0);
    while (true) {
        SphereSlice slice;
        slice.weight = 1.0;
        slice.modulus.resize(dim);
        double rest = 1.0;
        for (int j = 0; j < dim - 1; ++j) {
            const double v = vRules[j].nodes[idx[j]];
            slice.weight *= vRules[j].weights[idx[j]];
            slice.modulus[j] = std::sqrt(rest * v);
            rest *= 1.0 - v;
        }
        slice.modulus[dim - 1] = std::sqrt(std::max(rest, 0.0));
        rule.slices_.push_back(std::move(slice));

        int ax = dim - 2;
        while (ax >= 0 && ++idx[ax] == int(vRules[ax].nodes.size())) idx[ax--] = 0;
        if (ax < 0) break;
    }
    return rule;
}

std::size_t SphereRule::nodeCount() const {
    return slices_.size() * ipow(std::size_t(anglesPerDim_), dim_);
}

void SphereRule::forEachNode(const std::function<void(std::span<const Cplx>, double)>& fn) const {
    const int m = anglesPerDim_;
    std::vector<Cplx> roots(m);
    for (int l = 0; l < m; ++l) {
        const double th = 2.0 * std::numbers::pi * l / m;
        roots[l] = Cplx(std::cos(th), std::sin(th));
    }
    const double angleWeight = 1.0 / double(ipow(std::size_t(m), dim_));
    std::vector<Cplx> z(dim_);
    std::vector<int> l(dim_, 0);
    for (const auto& slice : slices_) {
        std::fill(l.begin(), l.end(), 0);
        while (true) {
            for (int j = 0; j < dim_; ++j) z[j] = slice.modulus[j] * roots[l[j]];
            fn(z, slice.weight * angleWeight);
            int ax = dim_ - 1;
            while (ax >= 0 && ++l[ax] == m) l[ax--] = 0;
            if (ax < 0) break;
        }
    }
}

nlohmann::json SphereRule::toJson(std::size_t maxExplicitNodes) const {
    if (nodeCount() > maxExplicitNodes) {
        throw CapabilityError("SphereRule::toJson: node count too large for explicit listing");
    }
    nlohmann::json nodes = nlohmann::json::array();
    nlohmann::json weights = nlohmann::json::array();
    forEachNode([&](std::span<const Cplx> z, double w) {
        nlohmann::json node = nlohmann::json::array();
        for (const Cplx& c : z) {
            node.push_back(c.real());
            node.push_back(c.imag());
        }
        nodes.push_back(std::move(node));
        weights.push_back(w);
    });
    return {{"dim", dim_},
            {"exactDegree", exactDegree_},
            {"nodes", std::move(nodes)},
            {"weights", std::move(weights)}};
}

SphereRule SphereRule::fromJson(const nlohmann::json& j) {
    // Rules are reproducible from their parameters; the explicit listing is
    // for external consumers and checked for size consistency only.
    SphereRule rule = build(j.at("dim").get<int>(), j.at("exactDegree").get<int>());
    if (j.contains("weights") && j.at("weights").size() != rule.nodeCount()) {
        throw ShapeError("SphereRule::fromJson: weight count mismatch");
    }
    return rule;
}

// ---------------------------------------------------------------------------
// Separable evaluation on the angular grid of one slice.
//
// A polynomial restricted to a slice is a trigonometric polynomial in the N
// angles; we fill its frequency tensor and transform one axis at a time.
// Frequencies alias exactly on the grid (e^{i f theta_l} depends only on
// f mod m), so the transform is valid for any polynomial degree.

namespace {

std::vector<Cplx> unitRoots(int m) {
    std::vector<Cplx> roots(m);
    for (int l = 0; l < m; ++l) {
        const double th = 2.0 * std::numbers::pi * l / m;
        roots[l] = Cplx(std::cos(th), std::sin(th));
    }
    return roots;
}

// In-place-style transform of one axis of a row-major tensor from frequency
// size fsize to m grid angles: out[.., l, ..] = sum_k in[.., k, ..] roots[(k - off) l mod m].
void transformAxis(std::vector<Cplx>& data, std::size_t outer, std::size_t fsize,
                   std::size_t inner, int off, const std::vector<Cplx>& roots) {
    const int m = int(roots.size());
    std::vector<Cplx> out(outer * m * inner, Cplx(0.0, 0.0));
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t k = 0; k < fsize; ++k) {
            int f = (int(k) - off) % m;
            if (f < 0) f += m;
            const Cplx* src = data.data() + (o * fsize + k) * inner;
            for (int l = 0; l < m; ++l) {
                const Cplx rot = roots[std::size_t(f) * l % m];
                Cplx* dst = out.data() + (o * std::size_t(m) + l) * inner;
                for (std::size_t i = 0; i < inner; ++i) dst[i] += rot * src[i];
            }
        }
    }
    data = std::move(out);
}

std::vector<Cplx> anglesFromFrequencies(std::vector<Cplx> freq, int dim, std::size_t fsize,
                                        int off, const std::vector<Cplx>& roots) {
    const std::size_t m = roots.size();
    for (int ax = dim - 1; ax >= 0; --ax) {
        // Axes before ax still hold frequencies; axes after hold angles.
        std::size_t outer = 1, inner = 1;
        for (int j = 0; j < ax; ++j) outer *= fsize;
        for (int j = ax + 1; j < dim; ++j) inner *= m;
        transformAxis(freq, outer, fsize, inner, off, roots);
    }
    return freq;
}

std::vector<double> powerTable(double base, int maxExp) {
    std::vector<double> table(std::size_t(maxExp) + 1);
    table[0] = 1.0;
    for (int k = 1; k <= maxExp; ++k) table[std::size_t(k)] = table[std::size_t(k) - 1] * base;
    return table;
}

std::vector<Cplx> evalOnSlice(const HoloPoly& f, double r, const SphereSlice& slice,
                              const std::vector<Cplx>& roots) {
    const int dim = f.dim();
    const int D = f.maxDegree();
    const std::size_t fsize = std::size_t(D) + 1;
    std::vector<Cplx> freq(ipow(fsize, dim), Cplx(0.0, 0.0));
    const auto rpow = powerTable(r, D);
    std::vector<std::vector<double>> spow(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) spow[std::size_t(j)] = powerTable(slice.modulus[std::size_t(j)], D);
    f.forEachTerm([&](const MultiIndex& alpha, Cplx c) {
        std::size_t flat = 0;
        double mag = rpow[std::size_t(degreeOf(alpha))];
        for (int j = 0; j < dim; ++j) {
            flat = flat * fsize + std::size_t(alpha[std::size_t(j)]);
            mag *= spow[std::size_t(j)][std::size_t(alpha[std::size_t(j)])];
        }
        freq[flat] += c * mag;
    });
    return anglesFromFrequencies(std::move(freq), dim, fsize, 0, roots);
}

std::vector<Cplx> evalOnSlice(const MixedPoly& f, double r, const SphereSlice& slice,
                              const std::vector<Cplx>& roots) {
    const int dim = f.dim();
    const int D = f.totalDegree();
    const int off = D;  // frequency a_j - b_j lies in [-D, D]
    const std::size_t fsize = 2 * std::size_t(D) + 1;
    std::vector<Cplx> freq(ipow(fsize, dim), Cplx(0.0, 0.0));
    const auto rpow = powerTable(r, D);
    std::vector<std::vector<double>> spow(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) spow[std::size_t(j)] = powerTable(slice.modulus[std::size_t(j)], D);
    for (const auto& [key, c] : f.terms()) {
        const auto& [alpha, beta] = key;
        std::size_t flat = 0;
        double mag = rpow[std::size_t(degreeOf(alpha) + degreeOf(beta))];
        for (int j = 0; j < dim; ++j) {
            const int a = alpha[std::size_t(j)];
            const int b = beta[std::size_t(j)];
            flat = flat * fsize + std::size_t(a - b + off);
            mag *= spow[std::size_t(j)][std::size_t(a + b)];
        }
        freq[flat] += c * mag;
    }
    return anglesFromFrequencies(std::move(freq), dim, fsize, off, roots);
}

// Accumulator for M_p over the node grid; finite p integrates |value|^p,
// p = infinity tracks the maximum.
struct MeanAccum {
    double p;
    double sum = 0.0;
    double maxVal = 0.0;
    void add(double absVal, double weight) {
        if (std::isinf(p)) {
            maxVal = std::max(maxVal, absVal);
        } else {
            sum += weight * std::pow(absVal, p);
        }
    }
    double finish() const {
        if (std::isinf(p)) return maxVal;
        return std::pow(sum, 1.0 / p);
    }
};

void checkMeanArgs(double r, double p) {
    if (!(r >= 0.0)) throw RangeError("sphereMean: radius must be nonnegative");
    if (!(p > 0.0)) throw RangeError("sphereMean: exponent p must be positive");
}

template <typename Poly>
double meanOfOne(const Poly& f, double r, double p, const SphereRule& rule) {
    checkMeanArgs(r, p);
    if (f.dim() != rule.dim()) throw ShapeError("sphereMean: dimension mismatch");
    const int m = rule.anglesPerDim();
    const auto roots = unitRoots(m);
    const double angleWeight = 1.0 / double(ipow(std::size_t(m), rule.dim()));
    MeanAccum acc{p};
    for (const auto& slice : rule.slices()) {
        const auto values = evalOnSlice(f, r, slice, roots);
        for (const Cplx& v : values) acc.add(std::abs(v), slice.weight * angleWeight);
    }
    return acc.finish();
}

template <typename Poly>
double meanCombined(std::span<const Poly> polys, std::span<const double> weights, Combine mode,
                    double r, double p, const SphereRule& rule) {
    checkMeanArgs(r, p);
    if (polys.size() != weights.size()) throw ShapeError("sphereMeanCombined: size mismatch");
    for (const auto& f : polys) {
        if (f.dim() != rule.dim()) throw ShapeError("sphereMeanCombined: dimension mismatch");
    }
    const int m = rule.anglesPerDim();
    const auto roots = unitRoots(m);
    const double angleWeight = 1.0 / double(ipow(std::size_t(m), rule.dim()));
    MeanAccum acc{p};
    std::vector<double> combined;
    for (const auto& slice : rule.slices()) {
        combined.assign(ipow(std::size_t(m), rule.dim()), 0.0);
        for (std::size_t i = 0; i < polys.size(); ++i) {
            const auto values = evalOnSlice(polys[i], r, slice, roots);
            for (std::size_t n = 0; n < combined.size(); ++n) {
                const double a = std::abs(values[n]);
                combined[n] += mode == Combine::AbsSum ? weights[i] * a : weights[i] * a * a;
            }
        }
        for (double v : combined) {
            acc.add(mode == Combine::AbsSum ? v : std::sqrt(v), slice.weight * angleWeight);
        }
    }
    return acc.finish();
}

}  // namespace

double sphereMean(const HoloPoly& f, double r, double p, const SphereRule& rule) {
    return meanOfOne(f, r, p, rule);
}

double sphereMean(const MixedPoly& f, double r, double p, const SphereRule& rule) {
    return meanOfOne(f, r, p, rule);
}

double sphereMeanCombined(std::span<const MixedPoly> polys, std::span<const double> weights,
                          Combine mode, double r, double p, const SphereRule& rule) {
    return meanCombined(polys, weights, mode, r, p, rule);
}

double sphereMeanCombined(std::span<const HoloPoly> polys, std::span<const double> weights,
                          Combine mode, double r, double p, const SphereRule& rule) {
    return meanCombined(polys, weights, mode, r, p, rule);
}

double sphereMeanFn(const SphereRule& rule, double r, double p,
                    const std::function<double(std::span<const Cplx>)>& fn) {
    checkMeanArgs(r, p);
    MeanAccum acc{p};
    std::vector<Cplx> scaled(std::size_t(rule.dim()));
    rule.forEachNode([&](std::span<const Cplx> z, double w) {
        for (std::size_t j = 0; j < scaled.size(); ++j) scaled[j] = r * z[j];
        acc.add(fn(scaled), w);
    });
    return acc.finish();
}

double gradientMean(const HoloPoly& f, int s, double r, double p, const SphereRule& rule) {
    const auto comps = gradientComponents(f, s);
    std::vector<HoloPoly> polys;
    std::vector<double> mults;
    polys.reserve(comps.size());
    for (const auto& [g, mult] : comps) {
        polys.push_back(g);
        mults.push_back(mult);
    }
    return meanCombined<HoloPoly>(polys, mults, Combine::SqrtSumSq, r, p, rule);
}

}  // namespace ballfun
