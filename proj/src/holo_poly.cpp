#include "ballfun/holo_poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace ballfun {

HoloPoly::HoloPoly(int dim, int maxDegree) : dim_(dim), maxDegree_(maxDegree) {
    if (dim < 1) throw ShapeError("HoloPoly: dimension must be positive");
    if (maxDegree < 0) throw DegreeRangeError("HoloPoly: maxDegree must be nonnegative");
    parts_.resize(maxDegree + 1);
}

const HoloPoly::Part& HoloPoly::part(int k) const {
    if (k < 0 || k > maxDegree_) throw DegreeRangeError("HoloPoly::part: degree out of range");
    return parts_[k];
}

void HoloPoly::set(const MultiIndex& alpha, Cplx c) {
    if (static_cast<int>(alpha.size()) != dim_) throw ShapeError("HoloPoly::set: multi-index length mismatch");
    const int k = degreeOf(alpha);
    if (k > maxDegree_) throw DegreeRangeError("HoloPoly::set: degree exceeds maxDegree");
    if (c == Cplx(0.0)) {
        parts_[k].erase(alpha);
    } else {
        parts_[k][alpha] = c;
    }
}

void HoloPoly::add(const MultiIndex& alpha, Cplx c) {
    if (static_cast<int>(alpha.size()) != dim_) throw ShapeError("HoloPoly::add: multi-index length mismatch");
    const int k = degreeOf(alpha);
    if (k > maxDegree_) throw DegreeRangeError("HoloPoly::add: degree exceeds maxDegree");
    parts_[k][alpha] += c;
}

Cplx HoloPoly::coeff(const MultiIndex& alpha) const {
    const int k = degreeOf(alpha);
    if (k < 0 || k > maxDegree_) return 0.0;
    auto it = parts_[k].find(alpha);
    return it == parts_[k].end() ? Cplx(0.0) : it->second;
}

Cplx HoloPoly::eval(std::span<const Cplx> z) const {
    if (static_cast<int>(z.size()) != dim_) throw ShapeError("HoloPoly::eval: point dimension mismatch");
    // Per-coordinate power tables.
    std::vector<std::vector<Cplx>> pw(dim_);
    for (int j = 0; j < dim_; ++j) {
        pw[j].resize(maxDegree_ + 1);
        pw[j][0] = 1.0;
        for (int t = 1; t <= maxDegree_; ++t) pw[j][t] = pw[j][t - 1] * z[j];
    }
    Cplx sum = 0.0;
    for (const auto& part : parts_) {
        for (const auto& [alpha, c] : part) {
            Cplx m = c;
            for (int j = 0; j < dim_; ++j) m *= pw[j][alpha[j]];
            sum += m;
        }
    }
    return sum;
}

HoloPoly HoloPoly::homogeneousPart(int k) const {
    if (k < 0 || k > maxDegree_) throw DegreeRangeError("homogeneousPart: degree out of range");
    HoloPoly out(dim_, maxDegree_);
    out.parts_[k] = parts_[k];
    return out;
}

HoloPoly HoloPoly::truncated(int newMaxDegree) const {
    if (newMaxDegree < 0) throw DegreeRangeError("truncated: negative degree");
    HoloPoly out(dim_, newMaxDegree);
    for (int k = 0; k <= std::min(newMaxDegree, maxDegree_); ++k) out.parts_[k] = parts_[k];
    return out;
}

HoloPoly HoloPoly::extended(int newMaxDegree) const {
    if (newMaxDegree < maxDegree_) throw DegreeRangeError("extended: smaller than current maxDegree");
    HoloPoly out(dim_, newMaxDegree);
    for (int k = 0; k <= maxDegree_; ++k) out.parts_[k] = parts_[k];
    return out;
}

HoloPoly& HoloPoly::operator+=(const HoloPoly& g) {
    if (g.dim_ != dim_) throw ShapeError("HoloPoly+=: dimension mismatch");
    if (g.maxDegree_ > maxDegree_) {
        maxDegree_ = g.maxDegree_;
        parts_.resize(maxDegree_ + 1);
    }
    for (int k = 0; k <= g.maxDegree_; ++k)
        for (const auto& [alpha, c] : g.parts_[k]) parts_[k][alpha] += c;
    return *this;
}

HoloPoly& HoloPoly::operator-=(const HoloPoly& g) {
    if (g.dim_ != dim_) throw ShapeError("HoloPoly-=: dimension mismatch");
    if (g.maxDegree_ > maxDegree_) {
        maxDegree_ = g.maxDegree_;
        parts_.resize(maxDegree_ + 1);
    }
    for (int k = 0; k <= g.maxDegree_; ++k)
        for (const auto& [alpha, c] : g.parts_[k]) parts_[k][alpha] -= c;
    return *this;
}

HoloPoly& HoloPoly::operator*=(Cplx c) {
    for (auto& part : parts_)
        for (auto& [alpha, v] : part) v *= c;
    return *this;
}

bool HoloPoly::isZero(double tol) const {
    return maxAbsCoeff() <= tol;
}

double HoloPoly::maxAbsCoeff() const {
    double m = 0.0;
    for (const auto& part : parts_)
        for (const auto& [alpha, c] : part) m = std::max(m, std::abs(c));
    return m;
}

std::size_t HoloPoly::termCount() const {
    std::size_t n = 0;
    for (const auto& part : parts_) n += part.size();
    return n;
}

void HoloPoly::prune(double tol) {
    for (auto& part : parts_) {
        for (auto it = part.begin(); it != part.end();) {
            if (std::abs(it->second) <= tol)
                it = part.erase(it);
            else
                ++it;
        }
    }
}

void HoloPoly::forEachTerm(const std::function<void(const MultiIndex&, Cplx)>& fn) const {
    for (const auto& part : parts_)
        for (const auto& [alpha, c] : part) fn(alpha, c);
}

HoloPoly operator+(HoloPoly f, const HoloPoly& g) {
    f += g;
    return f;
}

HoloPoly operator-(HoloPoly f, const HoloPoly& g) {
    f -= g;
    return f;
}

HoloPoly operator*(Cplx c, HoloPoly f) {
    f *= c;
    return f;
}

HoloPoly multiply(const HoloPoly& f, const HoloPoly& g, int cap) {
    if (f.dim() != g.dim()) throw ShapeError("multiply: dimension mismatch");
    if (cap < 0) cap = f.maxDegree() + g.maxDegree();
    HoloPoly out(f.dim(), cap);
    MultiIndex sum(f.dim());
    f.forEachTerm([&](const MultiIndex& a, Cplx ca) {
        const int da = degreeOf(a);
        g.forEachTerm([&](const MultiIndex& b, Cplx cb) {
            if (da + degreeOf(b) > cap) return;
            for (int j = 0; j < static_cast<int>(sum.size()); ++j) sum[j] = a[j] + b[j];
            out.add(sum, ca * cb);
        });
    });
    return out;
}

double maxCoeffDistance(const HoloPoly& f, const HoloPoly& g) {
    HoloPoly d = f - g;
    return d.maxAbsCoeff();
}

HoloPoly monomial(int dim, const MultiIndex& alpha, Cplx c, int maxDegree) {
    const int k = degreeOf(alpha);
    HoloPoly out(dim, maxDegree < 0 ? k : maxDegree);
    out.set(alpha, c);
    return out;
}

}  // namespace ballfun
