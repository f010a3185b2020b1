#include "ballfun/mixed_poly.hpp"

#include <algorithm>
#include <cmath>

namespace ballfun {

MixedPoly::MixedPoly(int dim) : dim_(dim) {
    if (dim < 1) throw ShapeError("MixedPoly: dimension must be positive");
}

MixedPoly MixedPoly::fromHolo(const HoloPoly& f) {
    MixedPoly out(f.dim());
    const MultiIndex zero(f.dim(), 0);
    f.forEachTerm([&](const MultiIndex& alpha, Cplx c) { out.add(alpha, zero, c); });
    return out;
}

void MixedPoly::add(const MultiIndex& alpha, const MultiIndex& beta, Cplx c) {
    if (static_cast<int>(alpha.size()) != dim_ || static_cast<int>(beta.size()) != dim_)
        throw ShapeError("MixedPoly::add: multi-index length mismatch");
    terms_[{alpha, beta}] += c;
}

Cplx MixedPoly::coeff(const MultiIndex& alpha, const MultiIndex& beta) const {
    auto it = terms_.find({alpha, beta});
    return it == terms_.end() ? Cplx(0.0) : it->second;
}

Cplx MixedPoly::eval(std::span<const Cplx> z) const {
    if (static_cast<int>(z.size()) != dim_) throw ShapeError("MixedPoly::eval: point dimension mismatch");
    Cplx sum = 0.0;
    for (const auto& [key, c] : terms_) {
        Cplx m = c;
        for (int j = 0; j < dim_; ++j) {
            for (int t = 0; t < key.first[j]; ++t) m *= z[j];
            for (int t = 0; t < key.second[j]; ++t) m *= std::conj(z[j]);
        }
        sum += m;
    }
    return sum;
}

MixedPoly& MixedPoly::operator+=(const MixedPoly& g) {
    if (g.dim_ != dim_) throw ShapeError("MixedPoly+=: dimension mismatch");
    for (const auto& [key, c] : g.terms_) terms_[key] += c;
    return *this;
}

MixedPoly& MixedPoly::operator-=(const MixedPoly& g) {
    if (g.dim_ != dim_) throw ShapeError("MixedPoly-=: dimension mismatch");
    for (const auto& [key, c] : g.terms_) terms_[key] -= c;
    return *this;
}

MixedPoly& MixedPoly::operator*=(Cplx c) {
    for (auto& [key, v] : terms_) v *= c;
    return *this;
}

bool MixedPoly::isZero(double tol) const {
    return maxAbsCoeff() <= tol;
}

double MixedPoly::maxAbsCoeff() const {
    double m = 0.0;
    for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

void MixedPoly::prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= tol)
            it = terms_.erase(it);
        else
            ++it;
    }
}

int MixedPoly::totalDegree() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, degreeOf(key.first) + degreeOf(key.second));
    return d;
}

bool MixedPoly::isHolomorphic(double tol) const {
    for (const auto& [key, c] : terms_)
        if (degreeOf(key.second) > 0 && std::abs(c) > tol) return false;
    return true;
}

HoloPoly MixedPoly::toHolo(double tol) const {
    if (!isHolomorphic(tol)) throw ShapeError("MixedPoly::toHolo: antiholomorphic terms present");
    int maxDeg = 0;
    for (const auto& [key, c] : terms_)
        if (degreeOf(key.second) == 0) maxDeg = std::max(maxDeg, degreeOf(key.first));
    HoloPoly out(dim_, maxDeg);
    for (const auto& [key, c] : terms_)
        if (degreeOf(key.second) == 0) out.add(key.first, c);
    return out;
}

MixedPoly operator+(MixedPoly f, const MixedPoly& g) {
    f += g;
    return f;
}

MixedPoly operator-(MixedPoly f, const MixedPoly& g) {
    f -= g;
    return f;
}

}  // namespace ballfun
