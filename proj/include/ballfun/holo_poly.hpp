#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "ballfun/errors.hpp"
#include "ballfun/multi_index.hpp"

namespace ballfun {

// Truncated homogeneous expansion of a holomorphic function on the unit
// ball of C^N. Coefficients are stored sparsely, grouped by total degree,
// so extracting a homogeneous part is proportional to the size of the part.
class HoloPoly {
public:
    using Part = std::map<MultiIndex, Cplx>;

    HoloPoly(int dim, int maxDegree);

    int dim() const { return dim_; }
    int maxDegree() const { return maxDegree_; }

    const Part& part(int k) const;

    void set(const MultiIndex& alpha, Cplx c);
    void add(const MultiIndex& alpha, Cplx c);
    Cplx coeff(const MultiIndex& alpha) const;

    Cplx eval(std::span<const Cplx> z) const;

    HoloPoly homogeneousPart(int k) const;
    HoloPoly truncated(int newMaxDegree) const;
    // Same coefficients, maxDegree raised to newMaxDegree (>= current).
    HoloPoly extended(int newMaxDegree) const;

    HoloPoly& operator+=(const HoloPoly& g);
    HoloPoly& operator-=(const HoloPoly& g);
    HoloPoly& operator*=(Cplx c);

    bool isZero(double tol = 0.0) const;
    double maxAbsCoeff() const;
    std::size_t termCount() const;
    void prune(double tol = 0.0);

    void forEachTerm(const std::function<void(const MultiIndex&, Cplx)>& fn) const;

private:
    int dim_;
    int maxDegree_;
    std::vector<Part> parts_;  // parts_[k]: terms of total degree k
};

HoloPoly operator+(HoloPoly f, const HoloPoly& g);
HoloPoly operator-(HoloPoly f, const HoloPoly& g);
HoloPoly operator*(Cplx c, HoloPoly f);

// Product of two polynomials; maxDegree of the result is clamped to cap
// (default: sum of the degrees).
HoloPoly multiply(const HoloPoly& f, const HoloPoly& g, int cap = -1);

double maxCoeffDistance(const HoloPoly& f, const HoloPoly& g);

HoloPoly monomial(int dim, const MultiIndex& alpha, Cplx c = 1.0, int maxDegree = -1);

}  // namespace ballfun
