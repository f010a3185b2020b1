#pragma once

#include <functional>
#include <map>
#include <span>
#include <utility>

#include "ballfun/holo_poly.hpp"

namespace ballfun {

// Polynomial in the coordinates z_j and their conjugates. Needed for
// tangential-derivative compositions, which leave the holomorphic class.
// Keys are pairs (alpha, beta): holomorphic and antiholomorphic exponents.
class MixedPoly {
public:
    using Key = std::pair<MultiIndex, MultiIndex>;
    using Terms = std::map<Key, Cplx>;

    explicit MixedPoly(int dim);
    static MixedPoly fromHolo(const HoloPoly& f);

    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }

    void add(const MultiIndex& alpha, const MultiIndex& beta, Cplx c);
    Cplx coeff(const MultiIndex& alpha, const MultiIndex& beta) const;

    Cplx eval(std::span<const Cplx> z) const;

    MixedPoly& operator+=(const MixedPoly& g);
    MixedPoly& operator-=(const MixedPoly& g);
    MixedPoly& operator*=(Cplx c);

    bool isZero(double tol = 0.0) const;
    double maxAbsCoeff() const;
    void prune(double tol = 0.0);

    // Largest |alpha| + |beta| over stored terms (0 for the zero polynomial).
    int totalDegree() const;

    // True when every antiholomorphic exponent vanishes.
    bool isHolomorphic(double tol = 0.0) const;
    // Extracts the beta = 0 terms as a HoloPoly; throws if terms with
    // |coefficient| > tol carry a nonzero beta.
    HoloPoly toHolo(double tol = 0.0) const;

private:
    int dim_;
    Terms terms_;
};

MixedPoly operator+(MixedPoly f, const MixedPoly& g);
MixedPoly operator-(MixedPoly f, const MixedPoly& g);

}  // namespace ballfun
