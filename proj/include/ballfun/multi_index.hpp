#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace ballfun {

using Cplx = std::complex<double>;

// Exponent vector of a monomial z^alpha.
using MultiIndex = std::vector<int>;

int degreeOf(const MultiIndex& a);

// Graded lexicographic order: first by total degree, then lexicographic.
bool gradedLexLess(const MultiIndex& a, const MultiIndex& b);

// All multi-indices of the given dimension and total degree, in lex order.
std::vector<MultiIndex> monomialsOfDegree(int dim, int k);

// All multi-indices with total degree <= maxDegree, graded lex order.
std::vector<MultiIndex> monomialsUpTo(int dim, int maxDegree);

// n! / (a_1! a_2! ... a_m!) where n = |a|.
double multinomial(const MultiIndex& a);

// Second moment of the monomial zeta^alpha over the unit sphere of C^N:
// integral of |zeta^alpha|^2 dsigma = (N-1)! alpha! / (N-1+|alpha|)!.
double monomialSphereMoment(int dim, const MultiIndex& alpha);

}  // namespace ballfun
