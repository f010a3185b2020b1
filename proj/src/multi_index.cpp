#include "ballfun/multi_index.hpp"

#include <cmath>
#include <numeric>

namespace ballfun {

int degreeOf(const MultiIndex& a) {
    return std::accumulate(a.begin(), a.end(), 0);
}

bool gradedLexLess(const MultiIndex& a, const MultiIndex& b) {
    const int da = degreeOf(a), db = degreeOf(b);
    if (da != db) return da < db;
    return a < b;
}

static void enumerate(int dim, int k, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (dim == 1) {
        cur.push_back(k);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int j = k; j >= 0; --j) {
        cur.push_back(j);
        enumerate(dim - 1, k - j, cur, out);
        cur.pop_back();
    }
}

std::vector<MultiIndex> monomialsOfDegree(int dim, int k) {
    std::vector<MultiIndex> out;
    MultiIndex cur;
    cur.reserve(dim);
    enumerate(dim, k, cur, out);
    return out;
}

std::vector<MultiIndex> monomialsUpTo(int dim, int maxDegree) {
    std::vector<MultiIndex> out;
    for (int k = 0; k <= maxDegree; ++k) {
        auto part = monomialsOfDegree(dim, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

double multinomial(const MultiIndex& a) {
    double logv = std::lgamma(degreeOf(a) + 1.0);
    for (int ai : a) logv -= std::lgamma(ai + 1.0);
    return std::round(std::exp(logv));
}

double monomialSphereMoment(int dim, const MultiIndex& alpha) {
    double logv = std::lgamma(static_cast<double>(dim)) - std::lgamma(dim + static_cast<double>(degreeOf(alpha)));
    for (int ai : alpha) logv += std::lgamma(ai + 1.0);
    return std::exp(logv);
}

}  // namespace ballfun
