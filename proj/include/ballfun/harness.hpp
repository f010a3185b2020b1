#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ballfun/holo_poly.hpp"

namespace ballfun::harness {

// ---------------------------------------------------------------------------
// Test-function families
// ---------------------------------------------------------------------------

enum class FamilyKind { randomDecay, lacunary, monomial, blockConcentrated, userFile };

// Seeded generator description. Coefficients are drawn per multi-index from
// a hash of (seed, function index, index), so raising maxDegree extends each
// function without disturbing its lower-degree coefficients.
struct FamilySpec {
    FamilyKind kind = FamilyKind::randomDecay;
    int dim = 1;
    int maxDegree = 16;
    int count = 6;
    std::uint64_t seed = 1;
    double decay = 0.75;    // randomDecay: coefficient scale decay^degree
    int levels = -1;        // lacunary: top level; -1 means floor(log2 maxDegree)
    MultiIndex exponent;    // monomial: the single exponent vector
    int block = 3;          // blockConcentrated: dyadic band index
    std::string path;       // userFile: JSON file with one function or a list
};

std::vector<HoloPoly> makeFamily(const FamilySpec& spec);

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

struct CheckParams {
    double p = 2.0;
    double q = 2.0;
    double alpha = 0.5;   // smoothness index; hypotheses validated per check
    double s = 1.0;       // fractional radial order (must exceed alpha)
    double s2 = 2.0;      // second radial order for the order-independence check
    int n = 2;            // difference / derivative order (must exceed alpha)
    int k = 2;            // tangential-gradient order (must exceed 2 alpha)
    double t = 2.0;       // growth order of the custom multiplier example
    double phiAlpha = 0.5;  // phi(x) = x^phiAlpha for the phi-space inclusions
    int budget = 3;       // modulus sample budget per function
    int radialNodes = 32;
    int gridSize = 10;    // log-grid size for the t- and delta-integrals
    double gridLo = 2e-3;
};

enum class CheckKind {
    equivalence,  // two functionals, ratio window stable under degree doubling
    inequality,   // lhs <= C rhs, empirical C finite and stable
    exact,        // lhs <= bound * rhs outright, no fitted constant
};

struct CheckInfo {
    std::string id;
    std::string anchor;  // formula sketch of the verified statement
    CheckKind kind;
    double bound;     // exact checks: hard ratio ceiling (with tiny slack)
    bool sampled;     // uses the seeded modulus/transform sampler
    int minDim;       // family dimension is raised to at least this
};

const std::vector<CheckInfo>& registeredChecks();

struct FunctionRecord {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool degenerate = false;  // both sides below the 1e-12 guard
};

struct RatioStats {
    double min = 0.0;
    double max = 0.0;
    double median = 0.0;
    int counted = 0;
};

RatioStats ratioStats(const std::vector<FunctionRecord>& records);

struct CheckResult {
    std::string id;
    std::string anchor;
    CheckKind kind = CheckKind::equivalence;
    std::map<std::string, double> params;
    std::vector<FunctionRecord> base;     // family at maxDegree
    std::vector<FunctionRecord> doubled;  // family at 2 * maxDegree
    std::vector<FunctionRecord> budgeted; // sampled checks: doubled budget
    RatioStats baseStats, doubledStats, budgetedStats;
    double degreeDrift = 0.0;  // relative change of the ratio window extremes
    double budgetDrift = 0.0;  // sampled checks only
    int degenerateCount = 0;
    bool hardFail = false;     // rhs vanished against a nonzero lhs
    bool pass = false;
    std::string note;
};

// Runs one registered check over the family (degree doubling and, for
// sampled checks, budget doubling are handled internally). Unknown ids and
// hypothesis violations throw ConfigError before any computation.
CheckResult runCheck(const std::string& id, const FamilySpec& family, const CheckParams& params);

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

struct SuiteConfig {
    std::string name = "default";
    std::vector<std::string> checkIds;  // empty: every registered check
    FamilySpec family;
    CheckParams params;
    int jobs = 1;
};

struct SuiteReport {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool allPass() const;
    nlohmann::json toJson() const;  // deterministic: no timestamps, fixed order
    std::string toCsv() const;      // per-function rows for plotting
};

SuiteReport runSuite(const SuiteConfig& config);

}  // namespace ballfun::harness
