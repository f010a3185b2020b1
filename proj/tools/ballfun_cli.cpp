// ballfun: compute mixed-norm functionals on holomorphic polynomials,
// generate seeded test families, export block/modulus plot data, and run
// the verification suite.
//
// Option precedence: command-line flags > JSON config file (--config) >
// built-in defaults. All randomness flows from --seed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ballfun/approx.hpp"
#include "ballfun/errors.hpp"
#include "ballfun/harness.hpp"
#include "ballfun/lpblocks.hpp"
#include "ballfun/moduli.hpp"
#include "ballfun/multiplier.hpp"
#include "ballfun/quad/norms.hpp"
#include "ballfun/serialization.hpp"

namespace {

using namespace ballfun;
using harness::FamilyKind;
using harness::FamilySpec;

constexpr const char* kVersion = "ballfun 1.0.0 (C++20, Eigen backend)";

const char* kUsage = R"(usage: ballfun <command> [options]

commands:
  norm      compute the smoothness-space functional ||R^s f||_{p,q,s-alpha}
  modulus   tabulate moduli of smoothness on a delta grid (CSV)
  blocks    export the dyadic block spectrum ||W_nu f||_p (CSV)
  approx    best polynomial approximation error E_nu(f)_p
  verify    run the theorem-verification suite; writes report.json/report.csv
  generate  write a seeded test-function family as JSON files

common options:
  --config FILE   JSON file of defaults (flags override it)
  --seed S        master seed for all randomness (default 1)
  --jobs J        worker parallelism for verify (default: hardware cores)
  --output PATH   output file (norm/modulus/blocks/approx; default stdout)
  --output-dir D  output directory (verify/generate; default .)
  --version       print version and exit

norm:      --input f.json --p P --q Q --alpha A --s S
modulus:   --input f.json --kind minus|unitary|plus|all --n N --p P
           --grid log:LO:HI:COUNT --budget B
blocks:    --input f.json --p P
approx:    --input f.json --nu NU --p P --budget B
verify:    --suite NAME --checks id1,id2,... --degree D --dim N --count C
           --p P --q Q --alpha A --s S --s2 S2 --n N --k K --t T --budget B
generate:  --family randomDecay|lacunary|monomial|blockConcentrated
           --count C --degree D --dim N --decay X --block NU

exit codes: 0 success / all checks pass, 1 any check fails, 2 bad configuration.
)";

using Options = std::map<std::string, std::string>;

double parseDouble(const Options& opts, const std::string& key, double fallback) {
    const auto it = opts.find(key);
    if (it == opts.end()) return fallback;
    if (it->second == "inf") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw ConfigError("bad numeric value for --" + key);
    return v;
}

int parseInt(const Options& opts, const std::string& key, int fallback) {
    const auto it = opts.find(key);
    if (it == opts.end()) return fallback;
    std::size_t pos = 0;
    const int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw ConfigError("bad integer value for --" + key);
    return v;
}

std::string parseString(const Options& opts, const std::string& key, std::string fallback) {
    const auto it = opts.find(key);
    return it == opts.end() ? std::move(fallback) : it->second;
}

std::string requireString(const Options& opts, const std::string& key) {
    const auto it = opts.find(key);
    if (it == opts.end()) throw ConfigError("missing required option --" + key);
    return it->second;
}

// Merge order: config-file values first, then flags on top.
Options mergeConfig(const Options& flags) {
    Options merged;
    const auto cfg = flags.find("config");
    if (cfg != flags.end()) {
        std::ifstream in(cfg->second);
        if (!in) throw ConfigError("cannot open config file " + cfg->second);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config file parse error: ") + e.what());
        }
        if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
        for (const auto& [key, value] : j.items()) {
            if (value.is_string()) {
                merged[key] = value.get<std::string>();
            } else if (value.is_boolean()) {
                merged[key] = value.get<bool>() ? "true" : "false";
            } else {
                std::ostringstream os;
                os << value;
                merged[key] = os.str();
            }
        }
    }
    for (const auto& [key, value] : flags) merged[key] = value;
    return merged;
}

HoloPoly loadInput(const Options& opts) {
    const std::string path = requireString(opts, "input");
    try {
        return loadHoloPoly(path);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("cannot load " + path + ": " + e.what());
    }
}

std::ostream& openOutput(const Options& opts, std::ofstream& file) {
    const auto it = opts.find("output");
    if (it == opts.end()) return std::cout;
    file.open(it->second);
    if (!file) throw ConfigError("cannot open output file " + it->second);
    return file;
}

std::vector<double> parseGrid(const std::string& text) {
    // log:LO:HI:COUNT -> geometric grid; lin:LO:HI:COUNT -> arithmetic.
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4 || (parts[0] != "log" && parts[0] != "lin")) {
        throw ConfigError("bad --grid; expected log:LO:HI:COUNT or lin:LO:HI:COUNT");
    }
    const double lo = std::stod(parts[1]), hi = std::stod(parts[2]);
    const int count = std::stoi(parts[3]);
    if (!(lo > 0.0) || !(hi > lo) || count < 2) throw ConfigError("bad --grid bounds");
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) {
        const double u = double(i) / double(count - 1);
        grid.push_back(parts[0] == "log" ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u);
    }
    return grid;
}

FamilyKind parseFamilyKind(const std::string& name) {
    if (name == "randomDecay") return FamilyKind::randomDecay;
    if (name == "lacunary") return FamilyKind::lacunary;
    if (name == "monomial") return FamilyKind::monomial;
    if (name == "blockConcentrated") return FamilyKind::blockConcentrated;
    throw ConfigError("unknown family '" + name + "'");
}

// ---------------------------------------------------------------------------

int cmdNorm(const Options& opts) {
    const HoloPoly f = loadInput(opts);
    const double p = parseDouble(opts, "p", 2.0);
    const double q = parseDouble(opts, "q", 2.0);
    const double alpha = parseDouble(opts, "alpha", 0.5);
    const double s = parseDouble(opts, "s", 1.0);
    if (!(s > alpha)) throw ConfigError("norm: requires s > alpha");
    const auto sphere = SphereRule::build(f.dim(), 2 * f.maxDegree());
    const NormSpec spec{p, q, PowerWeight{s - alpha}};
    const RadialRule radial =
        buildRadialRule(f.dim(), std::isinf(q) ? 1.0 : q * (s - alpha), 48);
    const double value = mixedNorm(radialDerivative(f, s), spec, sphere, radial);
    std::ofstream file;
    auto& out = openOutput(opts, file);
    out << "norm p=" << p << " q=" << q << " alpha=" << alpha << " s=" << s << " value=" << value
        << "\n";
    return 0;
}

int cmdModulus(const Options& opts) {
    const HoloPoly f = loadInput(opts);
    const int n = parseInt(opts, "n", 2);
    const double p = parseDouble(opts, "p", 2.0);
    const int budget = parseInt(opts, "budget", 6);
    const std::uint64_t seed = std::uint64_t(parseInt(opts, "seed", 1));
    const std::string kind = parseString(opts, "kind", "all");
    const auto grid = parseGrid(parseString(opts, "grid", "log:1e-3:0.5:20"));
    const auto sphere = SphereRule::build(f.dim(), 2 * f.maxDegree());

    std::vector<ModulusKind> kinds;
    if (kind == "all") {
        kinds = {ModulusKind::minus, ModulusKind::unitary, ModulusKind::plus};
    } else if (kind == "minus") {
        kinds = {ModulusKind::minus};
    } else if (kind == "unitary") {
        kinds = {ModulusKind::unitary};
    } else if (kind == "plus") {
        kinds = {ModulusKind::plus};
    } else {
        throw ConfigError("modulus: --kind must be minus, unitary, plus, or all");
    }

    std::vector<ModulusTable> tables;
    for (auto k : kinds) tables.push_back(modulusDial(f, grid, n, p, k, budget, seed, sphere));

    std::ofstream file;
    auto& out = openOutput(opts, file);
    out << "delta";
    for (auto k : kinds) {
        out << (k == ModulusKind::minus ? ",omega_minus"
                                        : k == ModulusKind::unitary ? ",omega" : ",omega_plus");
    }
    out << "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << grid[i];
        for (const auto& t : tables) out << ',' << t.value[i];
        out << "\n";
    }
    std::cerr << "modulus: " << grid.size() << " rows, kinds=" << kinds.size() << ", order n=" << n
              << "\n";
    return 0;
}

int cmdBlocks(const Options& opts) {
    const HoloPoly f = loadInput(opts);
    const double p = parseDouble(opts, "p", 2.0);
    const auto sphere = SphereRule::build(f.dim(), 2 * f.maxDegree());
    const auto basis = BlockBasis::build(std::max(1, f.maxDegree()));
    const auto spectrum = blockSpectrum(f, p, basis, sphere);
    std::ofstream file;
    auto& out = openOutput(opts, file);
    out << "nu,block_norm\n";
    for (std::size_t nu = 0; nu < spectrum.size(); ++nu) {
        out << nu << ',' << spectrum[nu] << "\n";
    }
    std::cerr << "blocks: " << spectrum.size() << " blocks at p=" << p << "\n";
    return 0;
}

int cmdApprox(const Options& opts) {
    const HoloPoly f = loadInput(opts);
    const int nu = parseInt(opts, "nu", 4);
    const double p = parseDouble(opts, "p", 2.0);
    const int budget = parseInt(opts, "budget", 40);
    if (nu < 0) throw ConfigError("approx: --nu must be nonnegative");
    std::ofstream file;
    auto& out = openOutput(opts, file);
    if (p == 2.0) {
        out << "approx nu=" << nu << " p=2 error=" << bestApproxL2(f, nu).error << "\n";
    } else {
        const auto sphere = SphereRule::build(f.dim(), 2 * f.maxDegree());
        const auto br = bestApproxGeneral(f, nu, p, sphere, budget);
        out << "approx nu=" << nu << " p=" << p << " upper=" << br.upper
            << " lower=" << br.lower << " converged=" << (br.converged ? 1 : 0) << "\n";
    }
    return 0;
}

int cmdVerify(const Options& opts) {
    harness::SuiteConfig cfg;
    cfg.name = parseString(opts, "suite", "default");
    const std::string checks = parseString(opts, "checks", "");
    if (!checks.empty()) {
        std::stringstream ss(checks);
        std::string id;
        while (std::getline(ss, id, ',')) {
            if (!id.empty()) cfg.checkIds.push_back(id);
        }
    }
    cfg.family.kind = parseFamilyKind(parseString(opts, "family", "randomDecay"));
    cfg.family.dim = parseInt(opts, "dim", 1);
    cfg.family.maxDegree = parseInt(opts, "degree", 16);
    cfg.family.count = parseInt(opts, "count", 6);
    cfg.family.seed = std::uint64_t(parseInt(opts, "seed", 1));
    cfg.family.decay = parseDouble(opts, "decay", 0.75);
    cfg.params.p = parseDouble(opts, "p", 2.0);
    cfg.params.q = parseDouble(opts, "q", 2.0);
    cfg.params.alpha = parseDouble(opts, "alpha", 0.5);
    cfg.params.s = parseDouble(opts, "s", 1.0);
    cfg.params.s2 = parseDouble(opts, "s2", 2.0);
    cfg.params.n = parseInt(opts, "n", 2);
    cfg.params.k = parseInt(opts, "k", 2);
    cfg.params.t = parseDouble(opts, "t", 2.0);
    cfg.params.budget = parseInt(opts, "budget", 3);
    cfg.jobs = parseInt(opts, "jobs", int(std::max(1u, std::thread::hardware_concurrency())));

    const auto report = harness::runSuite(cfg);

    const std::filesystem::path dir = parseString(opts, "output-dir", ".");
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "report.json");
        if (!out) throw ConfigError("cannot write report.json in " + dir.string());
        out << report.toJson().dump(2) << "\n";
    }
    {
        std::ofstream out(dir / "report.csv");
        if (!out) throw ConfigError("cannot write report.csv in " + dir.string());
        out << report.toCsv();
    }
    for (const auto& c : report.checks) {
        std::printf("%-34s %s  ratio=[%.4g, %.4g] drift=%.1f%%%s%s\n", c.id.c_str(),
                    c.pass ? "pass" : "FAIL", c.baseStats.min, c.baseStats.max,
                    100.0 * c.degreeDrift, c.note.empty() ? "" : "  ", c.note.c_str());
    }
    std::printf("suite '%s': %zu checks, %s; report written to %s\n", report.name.c_str(),
                report.checks.size(), report.allPass() ? "all pass" : "FAILURES",
                dir.string().c_str());
    return report.allPass() ? 0 : 1;
}

int cmdGenerate(const Options& opts) {
    FamilySpec spec;
    spec.kind = parseFamilyKind(parseString(opts, "family", "randomDecay"));
    spec.dim = parseInt(opts, "dim", 1);
    spec.maxDegree = parseInt(opts, "degree", 16);
    spec.count = parseInt(opts, "count", 6);
    spec.seed = std::uint64_t(parseInt(opts, "seed", 1));
    spec.decay = parseDouble(opts, "decay", 0.75);
    spec.levels = parseInt(opts, "levels", -1);
    spec.block = parseInt(opts, "block", 3);

    const auto family = harness::makeFamily(spec);
    const std::filesystem::path dir = parseString(opts, "output-dir", ".");
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < family.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "f_%03zu.json", i);
        saveHoloPoly(family[i], (dir / name).string());
        std::printf("wrote %s (dim=%d, degree=%d, terms=%zu)\n", (dir / name).string().c_str(),
                    family[i].dim(), family[i].maxDegree(), family[i].termCount());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        std::cerr << kUsage;
        return 2;
    }
    if (args[0] == "--version" || args[0] == "version") {
        std::cout << kVersion << "\n";
        return 0;
    }
    if (args[0] == "--help" || args[0] == "help" || args[0] == "-h") {
        std::cout << kUsage;
        return 0;
    }

    const std::string command = args[0];
    Options flags;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--version") {
            std::cout << kVersion << "\n";
            return 0;
        }
        if (args[i].rfind("--", 0) != 0) {
            std::cerr << "unexpected argument '" << args[i] << "'\n" << kUsage;
            return 2;
        }
        const std::string key = args[i].substr(2);
        if (i + 1 >= args.size()) {
            std::cerr << "option --" << key << " needs a value\n" << kUsage;
            return 2;
        }
        flags[key] = args[++i];
    }

    try {
        const Options opts = mergeConfig(flags);
        if (command == "norm") return cmdNorm(opts);
        if (command == "modulus") return cmdModulus(opts);
        if (command == "blocks") return cmdBlocks(opts);
        if (command == "approx") return cmdApprox(opts);
        if (command == "verify") return cmdVerify(opts);
        if (command == "generate") return cmdGenerate(opts);
        std::cerr << "unknown command '" << command << "'\n" << kUsage;
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const ballfun::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
