#include "ballfun/serialization.hpp"

#include <fstream>

namespace ballfun {

using nlohmann::json;

json toJson(const HoloPoly& f) {
    json terms = json::array();
    // parts are stored by total degree and each part map is lexicographic,
    // so plain iteration yields graded lex order.
    f.forEachTerm([&](const MultiIndex& alpha, Cplx c) {
        terms.push_back({{"alpha", alpha}, {"re", c.real()}, {"im", c.imag()}});
    });
    return json{{"dim", f.dim()}, {"maxDegree", f.maxDegree()}, {"terms", terms}};
}

HoloPoly holoPolyFromJson(const json& j) {
    HoloPoly f(j.at("dim").get<int>(), j.at("maxDegree").get<int>());
    for (const auto& term : j.at("terms")) {
        MultiIndex alpha = term.at("alpha").get<MultiIndex>();
        f.set(alpha, Cplx(term.at("re").get<double>(), term.at("im").get<double>()));
    }
    return f;
}

void saveHoloPoly(const HoloPoly& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("saveHoloPoly: cannot open " + path);
    out << toJson(f).dump(2) << "\n";
}

HoloPoly loadHoloPoly(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("loadHoloPoly: cannot open " + path);
    json j;
    in >> j;
    return holoPolyFromJson(j);
}

}  // namespace ballfun
