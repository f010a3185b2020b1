#pragma once

#include <string>

#include <json.hpp>

#include "ballfun/holo_poly.hpp"

namespace ballfun {

// {dim, maxDegree, terms: [{alpha: [..], re, im}]} with graded lexicographic
// term order for reproducible files.
nlohmann::json toJson(const HoloPoly& f);
HoloPoly holoPolyFromJson(const nlohmann::json& j);

void saveHoloPoly(const HoloPoly& f, const std::string& path);
HoloPoly loadHoloPoly(const std::string& path);

}  // namespace ballfun
