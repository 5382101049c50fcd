#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "cantor_moran/moran_system.hpp"
#include "cantor_moran/series.hpp"

namespace moran {

/// Malformed or invalid system description.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Accepts {"rule": name, "params": {...}} for example16, theorem17,
/// consecutive, homogeneous, factorial_shift and explicit, or
/// {"explicit": [[N, b, [B...]], ...]} (levels may also be {"N", "b", "B"} objects).
/// Integers may be JSON numbers or decimal strings; rationals also "p/q" or decimals.
MoranSystem parse_system(const nlohmann::json& doc);

/// {"rule", "params", "dimension"} plus, if requested, the first `prefix` levels.
nlohmann::json emit_system(const MoranSystem& system, std::size_t prefix = 0);

/// Built-in names: example16, theorem17 (alpha, beta), consecutive,
/// jorgensen-pedersen. nullopt for unknown names.
std::optional<MoranSystem> named_system(const std::string& name, const Rational& alpha,
                                        const Rational& beta);

/// Exact values as "p/q" strings up to 64 characters, otherwise {"lo", "hi"}.
nlohmann::json to_json(const SeriesValue& v);
nlohmann::json to_json(const SeriesReport& r);

}  // namespace moran
