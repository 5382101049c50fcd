#include "cantor_moran/system_io.hpp"

#include "cantor_moran/constructions.hpp"

namespace moran {

namespace {

Integer integer_of(const nlohmann::json& v, const std::string& what) {
  try {
    if (v.is_number_integer()) return parse_integer(v.dump());
    if (v.is_string()) return parse_integer(v.get<std::string>());
  } catch (const std::exception& e) {
    throw SchemaError(what + ": " + e.what());
  }
  throw SchemaError(what + ": expected an integer");
}

Rational rational_of(const nlohmann::json& v, const std::string& what) {
  try {
    if (v.is_number()) return parse_rational(v.dump());
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    throw SchemaError(what + ": " + e.what());
  }
  throw SchemaError(what + ": expected a rational");
}

std::int64_t small_of(const nlohmann::json& v, const std::string& what) {
  const Integer x = integer_of(v, what);
  if (!x.fits_slong_p()) throw SchemaError(what + ": out of range");
  return x.get_si();
}

std::vector<Integer> integers_of(const nlohmann::json& v, const std::string& what) {
  if (!v.is_array()) throw SchemaError(what + ": expected an array");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer_of(v[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& what) {
  if (!obj.is_object() || !obj.contains(key)) throw SchemaError(what + ": missing \"" + key + "\"");
  return obj.at(key);
}

std::vector<LevelDigits> explicit_levels(const nlohmann::json& v) {
  if (!v.is_array() || v.empty()) throw SchemaError("explicit: expected a nonempty array of levels");
  std::vector<LevelDigits> levels;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string where = "level " + std::to_string(i + 1);
    const auto& l = v[i];
    if (l.is_array()) {
      if (l.size() != 3) throw SchemaError(where + ": expected [N, b, [B...]]");
      levels.push_back({integer_of(l[0], where + " N"), small_of(l[1], where + " b"),
                        integers_of(l[2], where + " B")});
    } else {
      levels.push_back({integer_of(field(l, "N", where), where + " N"), small_of(field(l, "b", where), where + " b"),
                        integers_of(field(l, "B", where), where + " B")});
    }
  }
  return levels;
}

template <class F>
MoranSystem checked(F&& build) {
  try {
    return build();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  } catch (const std::domain_error& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace

MoranSystem parse_system(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("system description must be a JSON object");
  if (doc.contains("dimension") && doc.at("dimension") != 1)
    throw SchemaError("only dimension 1 is supported");
  if (doc.contains("explicit"))
    return checked([&] { return explicit_system(explicit_levels(doc.at("explicit"))); });
  if (!doc.contains("rule") || !doc.at("rule").is_string())
    throw SchemaError("expected \"rule\" or \"explicit\"");
  const std::string rule = doc.at("rule").get<std::string>();
  const nlohmann::json params = doc.value("params", nlohmann::json::object());
  if (!params.is_object()) throw SchemaError("params must be an object");

  return checked([&]() -> MoranSystem {
    if (rule == "example16") return build_example16_system();
    if (rule == "theorem17")
      return build_theorem17_system(rational_of(field(params, "alpha", rule), "alpha"),
                                    rational_of(field(params, "beta", rule), "beta"));
    if (rule == "consecutive")
      return build_consecutive_system(params.contains("b0") ? small_of(params.at("b0"), "b0") : 2,
                                      params.contains("slope") ? small_of(params.at("slope"), "slope") : 1,
                                      params.contains("n_factor") ? small_of(params.at("n_factor"), "n_factor") : 2);
    if (rule == "homogeneous") {
      std::optional<std::vector<Integer>> L;
      if (params.contains("L")) L = integers_of(params.at("L"), "L");
      return build_homogeneous_system(integer_of(field(params, "N", rule), "N"),
                                      integers_of(field(params, "B", rule), "B"), std::move(L));
    }
    if (rule == "factorial_shift") {
      const auto& bs = field(params, "b", rule);
      if (!bs.is_array()) throw SchemaError("b: expected an array");
      std::vector<std::int64_t> b;
      for (const auto& x : bs) b.push_back(small_of(x, "b"));
      return build_factorial_shift_system(std::move(b), integers_of(field(params, "N", rule), "N"));
    }
    if (rule == "explicit") return explicit_system(explicit_levels(field(params, "levels", rule)));
    throw SchemaError("unknown rule \"" + rule + "\"");
  });
}

nlohmann::json emit_system(const MoranSystem& system, std::size_t prefix) {
  nlohmann::json doc = {{"rule", system.name()}, {"params", system.params()}, {"dimension", 1}};
  if (prefix > 0) {
    nlohmann::json levels = nlohmann::json::array();
    for (std::size_t k = 1; k <= prefix; ++k) {
      const auto l = system.level(k);
      nlohmann::json digits = nlohmann::json::array();
      for (const auto& d : l.B) digits.push_back(to_string(d));
      levels.push_back({{"N", to_string(l.N)}, {"b", l.b}, {"B", digits}});
    }
    doc["prefix"] = levels;
  }
  return doc;
}

std::optional<MoranSystem> named_system(const std::string& name, const Rational& alpha,
                                        const Rational& beta) {
  if (name == "example16") return build_example16_system();
  if (name == "theorem17") return build_theorem17_system(alpha, beta);
  if (name == "consecutive") return build_consecutive_system();
  if (name == "jorgensen-pedersen")
    return build_homogeneous_system(4, {Integer(0), Integer(2)}, std::vector<Integer>{0, 1});
  return std::nullopt;
}

nlohmann::json to_json(const SeriesValue& v) {
  auto one = [&](std::size_t i) -> nlohmann::json {
    if (v.exact) {
      // long fractions are replaced by their enclosure
      std::string text = to_string((*v.exact)[i]);
      if (text.size() <= 64) return text;
    }
    return {{"lo", v.enclosure[i].lo}, {"hi", v.enclosure[i].hi}};
  };
  if (v.dimension() == 1) return one(0);
  nlohmann::json a = nlohmann::json::array();
  for (std::size_t i = 0; i < v.dimension(); ++i) a.push_back(one(i));
  return a;
}

nlohmann::json to_json(const SeriesReport& r) {
  nlohmann::json terms = nlohmann::json::array(), sums = nlohmann::json::array();
  for (const auto& t : r.terms) terms.push_back(to_json(t));
  for (const auto& s : r.partial_sums) sums.push_back(to_json(s));
  nlohmann::json j = {{"name", r.name},
                      {"terms", terms},
                      {"partial_sums", sums},
                      {"verdict", to_string(r.verdict)},
                      {"tail_argument", r.tail_argument}};
  if (r.witness) j["witness"] = *r.witness;
  if (r.total) j["total"] = {{"lo", r.total->lo}, {"hi", r.total->hi}};
  if (!r.cauchy_tail.empty()) j["cauchy_tail"] = r.cauchy_tail;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

}  // namespace moran
