#include "cantor_moran/moran_system.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace moran {

double LevelRule::log_N(std::size_t k) const {
  const Integer n = N(k);
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

MoranSystem::MoranSystem(std::shared_ptr<const LevelRule> rule) : rule_(std::move(rule)) {
  if (!rule_) throw std::invalid_argument("MoranSystem needs a rule");
}

void MoranSystem::require_level(std::size_t k) const {
  if (k == 0) throw std::out_of_range("levels are numbered from 1");
  if (auto count = level_count(); count && k > *count)
    throw std::out_of_range(name() + ": level " + std::to_string(k) + " not available (have " +
                            std::to_string(*count) + ")");
}

std::int64_t MoranSystem::b(std::size_t k) const {
  require_level(k);
  return rule_->b(k);
}

Integer MoranSystem::N(std::size_t k) const {
  require_level(k);
  return rule_->N(k);
}

double MoranSystem::log_N(std::size_t k) const {
  require_level(k);
  return rule_->log_N(k);
}

Integer MoranSystem::prefix_product(std::size_t k) const {
  Integer p = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    p *= N(i);
    if (decimal_digits(p) > rule_->digit_budget())
      throw std::length_error(name() + ": N_1...N_" + std::to_string(i) + " exceeds the budget of " +
                              std::to_string(rule_->digit_budget()) + " decimal digits");
  }
  return p;
}

std::vector<Integer> MoranSystem::digits(std::size_t k) const {
  require_level(k);
  return rule_->digits(k, prefix_product(k));
}

LevelDigits MoranSystem::level(std::size_t k) const { return {N(k), b(k), digits(k)}; }

std::int64_t MoranSystem::shifted_count(std::size_t k) const { return count_shifted(b(k), digits(k)); }

std::vector<Rational> MoranSystem::scaled_digits(std::size_t k) const {
  require_level(k);
  const Integer prefix = prefix_product(k);
  std::vector<Rational> out;
  for (const auto& d : rule_->digits(k, prefix)) {
    Rational a(d, prefix);
    a.canonicalize();
    out.push_back(a);
  }
  return out;
}

std::optional<std::vector<Integer>> MoranSystem::spectrum_digits(std::size_t k) const {
  require_level(k);
  return rule_->spectrum_digits(k);
}

std::int64_t count_shifted(std::int64_t b, const std::vector<Integer>& digits) {
  return std::count_if(digits.begin(), digits.end(),
                       [b](const Integer& d) { return d < 0 || d >= b; });
}

namespace {

class ExplicitRule final : public LevelRule {
 public:
  explicit ExplicitRule(std::vector<LevelDigits> levels) : levels_(std::move(levels)) {}

  std::string name() const override { return "explicit"; }
  nlohmann::json params() const override {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : levels_) {
      nlohmann::json digits = nlohmann::json::array();
      for (const auto& d : l.B) digits.push_back(to_string(d));
      levels.push_back({{"N", to_string(l.N)}, {"b", l.b}, {"B", digits}});
    }
    return {{"levels", levels}};
  }
  std::optional<std::size_t> level_count() const override { return levels_.size(); }
  std::int64_t b(std::size_t k) const override { return levels_.at(k - 1).b; }
  Integer N(std::size_t k) const override { return levels_.at(k - 1).N; }
  std::vector<Integer> digits(std::size_t k, const Integer&) const override {
    return levels_.at(k - 1).B;
  }

 private:
  std::vector<LevelDigits> levels_;
};

}  // namespace

MoranSystem explicit_system(std::vector<LevelDigits> levels) {
  if (levels.empty()) throw std::invalid_argument("explicit system needs at least one level");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    const std::string where = "level " + std::to_string(i + 1) + ": ";
    if (l.b < 2) throw std::invalid_argument(where + "b_k must be at least 2");
    if (l.N < l.b) throw std::invalid_argument(where + "N_k must be at least b_k");
    if (!mpz_divisible_ui_p(l.N.get_mpz_t(), static_cast<unsigned long>(l.b)))
      throw std::invalid_argument(where + "b_k = " + std::to_string(l.b) + " does not divide N_k = " +
                                  to_string(l.N));
    if (l.B.size() != static_cast<std::size_t>(l.b))
      throw std::invalid_argument(where + "#B_k = " + std::to_string(l.B.size()) + " but b_k = " +
                                  std::to_string(l.b));
    std::set<Integer> seen;
    for (const auto& d : l.B) {
      if (d < 0) throw std::invalid_argument(where + "negative digit " + to_string(d));
      if (!seen.insert(d).second) throw std::invalid_argument(where + "duplicate digit " + to_string(d));
    }
  }
  return MoranSystem(std::make_shared<ExplicitRule>(std::move(levels)));
}

namespace {

std::optional<TailBound> moran_bound(const RuleTraits& t, SeriesKind kind) {
  const bool shifted_summable =
      t.shifted_ratio && t.shifted_ratio->kind == TailBound::Kind::dominated;
  const auto consecutive_part = TailBound::geometric_bound(
      1.0, 0.5, "(b_k-1)/(2 N_1...N_k) <= 2^-k from the digits below b_k");
  switch (kind) {
    case SeriesKind::thm11:
      if (t.digits_below_dilation)
        return TailBound::geometric_bound(2.0, 0.5, "|a| < 1/(N_1...N_{k-1}) <= 2^(1-k)");
      if (shifted_summable)
        return consecutive_part.plus(*t.shifted_ratio);
      return std::nullopt;
    case SeriesKind::cor12:
    case SeriesKind::unbounded_support:
      if (t.digits_below_dilation)
        return TailBound::geometric_bound(2.0, 0.5, "max|a| < 1/(N_1...N_{k-1}) <= 2^(1-k)");
      if (t.shifted_atom_at_least_one)
        return TailBound::below(1.0, "the shifted digit gives an atom >= 1 at every level");
      return std::nullopt;
    case SeriesKind::thm13_square:
      if (t.digits_below_dilation)
        return TailBound::geometric_bound(4.0, 0.25, "max|a|^2 < 4^(1-k)");
      if (t.shifted_atom_at_least_one)
        return TailBound::below(1.0, "the shifted digit gives an atom >= 1 at every level");
      return std::nullopt;
    case SeriesKind::thm13_mean:
      if (t.digits_below_dilation)
        return TailBound::geometric_bound(2.0, 0.5, "mean a <= max a < 2^(1-k)");
      if (shifted_summable && t.shifted_atom_max)
        return consecutive_part.plus(t.shifted_ratio->scaled(*t.shifted_atom_max));
      if (t.shifted_mean_at_least_one_from)
        return TailBound::below(1.0, "(shifted atom)/b_k >= 1", *t.shifted_mean_at_least_one_from);
      return std::nullopt;
    case SeriesKind::shifted_ratio:
      return t.shifted_ratio;
    case SeriesKind::inverse_b:
      return t.inverse_b;
    default:
      return std::nullopt;
  }
}

}  // namespace

AtomSequence as_atom_sequence(const MoranSystem& system) {
  AtomSequence seq;
  seq.name = system.name();
  seq.dimension = 1;
  seq.level_count = system.level_count();
  seq.atoms = [system](std::size_t k) {
    std::vector<RationalPoint> out;
    for (const auto& a : system.scaled_digits(k)) out.push_back(RationalPoint::scalar(a));
    return out;
  };
  const RuleTraits traits = system.traits();
  seq.cardinality_sup = traits.cardinality_sup;
  if (!seq.cardinality_sup && system.level_count()) {
    std::size_t sup = 0;
    for (std::size_t k = 1; k <= *system.level_count(); ++k)
      sup = std::max<std::size_t>(sup, static_cast<std::size_t>(system.b(k)));
    seq.cardinality_sup = sup;
  }
  seq.declared_bound = [traits](SeriesKind kind, const Rational&) { return moran_bound(traits, kind); };
  return seq;
}

}  // namespace moran
