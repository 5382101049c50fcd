#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cantor_moran/rational.hpp"
#include "cantor_moran/series.hpp"

namespace moran {

/// Digit data of one level: dilation N_k, nominal cardinality b_k, digit set B_k.
struct LevelDigits {
  Integer N;
  std::int64_t b = 0;
  std::vector<Integer> B;
};

/// Facts a generating rule guarantees for every level, used to derive tail bounds.
struct RuleTraits {
  std::optional<std::size_t> cardinality_sup;
  /// Every digit lies in [0, N_k).
  bool digits_below_dilation = false;
  /// B_k = (B_k cap {0..b_k-1}) plus c_k "shifted" digits, and c_k/b_k obeys this bound.
  std::optional<TailBound> shifted_ratio;
  /// Each level has at least one shifted digit and every shifted atom is >= 1.
  bool shifted_atom_at_least_one = false;
  /// Upper bound on shifted atoms (B_k entries divided by N_1...N_k).
  std::optional<double> shifted_atom_max;
  /// From this level on, (shifted atom)/b_k >= 1.
  std::optional<std::size_t> shifted_mean_at_least_one_from;
  std::optional<TailBound> inverse_b;
};

struct BlockEnd {
  std::size_t block = 0;  // j, block (l_j, l_{j+1}]
  std::size_t level = 0;  // l_{j+1}
  bool odd = false;
};

/// Generating rule behind a MoranSystem. Implementations are immutable.
class LevelRule {
 public:
  virtual ~LevelRule() = default;

  virtual std::string name() const = 0;
  virtual nlohmann::json params() const = 0;
  /// nullopt for rules defined at every level.
  virtual std::optional<std::size_t> level_count() const = 0;
  virtual std::int64_t b(std::size_t k) const = 0;
  virtual Integer N(std::size_t k) const = 0;
  /// Natural log of N_k; rules with huge N_k override this analytically.
  virtual double log_N(std::size_t k) const;
  /// B_k. `prefix` is N_1...N_k, which shifted-digit rules need.
  virtual std::vector<Integer> digits(std::size_t k, const Integer& prefix) const = 0;
  /// Spectrum digits L_k when the rule carries them (otherwise canonical ones are used).
  virtual std::optional<std::vector<Integer>> spectrum_digits(std::size_t) const { return std::nullopt; }
  virtual RuleTraits traits() const { return {}; }
  virtual std::vector<BlockEnd> block_ends(std::size_t) const { return {}; }
  /// Largest N_1...N_k size (decimal digits) the rule materializes.
  virtual std::size_t digit_budget() const { return 10'000; }
};

/// A Moran system {N_k, b_k, B_k}: cheap to copy, immutable.
class MoranSystem {
 public:
  explicit MoranSystem(std::shared_ptr<const LevelRule> rule);

  std::string name() const { return rule_->name(); }
  nlohmann::json params() const { return rule_->params(); }
  std::optional<std::size_t> level_count() const { return rule_->level_count(); }
  bool is_rule() const { return !level_count().has_value(); }
  const LevelRule& rule() const { return *rule_; }

  /// Throws std::out_of_range if level k is unavailable.
  void require_level(std::size_t k) const;

  std::int64_t b(std::size_t k) const;
  Integer N(std::size_t k) const;
  double log_N(std::size_t k) const;
  /// N_1 N_2 ... N_k (1 for k = 0). Throws std::length_error past the digit budget.
  Integer prefix_product(std::size_t k) const;
  std::vector<Integer> digits(std::size_t k) const;
  LevelDigits level(std::size_t k) const;
  /// c_k = #(B_k \ {0, ..., b_k - 1}).
  std::int64_t shifted_count(std::size_t k) const;
  /// B_k / (N_1 ... N_k).
  std::vector<Rational> scaled_digits(std::size_t k) const;
  std::optional<std::vector<Integer>> spectrum_digits(std::size_t k) const;
  RuleTraits traits() const { return rule_->traits(); }
  std::vector<BlockEnd> block_ends(std::size_t horizon) const { return rule_->block_ends(horizon); }

 private:
  std::shared_ptr<const LevelRule> rule_;
};

/// Explicit finite list of levels. Validates N_k >= b_k >= 2, b_k | N_k,
/// #B_k = b_k, distinct nonnegative digits; errors name the offending level.
MoranSystem explicit_system(std::vector<LevelDigits> levels);

/// c_k computed literally from a digit list.
std::int64_t count_shifted(std::int64_t b, const std::vector<Integer>& digits);

/// The system viewed as the digit sets A_k = (N_1...N_k)^{-1} B_k, with the
/// tail bounds its rule traits justify.
AtomSequence as_atom_sequence(const MoranSystem& system);

}  // namespace moran
