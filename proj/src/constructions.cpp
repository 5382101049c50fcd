#include "cantor_moran/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moran {

namespace {

void check_gamma(const Rational& gamma) {
  if (sgn(gamma) < 0 || gamma > 1) throw std::domain_error("gamma must lie in [0, 1]");
}

// 1/gamma - 1 as num/den, for 0 < gamma < 1.
std::pair<unsigned long, unsigned long> gamma_exponent(const Rational& gamma) {
  Rational e = 1 / gamma - 1;
  e.canonicalize();
  if (!e.get_num().fits_ulong_p() || !e.get_den().fits_ulong_p())
    throw std::domain_error("gamma has too large a numerator or denominator");
  return {e.get_num().get_ui(), e.get_den().get_ui()};
}

double log_of(const Integer& x) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

// Slightly below x, so a minorant survives rounding of the exact terms.
double shade(double x) { return x * (1.0 - 1e-12); }

nlohmann::json integer_list(const std::vector<Integer>& xs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

void validate_level(std::size_t k, std::int64_t b, const Integer& N) {
  const std::string where = "level " + std::to_string(k) + ": ";
  if (b < 2) throw std::invalid_argument(where + "b_k must be at least 2");
  if (N < b) throw std::invalid_argument(where + "N_k must be at least b_k");
  if (!mpz_divisible_ui_p(N.get_mpz_t(), static_cast<unsigned long>(b)))
    throw std::invalid_argument(where + "b_k = " + std::to_string(b) + " does not divide N_k = " +
                                to_string(N));
}

std::vector<Integer> shifted_digits(std::int64_t b, const Integer& shifted) {
  std::vector<Integer> out;
  out.reserve(static_cast<std::size_t>(b));
  for (std::int64_t d = 0; d + 1 < b; ++d) out.push_back(d);
  out.push_back(shifted);
  return out;
}

class Example16Rule final : public LevelRule {
 public:
  std::string name() const override { return "example16"; }
  nlohmann::json params() const override { return nlohmann::json::object(); }
  std::optional<std::size_t> level_count() const override { return std::nullopt; }
  std::int64_t b(std::size_t k) const override {
    const auto s = static_cast<std::int64_t>(k) + 1;
    return s * s;
  }
  Integer N(std::size_t k) const override { return Integer(2) * b(k); }
  std::vector<Integer> digits(std::size_t k, const Integer& prefix) const override {
    return shifted_digits(b(k), b(k) - 1 + prefix);
  }
  RuleTraits traits() const override {
    RuleTraits t;
    t.shifted_ratio = TailBound::power_bound(1.0, 2.0, 1.0, "c_k/b_k = 1/(k+1)^2");
    t.shifted_atom_at_least_one = true;
    t.shifted_atom_max = 2.0;
    t.inverse_b = TailBound::power_bound(1.0, 2.0, 1.0, "1/b_k = 1/(k+1)^2");
    return t;
  }
};

class Theorem17Rule final : public LevelRule {
 public:
  Theorem17Rule(Rational alpha, Rational beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    for (std::size_t j = 1;; ++j) {
      const Integer l = default_block_schedule(j);
      if (!l.fits_slong_p()) break;
      schedule_.push_back(static_cast<std::size_t>(l.get_si()));
    }
  }

  std::string name() const override { return "theorem17"; }
  nlohmann::json params() const override {
    return {{"alpha", to_string(alpha_)}, {"beta", to_string(beta_)}, {"schedule", "factorial-squared"}};
  }
  std::optional<std::size_t> level_count() const override { return std::nullopt; }
  std::int64_t b(std::size_t k) const override {
    if (k == 1) return 2;
    const auto s = static_cast<std::int64_t>(k);
    return s * s;
  }
  Integer N(std::size_t k) const override { return g_gamma(gamma_at(k), Integer(b(k))); }
  double log_N(std::size_t k) const override {
    return log_g_gamma(gamma_at(k), static_cast<std::uint64_t>(b(k)));
  }
  std::vector<Integer> digits(std::size_t k, const Integer& prefix) const override {
    return shifted_digits(b(k), b(k) - 1 + prefix * factorial(static_cast<unsigned>(k)));
  }
  RuleTraits traits() const override {
    RuleTraits t;
    t.shifted_ratio = TailBound::power_bound(1.0, 2.0, 0.0, "c_k/b_k = 1/b_k <= 1/k^2");
    t.shifted_atom_at_least_one = true;
    t.shifted_mean_at_least_one_from = 4;  // k!/k^2 >= 1 from k = 4
    t.inverse_b = TailBound::power_bound(1.0, 2.0, 0.0, "1/b_k <= 1/k^2");
    return t;
  }
  std::vector<BlockEnd> block_ends(std::size_t horizon) const override {
    std::vector<BlockEnd> out;
    for (std::size_t j = 1; j < schedule_.size(); ++j) {
      if (schedule_[j] > horizon) break;
      out.push_back({j, schedule_[j], j % 2 == 1});
    }
    return out;
  }

 private:
  // Block j is (l_j, l_{j+1}].
  std::size_t block_of(std::size_t k) const {
    for (std::size_t j = 1; j < schedule_.size(); ++j)
      if (k <= schedule_[j]) return j;
    throw std::out_of_range("level beyond the block schedule");
  }
  const Rational& gamma_at(std::size_t k) const { return block_of(k) % 2 == 1 ? alpha_ : beta_; }

  Rational alpha_, beta_;
  std::vector<std::size_t> schedule_;  // schedule_[j-1] = l_j
};

class ConsecutiveRule final : public LevelRule {
 public:
  ConsecutiveRule(std::int64_t b0, std::int64_t slope, std::int64_t n_factor)
      : b0_(b0), slope_(slope), n_factor_(n_factor) {}

  std::string name() const override { return "consecutive"; }
  nlohmann::json params() const override {
    return {{"b0", b0_}, {"slope", slope_}, {"n_factor", n_factor_}};
  }
  std::optional<std::size_t> level_count() const override { return std::nullopt; }
  std::int64_t b(std::size_t k) const override { return b0_ + slope_ * static_cast<std::int64_t>(k - 1); }
  Integer N(std::size_t k) const override { return Integer(n_factor_) * b(k); }
  std::vector<Integer> digits(std::size_t k, const Integer&) const override {
    std::vector<Integer> out;
    for (std::int64_t d = 0; d < b(k); ++d) out.push_back(d);
    return out;
  }
  RuleTraits traits() const override {
    RuleTraits t;
    if (slope_ == 0) t.cardinality_sup = static_cast<std::size_t>(b0_);
    t.digits_below_dilation = true;
    t.shifted_ratio = TailBound::zero_bound("B_k = {0..b_k-1}, so c_k = 0");
    if (slope_ == 0) {
      t.inverse_b = TailBound::below(shade(1.0 / static_cast<double>(b0_)), "1/b_k is constant");
    } else {
      const double s = static_cast<double>(slope_);
      t.inverse_b = TailBound::power_below(shade(1.0 / s), 1.0, static_cast<double>(b0_ - slope_) / s,
                                           "1/b_k = 1/(b0 + slope (k-1)), harmonic");
    }
    return t;
  }

 private:
  std::int64_t b0_, slope_, n_factor_;
};

class HomogeneousRule final : public LevelRule {
 public:
  HomogeneousRule(Integer N, std::vector<Integer> B, std::optional<std::vector<Integer>> L)
      : N_(std::move(N)), B_(std::move(B)), L_(std::move(L)) {}

  std::string name() const override { return "homogeneous"; }
  nlohmann::json params() const override {
    nlohmann::json p = {{"N", to_string(N_)}, {"B", integer_list(B_)}};
    if (L_) p["L"] = integer_list(*L_);
    return p;
  }
  std::optional<std::size_t> level_count() const override { return std::nullopt; }
  std::int64_t b(std::size_t) const override { return static_cast<std::int64_t>(B_.size()); }
  Integer N(std::size_t) const override { return N_; }
  std::vector<Integer> digits(std::size_t, const Integer&) const override { return B_; }
  std::optional<std::vector<Integer>> spectrum_digits(std::size_t) const override { return L_; }
  RuleTraits traits() const override {
    RuleTraits t;
    const auto b = static_cast<double>(B_.size());
    t.cardinality_sup = B_.size();
    t.digits_below_dilation = std::all_of(B_.begin(), B_.end(), [&](const Integer& d) { return d < N_; });
    const auto c = count_shifted(static_cast<std::int64_t>(B_.size()), B_);
    t.shifted_ratio = c == 0 ? TailBound::zero_bound("c_k = 0 at every level")
                             : TailBound::below(shade(static_cast<double>(c) / b), "c_k/b_k is constant");
    t.inverse_b = TailBound::below(shade(1.0 / b), "1/b_k is constant");
    return t;
  }

 private:
  Integer N_;
  std::vector<Integer> B_;
  std::optional<std::vector<Integer>> L_;
};

class FactorialShiftRule final : public LevelRule {
 public:
  FactorialShiftRule(std::vector<std::int64_t> b, std::vector<Integer> N) : b_(std::move(b)), N_(std::move(N)) {}

  std::string name() const override { return "factorial_shift"; }
  nlohmann::json params() const override {
    return {{"b", b_}, {"N", integer_list(N_)}};
  }
  std::optional<std::size_t> level_count() const override { return b_.size(); }
  std::int64_t b(std::size_t k) const override { return b_.at(k - 1); }
  Integer N(std::size_t k) const override { return N_.at(k - 1); }
  std::vector<Integer> digits(std::size_t k, const Integer& prefix) const override {
    return shifted_digits(b(k), b(k) - 1 + prefix * factorial(static_cast<unsigned>(k)));
  }

 private:
  std::vector<std::int64_t> b_;
  std::vector<Integer> N_;
};

}  // namespace

std::uint64_t floor_ln(std::uint64_t n) {
  if (n == 0) throw std::domain_error("ln 0");
  const long double l = std::log(static_cast<long double>(n));
  const long double m = std::floor(l);
  if (l - m < 1e-12L || m + 1 - l < 1e-12L)
    throw std::domain_error("ln " + std::to_string(n) + " too close to an integer");
  return static_cast<std::uint64_t>(m);
}

Integer g_gamma(const Rational& gamma, const Integer& n) {
  check_gamma(gamma);
  if (n < 2) throw std::domain_error("g_gamma needs n >= 2");
  if (gamma == 1) return 2 * n;
  if (sgn(gamma) == 0) {
    if (!n.fits_ulong_p()) throw std::domain_error("n too large for g_0");
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), n.get_mpz_t(), 1 + floor_ln(n.get_ui()));
    return out;
  }
  const auto [r, s] = gamma_exponent(gamma);
  if (static_cast<double>(r) * static_cast<double>(mpz_sizeinbase(n.get_mpz_t(), 2)) > 1e7)
    throw std::length_error("g_gamma(n) too large to materialize");
  Integer power, root;
  mpz_pow_ui(power.get_mpz_t(), n.get_mpz_t(), r);
  mpz_root(root.get_mpz_t(), power.get_mpz_t(), s);
  return root * n;
}

double log_g_gamma(const Rational& gamma, std::uint64_t n) {
  check_gamma(gamma);
  if (n < 2) throw std::domain_error("g_gamma needs n >= 2");
  const double ln = std::log(static_cast<double>(n));
  if (gamma == 1) return std::log(2.0) + ln;
  if (sgn(gamma) == 0) return static_cast<double>(1 + floor_ln(n)) * ln;
  const auto [r, s] = gamma_exponent(gamma);
  if (static_cast<double>(r) * std::log2(static_cast<double>(n)) <= 4096.0)
    return log_of(g_gamma(gamma, Integer(static_cast<unsigned long>(n))));
  // floor(n^e) differs from n^e by a relative amount below 2^-4096.
  return (static_cast<double>(r) / static_cast<double>(s)) * ln + ln;
}

std::optional<std::uint64_t> empirical_n0(const Rational& gamma, std::uint64_t n_max) {
  if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  auto holds = [&](std::uint64_t n) {
    const double ln = std::log(static_cast<double>(n));
    return log_g_gamma(gamma, n) <= (1.0 + ln) * ln;
  };
  if (!holds(n_max)) return std::nullopt;
  std::uint64_t n0 = n_max;
  while (n0 > 2 && holds(n0 - 1)) --n0;
  return n0;
}

Integer default_block_schedule(std::size_t j) {
  if (j == 0) throw std::invalid_argument("blocks are numbered from 1");
  if (j == 1) return 0;
  const Integer f = factorial(static_cast<unsigned>(j));
  return f * f;
}

double block_decay_quotient(std::size_t j) {
  if (j == 0) throw std::invalid_argument("blocks are numbered from 1");
  if (j == 1) return 0.0;
  const Integer l = default_block_schedule(j);
  const Integer gap = default_block_schedule(j + 1) - l;
  return to_double(ratio(l, gap)) * log_of(l);
}

MoranSystem build_example16_system() { return MoranSystem(std::make_shared<Example16Rule>()); }

MoranSystem build_theorem17_system(const Rational& alpha, const Rational& beta) {
  check_gamma(alpha);
  check_gamma(beta);
  if (alpha > beta) throw std::domain_error("need alpha <= beta");
  return MoranSystem(std::make_shared<Theorem17Rule>(alpha, beta));
}

MoranSystem build_consecutive_system(std::int64_t b0, std::int64_t slope, std::int64_t n_factor) {
  if (b0 < 2) throw std::invalid_argument("b0 must be at least 2");
  if (slope < 0) throw std::invalid_argument("slope must be nonnegative");
  if (n_factor < 1) throw std::invalid_argument("n_factor must be at least 1");
  return MoranSystem(std::make_shared<ConsecutiveRule>(b0, slope, n_factor));
}

MoranSystem build_homogeneous_system(const Integer& N, std::vector<Integer> B,
                                     std::optional<std::vector<Integer>> L) {
  explicit_system({{N, static_cast<std::int64_t>(B.size()), B}});  // validation only
  if (L && L->size() != B.size())
    throw std::invalid_argument("#L = " + std::to_string(L->size()) + " but #B = " + std::to_string(B.size()));
  return MoranSystem(std::make_shared<HomogeneousRule>(N, std::move(B), std::move(L)));
}

MoranSystem build_factorial_shift_system(std::vector<std::int64_t> b, std::vector<Integer> N) {
  if (b.empty() || b.size() != N.size())
    throw std::invalid_argument("need matching, nonempty b and N lists");
  for (std::size_t k = 0; k < b.size(); ++k) validate_level(k + 1, b[k], N[k]);
  return MoranSystem(std::make_shared<FactorialShiftRule>(std::move(b), std::move(N)));
}

SeriesReport unbounded_support_report(const MoranSystem& system, std::size_t n) {
  if (n == 0) throw std::invalid_argument("horizon must be at least 1");
  std::vector<SeriesValue> terms;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto digits = system.digits(k);
    const Integer top = *std::max_element(digits.begin(), digits.end());
    Rational t(top, system.prefix_product(k));
    t.canonicalize();
    terms.push_back(SeriesValue::scalar(t));
  }
  return make_series_report("max B_k / (N_1...N_k)", std::move(terms),
                            as_atom_sequence(system).bound_for(SeriesKind::unbounded_support));
}

}  // namespace moran
