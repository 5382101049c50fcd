#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cantor_moran/interval.hpp"
#include "cantor_moran/rational.hpp"

namespace moran {

enum class Verdict { converges, diverges, unknown };

std::string to_string(Verdict v);

/// Which series a declared bound refers to.
enum class SeriesKind {
  thm11,             // (1/#A_k) sum |a|/(1+|a|)
  cor12,             // max |a|
  thm13_square,      // max |a|^2
  thm13_mean,        // (1/#A_k) sum a      (vector)
  three_tail,        // mu_k(R^d \ B(r))
  three_centroid,    // c(mu_{k,r})         (vector)
  three_variance,    // M(mu_{k,r})
  shifted_ratio,     // c_k / b_k
  unbounded_support, // max(B_k) / (N_1...N_k)
  inverse_b,         // 1 / b_k
};

std::string to_string(SeriesKind kind);

/// coefficient * ratio^k
struct GeometricTerm {
  double coefficient = 0.0;
  double ratio = 0.0;
};

/// coefficient * (k + shift)^(-power)
struct PowerTerm {
  double coefficient = 0.0;
  double power = 0.0;
  double shift = 0.0;
};

/// A closed-form statement about the terms t_k of a series, valid for k >= from.
///
///   dominated:   |t_k| <= sum of geometric and power components
///   bounded_below: t_k >= floor_value > 0 (terms do not tend to zero)
///   minorized:   t_k >= one power component with power <= 1 (scalar, nonnegative)
struct TailBound {
  enum class Kind { dominated, bounded_below, minorized };

  Kind kind = Kind::dominated;
  std::size_t from = 1;
  std::vector<GeometricTerm> geometric;
  std::vector<PowerTerm> powers;
  double floor_value = 0.0;
  std::string derivation;

  static TailBound geometric_bound(double coefficient, double ratio, std::string derivation,
                                   std::size_t from = 1);
  static TailBound power_bound(double coefficient, double power, double shift,
                               std::string derivation, std::size_t from = 1);
  static TailBound zero_bound(std::string derivation);
  static TailBound below(double floor_value, std::string derivation, std::size_t from = 1);
  static TailBound power_below(double coefficient, double power, double shift,
                               std::string derivation, std::size_t from = 1);

  /// Sum of the components at index k (upper estimate of the exact value).
  double value_at(std::size_t k) const;
  /// Upper bound on sum_{k > n} of the components; requires every power > 1.
  double tail_after(std::size_t n) const;
  bool summable() const;
  TailBound plus(const TailBound& other) const;
  TailBound scaled(double factor) const;
};

/// Term or partial sum: one interval per component, plus exact values when rational.
struct SeriesValue {
  std::vector<Interval> enclosure;
  std::optional<std::vector<Rational>> exact;

  static SeriesValue scalar(const Rational& x);
  static SeriesValue scalar(Interval x);
  static SeriesValue vector(const std::vector<Rational>& xs);

  std::size_t dimension() const { return enclosure.size(); }
  /// Enclosure of the Euclidean norm.
  Interval norm() const;
};

SeriesValue operator+(const SeriesValue& a, const SeriesValue& b);

struct SeriesReport {
  std::string name;
  bool vector_valued = false;
  std::vector<SeriesValue> terms;         // index 0 is k = 1
  std::vector<SeriesValue> partial_sums;
  Verdict verdict = Verdict::unknown;
  std::string tail_argument;
  std::optional<std::size_t> witness;     // index supporting a DIVERGES verdict
  std::optional<Interval> total;          // enclosure of the full sum when CONVERGES
  std::vector<double> cauchy_tail;        // vector series: max_{n/2<=m<n} |S_n - S_m| per component
  std::vector<std::string> notes;
};

/// Builds partial sums and applies the verdict policy:
/// CONVERGES only with a summable dominated bound that every inspected term
/// satisfies; DIVERGES with a verified bounded_below bound (or, for scalar
/// nonnegative series, a verified minorant with power <= 1); otherwise UNKNOWN.
SeriesReport make_series_report(std::string name, std::vector<SeriesValue> terms,
                                const std::optional<TailBound>& bound, bool vector_valued = false);

/// A sequence of finite digit sets A_k in R^d, either finite data or a rule.
struct AtomSequence {
  std::string name;
  std::size_t dimension = 1;
  std::optional<std::size_t> level_count;  // nullopt: defined for every k >= 1
  std::function<std::vector<RationalPoint>(std::size_t)> atoms;
  std::optional<std::size_t> cardinality_sup;
  /// Closed-form statements the rule guarantees; r is the truncation radius.
  std::function<std::optional<TailBound>(SeriesKind, const Rational& r)> declared_bound;

  std::vector<RationalPoint> at(std::size_t k) const;
  std::optional<TailBound> bound_for(SeriesKind kind, const Rational& r = Rational(1)) const;
};

/// Finite explicit list of digit sets; carries no tail bounds.
AtomSequence explicit_atom_sequence(std::string name, std::vector<std::vector<RationalPoint>> sets);

}  // namespace moran
