#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cantor_moran/rational.hpp"

namespace moran {

class MoranSystem;

using Complex = std::complex<double>;

/// Modulus slack allowed on any evaluated Fourier value.
inline constexpr double kFourierModulusSlack = 1e-12;

/// Finitely supported probability measure on rational points of R^d.
///
/// Atoms are sorted by point, pairwise distinct and carry positive weights
/// summing exactly to one. Values are immutable after construction.
class DiscreteMeasure {
 public:
  struct Atom {
    RationalPoint point;
    Rational weight;
  };

  /// Merges duplicate points by summing weights. Throws on an empty list,
  /// mixed dimensions, non-positive weights or total mass != 1.
  static DiscreteMeasure from_atoms(std::vector<Atom> atoms);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  Rational total_mass() const;

  /// Atom points of a one-dimensional measure.
  std::vector<Rational> points_1d() const;

  friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b);

 private:
  DiscreteMeasure() = default;
  std::size_t dimension_ = 0;
  std::vector<Atom> atoms_;
};

DiscreteMeasure dirac(const RationalPoint& point);

/// delta_A: weight 1/#A on each point. Duplicates, an empty set or mixed
/// dimensions are errors.
DiscreteMeasure uniform_measure(std::span<const RationalPoint> points);
DiscreteMeasure uniform_measure(std::span<const Rational> points);
/// Uniform measure on scale * digits (one-dimensional).
DiscreteMeasure uniform_measure(std::span<const Integer> digits, const Rational& scale);

DiscreteMeasure convolve(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// sum_a w_a exp(-2 pi i xi.a). Phases xi.a are reduced mod 1 exactly before
/// conversion, so the only error is the final summation (#atoms * 4 ulp).
Complex fourier_transform(const DiscreteMeasure& mu, const RationalPoint& xi);
Complex fourier_transform(const DiscreteMeasure& mu, const Rational& xi);
/// Floating frequency: phases are formed in double precision.
Complex fourier_transform(const DiscreteMeasure& mu, std::span<const double> xi);
Complex fourier_transform(const DiscreteMeasure& mu, double xi);

/// One-dimensional measure over a common denominator, prepared for repeated
/// exact evaluation at rational frequencies.
class ExactTransformPlan {
 public:
  explicit ExactTransformPlan(const DiscreteMeasure& mu);

  /// Exact test of mu^(xi) == 0.
  bool fourier_zero(const Rational& xi) const;
  bool fourier_zero(std::int64_t xi) const;
  /// mu^(xi) with the phase reduced exactly.
  Complex fourier(const Rational& xi) const;
  Complex fourier(std::int64_t xi) const;

  const Integer& denominator() const { return denominator_; }
  std::size_t size() const { return numerators_.size(); }
  /// True when the denominator and all numerators fit in 62 bits.
  bool fast() const { return fast_; }
  const std::vector<std::int64_t>& numerators64() const { return numerators64_; }
  std::int64_t denominator64() const { return denominator64_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  bool zero_from_phases(const Integer& modulus, std::vector<Integer> residues) const;
  bool zero_from_phases_fast(std::uint64_t modulus, std::vector<std::uint64_t>& residues) const;

  Integer denominator_;
  std::vector<Integer> numerators_;       // atom = numerator / denominator
  std::vector<Integer> counts_;           // weights cleared to positive integers
  std::vector<double> weights_;
  bool fast_ = false;                     // all values fit in 62 bits
  std::vector<std::int64_t> numerators64_;
  std::int64_t denominator64_ = 0;
};

/// Exact certification that mu^(xi) = 0 (dimension 1, rational data).
bool exact_fourier_zero(const DiscreteMeasure& mu, const Rational& xi);
bool exact_fourier_zero(const DiscreteMeasure& mu, const RationalPoint& xi);

/// mu_n = delta_{N_1^{-1} B_1} * ... * delta_{(N_1...N_n)^{-1} B_n}.
///
/// Reports (via std::logic_error) when digit sums collide, since the
/// constructions in this library never merge atoms.
DiscreteMeasure finite_level(const MoranSystem& system, std::size_t n);

}  // namespace moran
