#pragma once

#include <cstddef>
#include <vector>

#include "cantor_moran/measure.hpp"
#include "cantor_moran/rational.hpp"

namespace moran {

/// m(xi) = (1/#B) sum_{d in B} exp(-2 pi i d s xi) for an integer digit set B
/// and an exact rational scale s.
///
/// Digits with |d s| <= kSmallPhase are evaluated in double precision. Larger
/// ones (the shifted digits, which carry N_1...N_k) are reduced mod 1 exactly
/// after converting xi to the rational it represents.
class Mask {
 public:
  static constexpr double kSmallPhase = 1024.0;

  Mask(const std::vector<Integer>& digits, const Rational& scale = Rational(1));

  Complex operator()(double xi) const;
  double modulus(double xi) const { return std::abs((*this)(xi)); }
  std::size_t size() const { return small_.size() + big_.size(); }

 private:
  std::vector<double> small_;
  std::vector<Rational> big_;
  double weight_ = 0.0;
};

/// 1 - (b pi xi)^2 / 6 - 2c/b.
double mask_lower_bound(std::int64_t b, std::int64_t c, double xi);

}  // namespace moran
