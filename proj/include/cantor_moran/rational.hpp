#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace moran {

using Integer = mpz_class;
using Rational = mpq_class;

/// Point of Q^d. Coordinates are kept canonical (reduced, positive denominator).
class RationalPoint {
 public:
  RationalPoint() = default;
  explicit RationalPoint(std::vector<Rational> coords);
  RationalPoint(std::initializer_list<Rational> coords);

  static RationalPoint scalar(const Rational& x) { return RationalPoint{x}; }
  static RationalPoint zero(std::size_t dimension);

  std::size_t dimension() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  Rational norm_squared() const;
  bool is_zero() const;

  friend RationalPoint operator+(const RationalPoint& a, const RationalPoint& b);
  friend RationalPoint operator*(const Rational& s, const RationalPoint& p);
  friend bool operator==(const RationalPoint& a, const RationalPoint& b);
  friend bool operator<(const RationalPoint& a, const RationalPoint& b);

 private:
  std::vector<Rational> coords_;
};

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
std::string to_string(const RationalPoint& p);

/// Accepts "p", "p/q" and finite decimals such as "-0.375"; the value is exact.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// num / den in lowest terms; den != 0.
Rational ratio(const Integer& num, const Integer& den);
double to_double(const Rational& x);
double to_double(const Integer& x);
Integer floor_of(const Rational& x);
/// x - floor(x), in [0, 1).
Rational fractional_part(const Rational& x);
Integer factorial(unsigned n);
/// Number of decimal digits of |x| (1 for zero).
std::size_t decimal_digits(const Integer& x);
bool fits_int64(const Integer& x);

}  // namespace moran
