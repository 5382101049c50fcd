#pragma once

#include <cmath>
#include <limits>

#include "cantor_moran/rational.hpp"

namespace moran {

/// Closed floating interval with outward rounding (one ulp per operation).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double x) { return {x, x}; }
  static Interval enclose(const Rational& x);

  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

inline double round_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

inline Interval Interval::enclose(const Rational& x) {
  const double d = x.get_d();
  if (Rational(d) == x) return point(d);
  return {round_down(d), round_up(d)};
}

inline Interval operator+(Interval a, Interval b) {
  return {round_down(a.lo + b.lo), round_up(a.hi + b.hi)};
}

inline Interval operator-(Interval a, Interval b) {
  return {round_down(a.lo - b.hi), round_up(a.hi - b.lo)};
}

/// Product of nonnegative intervals.
inline Interval mul_nonneg(Interval a, Interval b) {
  return {round_down(a.lo * b.lo), round_up(a.hi * b.hi)};
}

/// Quotient of nonnegative intervals, divisor bounded away from zero.
inline Interval div_nonneg(Interval a, Interval b) {
  return {round_down(a.lo / b.hi), round_up(a.hi / b.lo)};
}

inline Interval sqrt_nonneg(Interval a) {
  return {a.lo <= 0.0 ? 0.0 : round_down(std::sqrt(a.lo)), round_up(std::sqrt(a.hi))};
}

}  // namespace moran
