#include "cantor_moran/mask.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace moran {

Mask::Mask(const std::vector<Integer>& digits, const Rational& scale) {
  if (digits.empty()) throw std::invalid_argument("mask needs a nonempty digit set");
  for (const auto& d : digits) {
    Rational ds = d * scale;
    ds.canonicalize();
    if (abs(ds) <= kSmallPhase)
      small_.push_back(to_double(ds));
    else
      big_.push_back(ds);
  }
  weight_ = 1.0 / static_cast<double>(digits.size());
}

Complex Mask::operator()(double xi) const {
  const double two_pi = 2.0 * std::numbers::pi;
  Complex sum = 0;
  for (double ds : small_) sum += std::polar(1.0, -two_pi * ds * xi);
  if (!big_.empty()) {
    const Rational x(xi);
    for (const auto& ds : big_) {
      const double phase = to_double(fractional_part(ds * x));
      sum += std::polar(1.0, -two_pi * phase);
    }
  }
  return weight_ * sum;
}

double mask_lower_bound(std::int64_t b, std::int64_t c, double xi) {
  if (b < 2) throw std::invalid_argument("b must be at least 2");
  if (c < 0 || c > b) throw std::invalid_argument("c must lie in [0, b]");
  const double t = static_cast<double>(b) * std::numbers::pi * xi;
  return 1.0 - t * t / 6.0 - 2.0 * static_cast<double>(c) / static_cast<double>(b);
}

}  // namespace moran
