#include "cantor_moran/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace moran {

namespace {

std::vector<std::uint64_t> proper_divisors(std::uint64_t m) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    small.push_back(d);
    if (d != m / d) large.push_back(m / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  small.pop_back();  // m itself
  return small;
}

// Exact division of `num` (constant term first) by a monic divisor; throws if not exact.
std::vector<std::int64_t> exact_divide(const std::vector<std::int64_t>& num,
                                       const std::vector<std::int64_t>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<__int128> rem(num.begin(), num.end());
  std::vector<std::pair<std::size_t, std::int64_t>> sparse;
  for (std::size_t j = 0; j < dn; ++j)
    if (den[j] != 0) sparse.emplace_back(j, den[j]);
  std::vector<std::int64_t> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const __int128 c = rem[i];
    if (c == 0) continue;
    const std::size_t shift = i - dn;
    quot[shift] = static_cast<std::int64_t>(c);
    if (c != quot[shift]) throw std::overflow_error("cyclotomic coefficient overflow");
    for (auto [j, a] : sparse) rem[shift + j] -= c * a;
    rem[i] = 0;
  }
  for (std::size_t j = 0; j < dn; ++j)
    if (rem[j] != 0) throw std::logic_error("inexact cyclotomic division");
  return quot;
}

class CyclotomicCache {
 public:
  const std::vector<std::int64_t>& get(std::uint64_t m) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = table_.find(m); it != table_.end()) return *it->second;
    }
    auto poly = std::make_unique<std::vector<std::int64_t>>(compute(m));
    std::lock_guard lock(mutex_);
    auto [it, inserted] = table_.try_emplace(m, std::move(poly));
    return *it->second;
  }

 private:
  std::vector<std::int64_t> compute(std::uint64_t m) {
    std::vector<std::int64_t> p(m + 1, 0);
    p[0] = -1;
    p[m] = 1;
    for (std::uint64_t e : proper_divisors(m)) p = exact_divide(p, get(e));
    return p;
  }

  std::mutex mutex_;
  std::map<std::uint64_t, std::unique_ptr<std::vector<std::int64_t>>> table_;
};

CyclotomicCache& cache() {
  static CyclotomicCache instance;
  return instance;
}

struct Int64Overflow {};

// Reduces `poly` modulo the monic `phi` in place; returns whether the remainder vanishes.
bool reduces_to_zero(std::vector<std::int64_t>& poly, const std::vector<std::int64_t>& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    const std::int64_t c = poly[i];
    if (c == 0) continue;
    const std::size_t shift = i - deg;
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi[j] == 0) continue;
      std::int64_t prod;
      std::int64_t next;
      if (__builtin_mul_overflow(c, phi[j], &prod) ||
          __builtin_sub_overflow(poly[shift + j], prod, &next))
        throw Int64Overflow{};
      poly[shift + j] = next;
    }
    poly[i] = 0;
  }
  return std::all_of(poly.begin(), poly.begin() + static_cast<std::ptrdiff_t>(std::min(deg, poly.size())),
                     [](std::int64_t c) { return c == 0; });
}

bool reduces_to_zero(std::vector<Integer>& poly, const std::vector<std::int64_t>& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    if (poly[i] == 0) continue;
    const Integer c = poly[i];
    const std::size_t shift = i - deg;
    for (std::size_t j = 0; j < deg; ++j)
      if (phi[j] != 0) poly[shift + j] -= c * static_cast<long>(phi[j]);
    poly[i] = 0;
  }
  for (std::size_t j = 0; j < std::min(deg, poly.size()); ++j)
    if (poly[j] != 0) return false;
  return true;
}

// P is dense of length q; P(zeta_q) = 0 iff every stride-slice vanishes mod Phi_rad.
template <class Coef>
bool dense_vanishes(std::uint64_t rad, std::uint64_t stride, const std::vector<Coef>& dense,
                    const std::vector<std::int64_t>& phi) {
  std::vector<Coef> slice(rad);
  for (std::uint64_t r = 0; r < stride; ++r) {
    bool any = false;
    for (std::uint64_t t = 0; t < rad; ++t) {
      slice[t] = dense[r + t * stride];
      any = any || slice[t] != 0;
    }
    if (any && !reduces_to_zero(slice, phi)) return false;
  }
  return true;
}

void check_order(std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("root of unity order must be positive");
  if (q > kMaxRootOfUnityOrder)
    throw std::domain_error("root of unity order " + std::to_string(q) + " exceeds cap of " +
                            std::to_string(kMaxRootOfUnityOrder));
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("cyclotomic order must be positive");
  if (m > kMaxRootOfUnityOrder)
    throw std::domain_error("cyclotomic order " + std::to_string(m) + " exceeds cap");
  return cache().get(m);
}

std::uint64_t radical(std::uint64_t q) {
  std::uint64_t r = 1;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    r *= p;
    while (q % p == 0) q /= p;
  }
  return q > 1 ? r * q : r;
}

bool vanishes_at_root_of_unity(std::uint64_t q, std::span<const std::uint64_t> exponents,
                               std::span<const std::int64_t> coefficients) {
  check_order(q);
  if (exponents.size() != coefficients.size())
    throw std::invalid_argument("exponent/coefficient length mismatch");
  const std::uint64_t rad = radical(q);
  const auto& phi = cyclotomic_polynomial(rad);
  std::vector<std::int64_t> dense(q, 0);
  bool overflow = false;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] >= q) throw std::invalid_argument("exponent not reduced mod q");
    overflow = overflow || __builtin_add_overflow(dense[exponents[i]], coefficients[i],
                                                  &dense[exponents[i]]);
  }
  if (!overflow) {
    try {
      return dense_vanishes(rad, q / rad, dense, phi);
    } catch (const Int64Overflow&) {
    }
  }
  std::vector<Integer> wide(q, Integer(0));
  for (std::size_t i = 0; i < exponents.size(); ++i)
    wide[exponents[i]] += static_cast<long>(coefficients[i]);
  return dense_vanishes(rad, q / rad, wide, phi);
}

bool vanishes_at_root_of_unity(std::uint64_t q, std::span<const RootTerm> terms) {
  check_order(q);
  const std::uint64_t rad = radical(q);
  const auto& phi = cyclotomic_polynomial(rad);
  std::vector<Integer> dense(q, Integer(0));
  for (const auto& t : terms) {
    if (t.exponent >= q) throw std::invalid_argument("exponent not reduced mod q");
    dense[t.exponent] += t.coefficient;
  }
  bool small = std::all_of(dense.begin(), dense.end(),
                           [](const Integer& c) { return c.fits_slong_p(); });
  if (small) {
    std::vector<std::int64_t> narrow(q);
    for (std::uint64_t i = 0; i < q; ++i) narrow[i] = dense[i].get_si();
    try {
      return dense_vanishes(rad, q / rad, narrow, phi);
    } catch (const Int64Overflow&) {
    }
  }
  return dense_vanishes(rad, q / rad, dense, phi);
}

}  // namespace moran
