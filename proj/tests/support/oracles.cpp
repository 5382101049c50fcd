#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace moran::testing {

namespace {

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

template <class F>
void for_each_tuple(const std::vector<std::size_t>& radix, F&& f) {
  std::vector<std::size_t> idx(radix.size(), 0);
  while (true) {
    f(idx);
    std::size_t k = 0;
    while (k < radix.size() && ++idx[k] == radix[k]) idx[k++] = 0;
    if (k == radix.size()) return;
  }
}

}  // namespace

double oracle_hadamard_gram(const HadamardTriple& t) {
  const std::size_t m = t.B.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::complex<long double> s = 0;
      for (std::size_t b = 0; b < m; ++b) {
        const long double x = to_double(t.B[b]) / to_double(t.N);
        const long double d = to_double(t.L[i]) - to_double(t.L[j]);
        s += std::polar(1.0L, -kTwoPi * x * d);
      }
      s /= static_cast<long double>(m);
      worst = std::max(worst, static_cast<double>(std::abs(s - (i == j ? 1.0L : 0.0L))));
    }
  return worst;
}

double oracle_gram_matrix(const DiscreteMeasure& mu, const std::vector<Integer>& lambdas) {
  double worst = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      const Rational xi(lambdas[i] - lambdas[j]);
      std::complex<long double> s = 0;
      for (const auto& a : mu.atoms()) {
        const Rational phase = fractional_part(xi * a.point[0]);
        s += static_cast<long double>(to_double(a.weight)) *
             std::polar(1.0L, -kTwoPi * static_cast<long double>(to_double(phase)));
      }
      worst = std::max(worst, static_cast<double>(std::abs(s - (i == j ? 1.0L : 0.0L))));
    }
  return worst;
}

TruncationStats oracle_truncation_stats(const std::vector<RationalPoint>& atoms, const Rational& r,
                                        std::size_t k) {
  const DiscreteMeasure mu = uniform_measure(atoms);
  const DiscreteMeasure mu_r = truncate_measure(mu, r);
  TruncationStats s;
  s.k = k;
  s.tail_mass = 0;
  for (const auto& a : mu.atoms())
    if (a.point.norm_squared() > r * r) s.tail_mass += a.weight;
  const std::size_t d = mu.dimension();
  s.centroid.assign(d, Rational(0));
  Rational second = 0;
  for (const auto& a : mu_r.atoms()) {
    for (std::size_t i = 0; i < d; ++i) s.centroid[i] += a.weight * a.point[i];
    second += a.weight * a.point.norm_squared();
  }
  Rational c2 = 0;
  for (const auto& c : s.centroid) c2 += c * c;
  s.second_moment = second - c2;
  return s;
}

Rational oracle_cylinder_mass(const MoranSystem& system, std::size_t l0, std::size_t n) {
  std::vector<std::vector<Integer>> digits;
  std::vector<std::size_t> radix;
  Integer total = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    auto d = system.digits(k);
    std::sort(d.begin(), d.end());
    radix.push_back(d.size());
    total *= static_cast<unsigned long>(d.size());
    digits.push_back(std::move(d));
  }
  Integer hits = 0;
  for_each_tuple(radix, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k < l0) {
        if (digits[k][idx[k]] != digits[k].front()) return;
      } else if (digits[k][idx[k]] > system.b(k + 1) - 2) {
        return;
      }
    }
    hits += 1;
  });
  Rational r(hits, total);
  r.canonicalize();
  return r;
}

Rational oracle_group_mass(const MoranSystem& system, const PatchIndex& S, std::size_t n) {
  std::vector<std::vector<Integer>> digits;
  std::vector<std::size_t> radix;
  Integer total = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    auto d = system.digits(k);
    radix.push_back(d.size());
    total *= static_cast<unsigned long>(d.size());
    digits.push_back(std::move(d));
  }
  Integer hits = 0;
  for_each_tuple(radix, [&](const std::vector<std::size_t>& idx) {
    PatchIndex used;
    for (std::size_t k = 0; k < n; ++k)
      if (digits[k][idx[k]] >= system.b(k + 1)) used.push_back(k + 1);
    if (used == S) hits += 1;
  });
  Rational r(hits, total);
  r.canonicalize();
  return r;
}

double oracle_mask_modulus(const std::vector<Integer>& digits, const Rational& scale, double xi) {
  const Rational x(xi);
  std::complex<long double> s = 0;
  for (const auto& d : digits) {
    const Rational phase = fractional_part(d * scale * x);
    s += std::polar(1.0L, -kTwoPi * static_cast<long double>(to_double(phase)));
  }
  return static_cast<double>(std::abs(s) / static_cast<long double>(digits.size()));
}

}  // namespace moran::testing
