#include "cantor_moran/support_dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "cantor_moran/measure.hpp"

namespace moran {

bool has_factorial_shift_form(const MoranSystem& system, std::size_t n) {
  system.require_level(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::int64_t b = system.b(k);
    std::vector<Integer> expected;
    for (std::int64_t d = 0; d + 1 < b; ++d) expected.push_back(d);
    expected.push_back(b - 1 + system.prefix_product(k) * factorial(static_cast<unsigned>(k)));
    auto got = system.digits(k);
    std::sort(got.begin(), got.end());
    if (got != expected) return false;
  }
  return true;
}

std::optional<PatchIndex> factorial_decomposition(const Integer& m, std::size_t n) {
  if (m < 0) return std::nullopt;
  Integer rest = m;
  PatchIndex S;
  for (std::size_t k = n; k >= 1; --k) {
    const Integer f = factorial(static_cast<unsigned>(k));
    if (rest >= f) {
      rest -= f;
      S.push_back(k);
    }
  }
  if (rest != 0) return std::nullopt;
  std::reverse(S.begin(), S.end());
  return S;
}

SupportPartition support_partition(const MoranSystem& system, std::size_t n) {
  if (n == 0) throw std::invalid_argument("level must be at least 1");
  if (!has_factorial_shift_form(system, n))
    throw std::domain_error(system.name() + ": digits are not {0..b_k-2, b_k-1 + N_1...N_k k!}");

  // Enumerate digit tuples; the last digit of each level is the shifted one.
  std::vector<std::vector<Integer>> digits(n);
  std::vector<Integer> prefix(n);
  for (std::size_t k = 1; k <= n; ++k) {
    digits[k - 1] = system.digits(k);
    std::sort(digits[k - 1].begin(), digits[k - 1].end());
    prefix[k - 1] = system.prefix_product(k);
  }
  std::map<Rational, PatchIndex> enumerated;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Rational x = 0;
    PatchIndex S;
    for (std::size_t k = 0; k < n; ++k) {
      x += ratio(digits[k][idx[k]], prefix[k]);
      if (idx[k] + 1 == digits[k].size()) S.push_back(k + 1);
    }
    x.canonicalize();
    enumerated.emplace(x, std::move(S));
    std::size_t k = 0;
    while (k < n && ++idx[k] == digits[k].size()) idx[k++] = 0;
    if (k == n) break;
  }

  const DiscreteMeasure mu = finite_level(system, n);
  SupportPartition out;
  out.n = n;
  out.windows_ok = true;
  out.exhaustive = enumerated.size() == mu.size();
  for (const auto& atom : mu.atoms()) {
    const Rational& x = atom.point[0];
    const Integer floor = floor_of(x);
    auto S = factorial_decomposition(floor, n);
    auto it = enumerated.find(x);
    if (!S || it == enumerated.end() || it->second != *S) {
      out.exhaustive = false;
      if (!S) {
        out.windows_ok = false;
        continue;
      }
    }
    auto& group = out.groups[*S];
    if (group.atoms.empty()) {
      group.offset = 0;
      for (std::size_t k : *S) group.offset += factorial(static_cast<unsigned>(k));
      group.mass = 0;
    }
    group.atoms.push_back(x);
    group.mass += atom.weight;
    if (x < group.offset || x >= group.offset + 1) out.windows_ok = false;
  }
  std::set<Integer> offsets;
  for (const auto& [S, g] : out.groups) offsets.insert(g.offset);
  out.disjoint = offsets.size() == out.groups.size() && out.windows_ok;
  return out;
}

Rational patch_measure_formula(const MoranSystem& system, std::size_t l0, std::size_t n) {
  if (l0 > n) throw std::invalid_argument("need l0 <= n");
  system.require_level(std::max<std::size_t>(n, 1));
  Rational r = 1;
  for (std::size_t k = 1; k <= l0; ++k) r /= system.b(k);
  for (std::size_t k = l0 + 1; k <= n; ++k) r *= Rational(system.b(k) - 1, system.b(k));
  r.canonicalize();
  return r;
}

Rational group_mass_formula(const MoranSystem& system, const PatchIndex& S, std::size_t n) {
  system.require_level(n);
  const std::set<std::size_t> in(S.begin(), S.end());
  Rational r = 1;
  for (std::size_t k = 1; k <= n; ++k)
    r *= in.count(k) ? Rational(1, system.b(k)) : Rational(system.b(k) - 1, system.b(k));
  r.canonicalize();
  return r;
}

bool factorial_offsets_distinct(std::size_t up_to) {
  Integer sum = 0;
  for (std::size_t n = 1; n <= up_to; ++n) {
    sum += factorial(static_cast<unsigned>(n));
    if (!(sum < factorial(static_cast<unsigned>(n + 1)))) return false;
  }
  return true;
}

namespace {

void fill_tails(DimensionEstimate& e) {
  const std::size_t K = e.q.size();
  e.tail_inf.assign(K, 0.0);
  e.tail_sup.assign(K, 0.0);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = K; i-- > 0;) {
    lo = std::min(lo, e.q[i]);
    hi = std::max(hi, e.q[i]);
    e.tail_inf[i] = lo;
    e.tail_sup[i] = hi;
  }
}

}  // namespace

std::pair<DimensionEstimate, DimensionEstimate> dimension_quotients(std::span<const double> log_b,
                                                                    std::span<const double> log_N,
                                                                    std::size_t K) {
  if (K == 0) throw std::invalid_argument("horizon must be at least 1");
  if (log_b.size() < K + 1 || log_N.size() < K + 1)
    throw std::out_of_range("dimension quotients need data for levels 1..K+1");
  DimensionEstimate h{"hausdorff", {}, {}, {}, {}, 0.0}, p{"packing", {}, {}, {}, {}, 0.0};
  h.q.reserve(K);
  p.q.reserve(K);
  const double eps = std::numeric_limits<double>::epsilon();
  double A = 0.0, B = 0.0;
  for (std::size_t k = 1; k <= K; ++k) {
    A += log_b[k - 1];
    B += log_N[k - 1];
    const double Bh = B + log_N[k] - log_b[k];
    const double qp = A / B, qh = A / Bh;
    p.q.push_back(qp);
    h.q.push_back(qh);
    const double rel = 4.0 * static_cast<double>(k + 1) * eps;
    p.error_bound = std::max(p.error_bound, rel * (std::abs(qp) + 1.0) * 2.0);
    h.error_bound = std::max(h.error_bound, rel * (std::abs(qh) + 1.0) * 2.0 * (B + log_N[k]) / Bh);
  }
  fill_tails(h);
  fill_tails(p);
  return {std::move(h), std::move(p)};
}

std::pair<DimensionEstimate, DimensionEstimate> dimension_quotients(const MoranSystem& system,
                                                                    std::size_t K,
                                                                    bool require_hypotheses) {
  if (require_hypotheses) {
    const auto inv = as_atom_sequence(system).bound_for(SeriesKind::inverse_b);
    if (!inv || !inv->summable())
      throw std::domain_error(system.name() +
                              ": sum 1/b_k is not known to be finite; dimension quotients refused");
  }
  system.require_level(K + 1);
  std::vector<double> log_b(K + 1), log_N(K + 1);
  for (std::size_t k = 1; k <= K + 1; ++k) {
    log_b[k - 1] = std::log(static_cast<double>(system.b(k)));
    log_N[k - 1] = system.log_N(k);
  }
  auto out = dimension_quotients(log_b, log_N, K);
  for (const auto& end : system.block_ends(K)) {
    if (end.level == 0 || end.level > K) continue;
    if (end.odd)
      out.first.block_values.push_back({end, out.first.q[end.level - 1]});
    else
      out.second.block_values.push_back({end, out.second.q[end.level - 1]});
  }
  return out;
}

StolzCesaroBounds stolz_cesaro_bounds(std::span<const double> alpha, std::span<const double> beta,
                                      std::size_t n, std::optional<std::size_t> head) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (alpha.size() < n || beta.size() < n) throw std::out_of_range("fewer than n terms");
  const std::size_t m = head.value_or(n / 2);
  if (m >= n) throw std::invalid_argument("head must leave a nonempty window");
  for (std::size_t k = 0; k < n; ++k)
    if (!(beta[k] > 0.0)) throw std::invalid_argument("beta terms must be positive");
  StolzCesaroBounds r;
  double A_head = 0.0, B_head = 0.0, A = 0.0, T = 0.0;
  r.lower = std::numeric_limits<double>::infinity();
  r.upper = -r.lower;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < m) {
      A_head += alpha[k];
      B_head += beta[k];
    } else {
      A += alpha[k];
      T += beta[k];
      const double ratio = alpha[k] / beta[k];
      r.lower = std::min(r.lower, ratio);
      r.upper = std::max(r.upper, ratio);
    }
  }
  const double total_B = B_head + T;
  r.quotient = (A_head + A) / total_B;
  r.slack = std::max(std::abs(A_head - r.lower * B_head), std::abs(A_head - r.upper * B_head)) / total_B;
  // A few ulps of slack for the summation order.
  const double fuzz = 1e-12 * (1.0 + std::abs(r.quotient));
  r.holds = r.lower - r.slack - fuzz <= r.quotient && r.quotient <= r.upper + r.slack + fuzz;
  return r;
}

}  // namespace moran
