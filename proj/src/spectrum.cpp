#include "cantor_moran/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "cantor_moran/hadamard.hpp"

namespace moran {

namespace {

std::string digits_text(const std::vector<Integer>& ds) {
  std::string s = "(";
  for (std::size_t i = 0; i < ds.size(); ++i) s += (i ? ", " : "") + to_string(ds[i]);
  return s + ")";
}

std::optional<std::vector<std::int64_t>> small_lambdas(const SpectrumLevel& spectrum) {
  std::vector<std::int64_t> out;
  out.reserve(spectrum.lambdas.size());
  for (const auto& l : spectrum.lambdas) {
    if (!fits_int64(l)) return std::nullopt;
    out.push_back(l.get_si());
  }
  return out;
}

std::size_t pairs_before(std::size_t m, std::size_t i, std::size_t j) {
  // pairs (r, s), r < s, lexicographically <= (i, j)
  std::size_t count = 0;
  for (std::size_t r = 0; r < i; ++r) count += m - 1 - r;
  return count + (j - i);
}

}  // namespace

SpectrumCollision::SpectrumCollision(Integer lambda_, std::vector<Integer> first_,
                                     std::vector<Integer> second_)
    : std::runtime_error("spectrum collision at lambda = " + to_string(lambda_) + ": digits " +
                         digits_text(first_) + " and " + digits_text(second_)),
      lambda(std::move(lambda_)),
      first(std::move(first_)),
      second(std::move(second_)) {}

SpectrumLevel spectrum_level(std::span<const Integer> N, const std::vector<std::vector<Integer>>& L) {
  if (L.empty()) throw std::invalid_argument("spectrum needs at least one level");
  if (N.size() + 1 < L.size()) throw std::invalid_argument("not enough dilations for the digit sets");
  std::map<Integer, std::vector<Integer>> current{{Integer(0), {}}};
  Integer scale = 1;
  for (std::size_t k = 0; k < L.size(); ++k) {
    if (k > 0) scale *= N[k - 1];
    std::map<Integer, std::vector<Integer>> next;
    for (const auto& [lambda, ds] : current)
      for (const auto& l : L[k]) {
        std::vector<Integer> digits = ds;
        digits.push_back(l);
        Integer value = lambda + scale * l;
        auto [it, inserted] = next.emplace(value, digits);
        if (!inserted) throw SpectrumCollision(value, it->second, digits);
      }
    current = std::move(next);
  }
  SpectrumLevel out;
  out.n = L.size();
  for (auto& [lambda, ds] : current) {
    out.lambdas.push_back(lambda);
    out.digits.push_back(std::move(ds));
  }
  return out;
}

SpectrumLevel spectrum_level(const MoranSystem& system, std::size_t n) {
  if (n == 0) throw std::invalid_argument("level must be at least 1");
  system.require_level(n);
  std::vector<Integer> N;
  std::vector<std::vector<Integer>> L;
  for (std::size_t k = 1; k <= n; ++k) {
    N.push_back(system.N(k));
    if (auto own = system.spectrum_digits(k)) {
      if (!check_hadamard({system.N(k), system.digits(k), *own}))
        throw std::domain_error(system.name() + ": level " + std::to_string(k) +
                                " spectrum digits do not form a Hadamard triple");
      L.push_back(std::move(*own));
    } else {
      L.push_back(triple_of_level(system, k).L);
    }
  }
  return spectrum_level(N, L);
}

OrthogonalityResult verify_orthogonality(const DiscreteMeasure& mu, const SpectrumLevel& spectrum) {
  const ExactTransformPlan plan(mu);
  const std::size_t m = spectrum.lambdas.size();
  OrthogonalityResult r;
  std::optional<PairWitness> w;
  if (auto small = small_lambdas(spectrum); small && plan.fast()) {
    w = parallel::first_nonorthogonal_pair(plan, *small);
  } else {
    for (std::size_t i = 0; i < m && !w; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (!plan.fourier_zero(Rational(spectrum.lambdas[i] - spectrum.lambdas[j]))) {
          w = PairWitness{i, j};
          break;
        }
  }
  r.ok = !w;
  if (w) {
    r.witness = std::make_pair(spectrum.lambdas[w->i], spectrum.lambdas[w->j]);
    r.pairs_tested = pairs_before(m, w->i, w->j);
  } else {
    r.pairs_tested = m * (m - (m ? 1 : 0)) / 2;
  }
  return r;
}

double gram_deviation(const DiscreteMeasure& mu, const SpectrumLevel& spectrum) {
  const ExactTransformPlan plan(mu);
  if (auto small = small_lambdas(spectrum); small && plan.fast())
    return parallel::gram_deviation(plan, *small);
  double worst = 0.0;
  const auto& ls = spectrum.lambdas;
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i; j < ls.size(); ++j)
      worst = std::max(worst, std::abs(plan.fourier(Rational(ls[j] - ls[i])) - (i == j ? 1.0 : 0.0)));
  return worst;
}

double verify_parseval(const DiscreteMeasure& mu, const SpectrumLevel& spectrum,
                       std::span<const double> xis) {
  if (spectrum.lambdas.size() != mu.size())
    throw std::invalid_argument("#Lambda = " + std::to_string(spectrum.lambdas.size()) +
                                " but the measure has " + std::to_string(mu.size()) + " atoms");
  const ExactTransformPlan plan(mu);
  if (auto small = small_lambdas(spectrum); small && plan.fast())
    return parallel::parseval_deviation(plan, *small, xis);
  double worst = 0.0;
  for (double xi : xis) {
    const Rational x(xi);
    double q = 0.0;
    for (const auto& l : spectrum.lambdas) q += std::norm(fourier_transform(mu, Rational(x + l)));
    worst = std::max(worst, std::abs(q - 1.0));
  }
  return worst;
}

std::vector<double> seeded_frequencies(std::uint64_t seed, std::size_t m) {
  std::mt19937_64 gen(seed);
  std::vector<double> out(m);
  for (auto& x : out) x = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return out;
}

DiscreteMeasure nu_tail_truncated(const MoranSystem& system, std::size_t n, std::size_t m) {
  if (m == 0) throw std::invalid_argument("need at least one factor");
  system.require_level(n + m);
  DiscreteMeasure nu = dirac(RationalPoint::zero(1));
  Integer scale = 1;
  for (std::size_t k = n + 1; k <= n + m; ++k) {
    scale *= system.N(k);
    nu = convolve(nu, uniform_measure(system.digits(k), Rational(Integer(1), scale)));
  }
  return nu;
}

double n0_threshold() { return 7.0 / 9.0 - 2.0 * std::numbers::pi * std::numbers::pi / 27.0; }

int k_x(double x) {
  if (x < 0.0 || x >= 1.0) throw std::domain_error("k_x is defined on [0, 1)");
  return x <= 0.5 ? 0 : -1;
}

TailCheck tail_lower_bound_check(const MoranSystem& system, std::size_t n, std::size_t K,
                                 std::span<const double> xs) {
  if (K == 0) throw std::invalid_argument("need at least one factor");
  if (xs.empty()) throw std::invalid_argument("empty grid");
  TailCheck out;
  out.n = n;
  out.xs.assign(xs.begin(), xs.end());

  bool finite_tail = false;
  if (auto count = system.level_count()) {
    if (n >= *count) throw std::out_of_range("no levels after n = " + std::to_string(n));
    if (n + K >= *count) {
      K = *count - n;
      finite_tail = true;
    }
  }
  out.factors = K;

  // Exponential bound on prod_{k > K} of the factor bounds, via 1 - x >= e^{-3x}.
  if (!finite_tail) {
    const auto ratio = as_atom_sequence(system).bound_for(SeriesKind::shifted_ratio);
    if (!ratio || !ratio->summable() || ratio->from > n + K + 1)
      throw std::domain_error(system.name() + ": no summable bound on c_k/b_k beyond level " +
                              std::to_string(n + K));
    double xmax = 0.0;
    for (double x : xs) xmax = std::max(xmax, std::abs(x));
    const double head = std::pow(std::numbers::pi * xmax, 2) / 6.0;
    const double geometric = head * std::pow(4.0, -static_cast<double>(K)) * 4.0 / 3.0;
    out.tail_factor = std::exp(-3.0 * (geometric + 2.0 * ratio->tail_after(n + K)));
  }

  std::vector<TailFactor> factors;
  Integer Q = 1;
  double log_Q = 0.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const std::size_t level = n + k;
    Q *= system.N(level);
    log_Q += system.log_N(level);
    const auto digits = system.digits(level);
    const std::int64_t b = system.b(level);
    const std::int64_t c = count_shifted(b, digits);
    factors.push_back({Mask(digits, Rational(Integer(1), Q)),
                       std::exp(std::log(static_cast<double>(b)) - log_Q),
                       2.0 * static_cast<double>(c) / static_cast<double>(b)});
  }
  auto grid = parallel::tail_grid(factors, xs);
  out.direct = std::move(grid.direct);
  out.bound = std::move(grid.bound);
  out.direct_dominates = true;
  out.bound_min = std::numeric_limits<double>::infinity();
  out.direct_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.bound[i] *= out.tail_factor;
    out.bound_min = std::min(out.bound_min, out.bound[i]);
    out.direct_min = std::min(out.direct_min, out.direct[i]);
    if (out.direct[i] < out.bound[i] - 1e-12) out.direct_dominates = false;
  }
  return out;
}

EquiPositivityCertificate equi_positivity_certificate(const MoranSystem& system, std::size_t horizon,
                                                      std::size_t factors, std::size_t grid_points) {
  const auto nc = check_nearly_consecutive(system, horizon);
  if (!nc.all_residues_ok())
    throw std::domain_error(system.name() + ": digits are not nearly consecutive");
  const auto& series = nc.ratio_series;
  if (series.verdict != Verdict::converges || !series.total)
    throw std::domain_error(system.name() + ": sum c_k/b_k is " + to_string(series.verdict) + " (" +
                            series.tail_argument + ")");
  const auto ratio = *as_atom_sequence(system).bound_for(SeriesKind::shifted_ratio);

  EquiPositivityCertificate cert;
  cert.horizon = horizon;
  cert.partial_sum_ckbk = series.partial_sums.back().enclosure[0].hi;
  cert.tail_ckbk = ratio.tail_after(horizon);
  cert.S = series.total->hi;
  cert.tail_argument = series.tail_argument;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  cert.epsilon = std::exp(-8.0 * pi2 / 27.0 - 6.0 * cert.S);

  // The rule bound keeps 2c_k/b_k under the threshold from k_guard on.
  const double threshold = n0_threshold();
  std::size_t k_guard = std::max<std::size_t>(ratio.from, 1);
  while (!(2.0 * ratio.value_at(k_guard) < threshold)) {
    if (++k_guard > 1'000'000)
      throw std::domain_error(system.name() + ": bound on c_k/b_k stays above the n0 threshold");
  }
  const std::size_t inspect = std::max(horizon, k_guard - 1);
  cert.n0 = 0;
  for (std::size_t k = 1; k <= inspect; ++k) {
    const double c = static_cast<double>(k <= horizon ? nc.c[k - 1] : system.shifted_count(k));
    const double b = static_cast<double>(k <= horizon ? nc.b[k - 1] : system.b(k));
    if (!(2.0 * c / b < threshold)) cert.n0 = k;
  }

  const auto xs = uniform_grid(-2.0 / 3.0, 2.0 / 3.0, grid_points);
  const auto check = tail_lower_bound_check(system, cert.n0, factors, xs);
  cert.grid_min = check.bound_min;
  cert.direct_min = check.direct_min;
  cert.valid = cert.grid_min >= cert.epsilon && check.direct_dominates && cert.direct_min >= cert.epsilon;
  return cert;
}

}  // namespace moran
