#include "cantor_moran/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>

#include <omp.h>

namespace moran {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Rethrows the first exception raised inside a parallel region.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
#pragma omp critical(moran_exception_slot)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

std::vector<std::int64_t> distinct_differences(std::span<const std::int64_t> lambdas) {
  std::vector<std::int64_t> d;
  d.reserve(lambdas.size() * (lambdas.size() - (lambdas.empty() ? 0 : 1)) / 2);
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    for (std::size_t j = i + 1; j < lambdas.size(); ++j) {
      const std::int64_t x = lambdas[j] - lambdas[i];
      d.push_back(x < 0 ? -x : x);
    }
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

// Rows e^{-2 pi i lambda a} with the phase lambda * a reduced exactly.
std::vector<Complex> lambda_phase_table(const ExactTransformPlan& plan,
                                        std::span<const std::int64_t> lambdas) {
  if (!plan.fast()) throw std::domain_error("phase table needs a 62-bit denominator");
  const auto& nums = plan.numerators64();
  const auto d = static_cast<__int128>(plan.denominator64());
  const double dd = static_cast<double>(plan.denominator64());
  std::vector<Complex> table(lambdas.size() * nums.size());
  for (std::size_t l = 0; l < lambdas.size(); ++l)
    for (std::size_t a = 0; a < nums.size(); ++a) {
      __int128 r = (static_cast<__int128>(lambdas[l]) * nums[a]) % d;
      if (r < 0) r += d;
      table[l * nums.size() + a] = std::polar(1.0, -kTwoPi * (static_cast<double>(r) / dd));
    }
  return table;
}

double parseval_at(const ExactTransformPlan& plan, const std::vector<Complex>& table,
                   std::size_t count, double xi) {
  const auto& nums = plan.numerators64();
  const auto& w = plan.weights();
  const double dd = static_cast<double>(plan.denominator64());
  const std::size_t m = nums.size();
  std::vector<Complex> z(m);
  for (std::size_t a = 0; a < m; ++a)
    z[a] = w[a] * std::polar(1.0, -kTwoPi * xi * (static_cast<double>(nums[a]) / dd));
  double q = 0.0;
  for (std::size_t l = 0; l < count; ++l) {
    Complex s = 0;
    const Complex* row = table.data() + l * m;
    for (std::size_t a = 0; a < m; ++a) s += row[a] * z[a];
    q += std::norm(s);
  }
  return std::abs(q - 1.0);
}

double tail_bound_at(std::span<const TailFactor> factors, double xi) {
  double prod = 1.0;
  for (const auto& f : factors) {
    const double t = f.b_over_Q * std::numbers::pi * xi;
    prod *= 1.0 - t * t / 6.0 - f.shifted_term;
  }
  return prod;
}

double tail_direct_at(std::span<const TailFactor> factors, double xi) {
  double prod = 1.0;
  for (const auto& f : factors) prod *= f.mask.modulus(xi);
  return prod;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  xs.back() = hi;
  return xs;
}

namespace serial {

std::optional<PairWitness> first_nonorthogonal_pair(const ExactTransformPlan& plan,
                                                    std::span<const std::int64_t> lambdas) {
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    for (std::size_t j = i + 1; j < lambdas.size(); ++j)
      if (!plan.fourier_zero(lambdas[i] - lambdas[j])) return PairWitness{i, j};
  return std::nullopt;
}

double gram_deviation(const ExactTransformPlan& plan, std::span<const std::int64_t> lambdas) {
  double worst = lambdas.empty() ? 0.0 : std::abs(plan.fourier(std::int64_t{0}) - 1.0);
  for (std::int64_t d : distinct_differences(lambdas)) worst = std::max(worst, std::abs(plan.fourier(d)));
  return worst;
}

double parseval_deviation(const ExactTransformPlan& plan, std::span<const std::int64_t> lambdas,
                          std::span<const double> xis) {
  const auto table = lambda_phase_table(plan, lambdas);
  double worst = 0.0;
  for (double xi : xis) worst = std::max(worst, parseval_at(plan, table, lambdas.size(), xi));
  return worst;
}

std::vector<Complex> transform_grid(const DiscreteMeasure& mu, std::span<const double> xs) {
  std::vector<Complex> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = fourier_transform(mu, xs[i]);
  return out;
}

std::vector<double> mask_margins(const Mask& mask, std::int64_t b, std::int64_t c,
                                 std::span<const double> xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out[i] = mask.modulus(xs[i]) - mask_lower_bound(b, c, xs[i]);
  return out;
}

TailGridValues tail_grid(std::span<const TailFactor> factors, std::span<const double> xs) {
  TailGridValues out{std::vector<double>(xs.size()), std::vector<double>(xs.size())};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.direct[i] = tail_direct_at(factors, xs[i]);
    out.bound[i] = tail_bound_at(factors, xs[i]);
  }
  return out;
}

}  // namespace serial

namespace parallel {

std::optional<PairWitness> first_nonorthogonal_pair(const ExactTransformPlan& plan,
                                                    std::span<const std::int64_t> lambdas) {
  const std::size_t n = lambdas.size();
  std::size_t best_i = n, best_j = n;
  ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t current;
#pragma omp atomic read
    current = best_i;
    if (i > current) continue;
    slot.run([&] {
      for (std::size_t j = i + 1; j < n; ++j)
        if (!plan.fourier_zero(lambdas[i] - lambdas[j])) {
#pragma omp critical(moran_first_pair)
          if (i < best_i) {
            best_i = i;
            best_j = j;
          }
          break;
        }
    });
  }
  slot.rethrow();
  if (best_i == n) return std::nullopt;
  return PairWitness{best_i, best_j};
}

double gram_deviation(const ExactTransformPlan& plan, std::span<const std::int64_t> lambdas) {
  const auto diffs = distinct_differences(lambdas);
  double worst = lambdas.empty() ? 0.0 : std::abs(plan.fourier(std::int64_t{0}) - 1.0);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(diffs.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(plan.fourier(diffs[i])));
  return worst;
}

double parseval_deviation(const ExactTransformPlan& plan, std::span<const std::int64_t> lambdas,
                          std::span<const double> xis) {
  const auto table = lambda_phase_table(plan, lambdas);
  double worst = 0.0;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xis.size());
#pragma omp parallel for reduction(max : worst) schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    worst = std::max(worst, parseval_at(plan, table, lambdas.size(), xis[i]));
  return worst;
}

std::vector<Complex> transform_grid(const DiscreteMeasure& mu, std::span<const double> xs) {
  std::vector<Complex> out(xs.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = fourier_transform(mu, xs[i]);
  return out;
}

std::vector<double> mask_margins(const Mask& mask, std::int64_t b, std::int64_t c,
                                 std::span<const double> xs) {
  mask_lower_bound(b, c, 0.0);  // validates b and c outside the parallel region
  std::vector<double> out(xs.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = mask.modulus(xs[i]) - mask_lower_bound(b, c, xs[i]);
  return out;
}

TailGridValues tail_grid(std::span<const TailFactor> factors, std::span<const double> xs) {
  TailGridValues out{std::vector<double>(xs.size()), std::vector<double>(xs.size())};
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out.direct[i] = tail_direct_at(factors, xs[i]);
    out.bound[i] = tail_bound_at(factors, xs[i]);
  }
  return out;
}

}  // namespace parallel

}  // namespace moran
