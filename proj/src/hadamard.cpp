#include "cantor_moran/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <stdexcept>

#include "cantor_moran/measure.hpp"

namespace moran {

namespace {

void validate(const HadamardTriple& t) {
  if (t.B.size() != t.L.size())
    throw std::invalid_argument("#B = " + std::to_string(t.B.size()) + " but #L = " +
                                std::to_string(t.L.size()));
  if (t.B.size() < 2) throw std::invalid_argument("a Hadamard triple needs #B >= 2");
  if (abs(t.N) < 2) throw std::invalid_argument("|N| must be at least 2");
  if (std::set<Integer>(t.B.begin(), t.B.end()).size() != t.B.size())
    throw std::invalid_argument("B has repeated entries");
  if (std::set<Integer>(t.L.begin(), t.L.end()).size() != t.L.size())
    throw std::invalid_argument("L has repeated entries");
}

}  // namespace

bool check_hadamard(const HadamardTriple& t) {
  validate(t);
  const ExactTransformPlan plan(uniform_measure(t.L, Rational(1)));
  for (std::size_t i = 0; i < t.B.size(); ++i)
    for (std::size_t j = i + 1; j < t.B.size(); ++j) {
      Rational xi(t.B[i] - t.B[j], t.N);
      xi.canonicalize();
      if (!plan.fourier_zero(xi)) return false;
    }
  return true;
}

double hadamard_gram_deviation(const HadamardTriple& t) {
  validate(t);
  const std::size_t m = t.B.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<Complex> h(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Rational phase = fractional_part(ratio(t.B[i] * t.L[j], t.N));
      h[i * m + j] = scale * std::polar(1.0, -2.0 * std::numbers::pi * to_double(phase));
    }
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Complex s = 0;
      for (std::size_t l = 0; l < m; ++l) s += h[i * m + l] * std::conj(h[j * m + l]);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

std::vector<Integer> canonical_L(std::int64_t b, const Integer& N) {
  if (b < 2) throw std::invalid_argument("b must be at least 2");
  if (N < b) throw std::invalid_argument("N must be at least b");
  if (!mpz_divisible_ui_p(N.get_mpz_t(), static_cast<unsigned long>(b)))
    throw std::invalid_argument(std::to_string(b) + " does not divide " + to_string(N));
  const Integer step = N / b;
  std::vector<Integer> out;
  out.reserve(static_cast<std::size_t>(b));
  for (std::int64_t i = 0; i < b; ++i) out.push_back(step * i);
  return out;
}

bool residues_consecutive(const Integer& N, std::int64_t b, const std::vector<Integer>& digits) {
  if (digits.size() != static_cast<std::size_t>(b)) return false;
  std::vector<Integer> r(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i)
    mpz_fdiv_r(r[i].get_mpz_t(), digits[i].get_mpz_t(), N.get_mpz_t());
  std::sort(r.begin(), r.end());
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != static_cast<long>(i)) return false;
  return true;
}

bool NearlyConsecutiveReport::all_residues_ok() const {
  return std::all_of(residues_ok.begin(), residues_ok.end(), [](bool x) { return x; });
}

NearlyConsecutiveReport check_nearly_consecutive(const MoranSystem& system, std::size_t n) {
  if (n == 0) throw std::invalid_argument("horizon must be at least 1");
  system.require_level(n);
  NearlyConsecutiveReport report;
  std::vector<SeriesValue> terms;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto level = system.level(k);
    report.residues_ok.push_back(residues_consecutive(level.N, level.b, level.B));
    const std::int64_t c = count_shifted(level.b, level.B);
    report.c.push_back(c);
    report.b.push_back(level.b);
    terms.push_back(SeriesValue::scalar(ratio(c, level.b)));
  }
  report.ratio_series = make_series_report("c_k/b_k", std::move(terms),
                                           as_atom_sequence(system).bound_for(SeriesKind::shifted_ratio));
  return report;
}

HadamardTriple triple_of_level(const MoranSystem& system, std::size_t k) {
  auto level = system.level(k);
  if (!residues_consecutive(level.N, level.b, level.B))
    throw std::domain_error(system.name() + ": level " + std::to_string(k) +
                            " digits are not congruent to {0..b_k-1} mod N_k");
  auto L = canonical_L(level.b, level.N);
  return {std::move(level.N), std::move(level.B), std::move(L)};
}

}  // namespace moran
