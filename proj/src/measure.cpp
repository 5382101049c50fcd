#include "cantor_moran/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cantor_moran/cyclotomic.hpp"
#include "cantor_moran/moran_system.hpp"

namespace moran {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit_phase(double turns) {
  // exp(-2 pi i t), with t already reduced to [0, 1) where possible.
  return {std::cos(kTwoPi * turns), -std::sin(kTwoPi * turns)};
}

void sort_and_merge(std::vector<DiscreteMeasure::Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.point < b.point; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (out > 0 && atoms[out - 1].point == atoms[i].point) {
      atoms[out - 1].weight += atoms[i].weight;
    } else {
      if (out != i) atoms[out] = std::move(atoms[i]);
      ++out;
    }
  }
  atoms.resize(out);
}

}  // namespace

DiscreteMeasure DiscreteMeasure::from_atoms(std::vector<Atom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("measure needs at least one atom");
  const std::size_t d = atoms.front().point.dimension();
  if (d == 0) throw std::invalid_argument("measure dimension must be positive");
  Rational total = 0;
  for (const auto& a : atoms) {
    if (a.point.dimension() != d) throw std::invalid_argument("atoms of mixed dimension");
    if (sgn(a.weight) <= 0) throw std::invalid_argument("atom weights must be positive");
    total += a.weight;
  }
  if (total != 1) throw std::invalid_argument("total mass is " + to_string(total) + ", not 1");
  sort_and_merge(atoms);
  DiscreteMeasure mu;
  mu.dimension_ = d;
  mu.atoms_ = std::move(atoms);
  return mu;
}

Rational DiscreteMeasure::total_mass() const {
  Rational total = 0;
  for (const auto& a : atoms_) total += a.weight;
  return total;
}

std::vector<Rational> DiscreteMeasure::points_1d() const {
  if (dimension_ != 1) throw std::invalid_argument("points_1d needs a one-dimensional measure");
  std::vector<Rational> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.point[0]);
  return out;
}

bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  if (a.dimension_ != b.dimension_ || a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t i = 0; i < a.atoms_.size(); ++i)
    if (!(a.atoms_[i].point == b.atoms_[i].point) || a.atoms_[i].weight != b.atoms_[i].weight)
      return false;
  return true;
}

DiscreteMeasure dirac(const RationalPoint& point) {
  return DiscreteMeasure::from_atoms({{point, Rational(1)}});
}

DiscreteMeasure uniform_measure(std::span<const RationalPoint> points) {
  if (points.empty()) throw std::invalid_argument("uniform measure on an empty set");
  const Rational w(1, points.size());
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(points.size());
  for (const auto& p : points) atoms.push_back({p, w});
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.point < b.point; });
  for (std::size_t i = 1; i < atoms.size(); ++i)
    if (atoms[i].point == atoms[i - 1].point)
      throw std::invalid_argument("duplicate point " + to_string(atoms[i].point));
  return DiscreteMeasure::from_atoms(std::move(atoms));
}

DiscreteMeasure uniform_measure(std::span<const Rational> points) {
  std::vector<RationalPoint> pts;
  pts.reserve(points.size());
  for (const auto& x : points) pts.push_back(RationalPoint::scalar(x));
  return uniform_measure(std::span<const RationalPoint>(pts));
}

DiscreteMeasure uniform_measure(std::span<const Integer> digits, const Rational& scale) {
  std::vector<RationalPoint> pts;
  pts.reserve(digits.size());
  for (const auto& b : digits) pts.push_back(RationalPoint::scalar(Rational(scale * b)));
  return uniform_measure(std::span<const RationalPoint>(pts));
}

DiscreteMeasure convolve(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.dimension() != nu.dimension())
    throw std::invalid_argument("convolution of measures with different dimensions");
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(mu.size() * nu.size());
  for (const auto& a : mu.atoms())
    for (const auto& b : nu.atoms())
      atoms.push_back({a.point + b.point, Rational(a.weight * b.weight)});
  return DiscreteMeasure::from_atoms(std::move(atoms));
}

Complex fourier_transform(const DiscreteMeasure& mu, const RationalPoint& xi) {
  if (xi.dimension() != mu.dimension())
    throw std::invalid_argument("frequency dimension does not match the measure");
  Complex sum = 0;
  for (const auto& a : mu.atoms()) {
    Rational dot = 0;
    for (std::size_t i = 0; i < xi.dimension(); ++i) dot += xi[i] * a.point[i];
    sum += to_double(a.weight) * unit_phase(to_double(fractional_part(dot)));
  }
  if (xi.is_zero()) return 1.0;
  return sum;
}

Complex fourier_transform(const DiscreteMeasure& mu, const Rational& xi) {
  return fourier_transform(mu, RationalPoint::scalar(xi));
}

Complex fourier_transform(const DiscreteMeasure& mu, std::span<const double> xi) {
  if (xi.size() != mu.dimension())
    throw std::invalid_argument("frequency dimension does not match the measure");
  if (std::all_of(xi.begin(), xi.end(), [](double x) { return x == 0.0; })) return 1.0;
  Complex sum = 0;
  for (const auto& a : mu.atoms()) {
    double dot = 0;
    for (std::size_t i = 0; i < xi.size(); ++i) dot += xi[i] * to_double(a.point[i]);
    sum += to_double(a.weight) * unit_phase(dot);
  }
  return sum;
}

Complex fourier_transform(const DiscreteMeasure& mu, double xi) {
  return fourier_transform(mu, std::span<const double>(&xi, 1));
}

ExactTransformPlan::ExactTransformPlan(const DiscreteMeasure& mu) {
  if (mu.dimension() != 1) throw std::invalid_argument("exact transform needs dimension 1");
  denominator_ = 1;
  Integer weight_lcm = 1;
  for (const auto& a : mu.atoms()) {
    mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), a.point[0].get_den_mpz_t());
    mpz_lcm(weight_lcm.get_mpz_t(), weight_lcm.get_mpz_t(), a.weight.get_den_mpz_t());
  }
  fast_ = fits_int64(denominator_);
  for (const auto& a : mu.atoms()) {
    Integer num = a.point[0].get_num() * (denominator_ / a.point[0].get_den());
    Integer count = a.weight.get_num() * (weight_lcm / a.weight.get_den());
    fast_ = fast_ && fits_int64(num) && count.fits_slong_p();
    numerators_.push_back(num);
    counts_.push_back(count);
    weights_.push_back(to_double(a.weight));
  }
  if (fast_) {
    denominator64_ = denominator_.get_si();
    for (const auto& n : numerators_) numerators64_.push_back(n.get_si());
  }
}

bool ExactTransformPlan::zero_from_phases(const Integer& modulus,
                                          std::vector<Integer> residues) const {
  Integer g = modulus;
  for (const auto& e : residues) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  const Integer q = modulus / g;
  if (q > kMaxRootOfUnityOrder)
    throw std::domain_error("reduced frequency denominator " + to_string(q) + " exceeds cap");
  std::vector<RootTerm> terms;
  terms.reserve(residues.size());
  for (std::size_t i = 0; i < residues.size(); ++i) {
    Integer e = residues[i] / g;
    terms.push_back({e.get_ui(), counts_[i]});
  }
  return vanishes_at_root_of_unity(q.get_ui(), terms);
}

bool ExactTransformPlan::zero_from_phases_fast(std::uint64_t modulus,
                                               std::vector<std::uint64_t>& residues) const {
  std::uint64_t g = modulus;
  for (auto e : residues) g = std::gcd(g, e);
  const std::uint64_t q = modulus / g;
  if (q > kMaxRootOfUnityOrder)
    throw std::domain_error("reduced frequency denominator " + std::to_string(q) + " exceeds cap");
  for (auto& e : residues) e /= g;
  std::vector<std::int64_t> coeffs(counts_.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = counts_[i].get_si();
  return vanishes_at_root_of_unity(q, residues, coeffs);
}

bool ExactTransformPlan::fourier_zero(std::int64_t xi) const {
  if (!fast_) return fourier_zero(Rational(xi));
  const auto d = static_cast<__int128>(denominator64_);
  std::vector<std::uint64_t> residues(numerators64_.size());
  for (std::size_t i = 0; i < residues.size(); ++i) {
    __int128 r = (static_cast<__int128>(xi) * numerators64_[i]) % d;
    if (r < 0) r += d;
    residues[i] = static_cast<std::uint64_t>(r);
  }
  return zero_from_phases_fast(static_cast<std::uint64_t>(denominator64_), residues);
}

bool ExactTransformPlan::fourier_zero(const Rational& xi) const {
  if (xi.get_den() == 1 && xi.get_num().fits_slong_p() && fast_)
    return fourier_zero(static_cast<std::int64_t>(xi.get_num().get_si()));
  const Integer modulus = xi.get_den() * denominator_;
  std::vector<Integer> residues(numerators_.size());
  for (std::size_t i = 0; i < residues.size(); ++i) {
    Integer prod = xi.get_num() * numerators_[i];
    mpz_fdiv_r(residues[i].get_mpz_t(), prod.get_mpz_t(), modulus.get_mpz_t());
  }
  return zero_from_phases(modulus, std::move(residues));
}

Complex ExactTransformPlan::fourier(std::int64_t xi) const {
  if (xi == 0) return 1.0;
  if (!fast_) return fourier(Rational(xi));
  const auto d = static_cast<__int128>(denominator64_);
  Complex sum = 0;
  for (std::size_t i = 0; i < numerators64_.size(); ++i) {
    __int128 r = (static_cast<__int128>(xi) * numerators64_[i]) % d;
    if (r < 0) r += d;
    sum += weights_[i] * unit_phase(static_cast<double>(r) / static_cast<double>(denominator64_));
  }
  return sum;
}

Complex ExactTransformPlan::fourier(const Rational& xi) const {
  if (sgn(xi) == 0) return 1.0;
  const Integer modulus = xi.get_den() * denominator_;
  Complex sum = 0;
  Integer prod, r;
  for (std::size_t i = 0; i < numerators_.size(); ++i) {
    prod = xi.get_num() * numerators_[i];
    mpz_fdiv_r(r.get_mpz_t(), prod.get_mpz_t(), modulus.get_mpz_t());
    sum += weights_[i] * unit_phase(to_double(ratio(r, modulus)));
  }
  return sum;
}

bool exact_fourier_zero(const DiscreteMeasure& mu, const Rational& xi) {
  return ExactTransformPlan(mu).fourier_zero(xi);
}

bool exact_fourier_zero(const DiscreteMeasure& mu, const RationalPoint& xi) {
  if (xi.dimension() != 1 || mu.dimension() != 1)
    throw std::invalid_argument("exact Fourier zero test is one-dimensional");
  return exact_fourier_zero(mu, xi[0]);
}

DiscreteMeasure finite_level(const MoranSystem& system, std::size_t n) {
  if (n == 0) throw std::invalid_argument("level must be at least 1");
  system.require_level(n);
  std::size_t expected = 1;
  Integer scale_den = 1;
  DiscreteMeasure mu = dirac(RationalPoint::zero(1));
  for (std::size_t k = 1; k <= n; ++k) {
    scale_den *= system.N(k);
    const auto digits = system.digits(k);
    expected *= digits.size();
    mu = convolve(mu, uniform_measure(digits, Rational(Integer(1), scale_den)));
  }
  if (mu.size() != expected)
    throw std::logic_error("level " + std::to_string(n) + " merged atoms: " +
                           std::to_string(mu.size()) + " distinct sums, expected " +
                           std::to_string(expected));
  return mu;
}

}  // namespace moran
