#include "cantor_moran/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/zeta.hpp>

namespace moran {

namespace {

// Relative slack when comparing exact terms against floating closed forms.
constexpr double kBoundSlack = 1e-12;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

Interval square(Interval a) {
  if (a.lo >= 0) return {round_down(a.lo * a.lo), round_up(a.hi * a.hi)};
  if (a.hi <= 0) return {round_down(a.hi * a.hi), round_up(a.lo * a.lo)};
  const double m = std::max(-a.lo, a.hi);
  return {0.0, round_up(m * m)};
}

// Upper bound on sum_{k>n} (k+shift)^-p, p > 1.
double power_tail(double power, double shift, std::size_t n) {
  const double start = static_cast<double>(n) + shift;
  if (start <= 0) throw std::domain_error("power tail needs n + shift > 0");
  const bool integral_shift = shift >= 0 && std::floor(shift) == shift;
  const bool integral_power = std::floor(power) == power && power >= 2;
  if (integral_shift && integral_power && start <= 1e6) {
    // zeta(p) - sum_{m <= n+shift} m^-p, summed smallest first.
    long double partial = 0;
    for (auto m = static_cast<long>(start); m >= 1; --m)
      partial += std::pow(static_cast<long double>(m), -static_cast<long double>(power));
    const double exact = boost::math::zeta(power) - static_cast<double>(partial);
    return std::max(0.0, exact) * (1 + kBoundSlack) + 1e-15;
  }
  return std::pow(start, 1 - power) / (power - 1) * (1 + kBoundSlack);
}

bool term_at_most(const SeriesValue& t, double bound) {
  const double limit = bound * (1 + kBoundSlack);
  if (t.exact && t.dimension() == 1) return abs((*t.exact)[0]) <= Rational(limit);
  return t.norm().hi <= limit;
}

bool term_at_least(const SeriesValue& t, double bound) {
  const double limit = bound * (1 - kBoundSlack);
  if (t.exact && t.dimension() == 1) return (*t.exact)[0] >= Rational(limit);
  if (t.dimension() == 1) return t.enclosure[0].lo >= limit;
  return t.norm().lo >= limit;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converges: return "CONVERGES";
    case Verdict::diverges: return "DIVERGES";
    case Verdict::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::thm11: return "mean |a|/(1+|a|)";
    case SeriesKind::cor12: return "max |a|";
    case SeriesKind::thm13_square: return "max |a|^2";
    case SeriesKind::thm13_mean: return "mean a";
    case SeriesKind::three_tail: return "tail mass";
    case SeriesKind::three_centroid: return "truncated centroid";
    case SeriesKind::three_variance: return "truncated variance";
    case SeriesKind::shifted_ratio: return "c_k/b_k";
    case SeriesKind::unbounded_support: return "max(B_k)/(N_1...N_k)";
    case SeriesKind::inverse_b: return "1/b_k";
  }
  return "?";
}

TailBound TailBound::geometric_bound(double coefficient, double ratio, std::string derivation,
                                     std::size_t from) {
  TailBound b;
  b.from = from;
  b.geometric.push_back({coefficient, ratio});
  b.derivation = std::move(derivation);
  return b;
}

TailBound TailBound::power_bound(double coefficient, double power, double shift,
                                 std::string derivation, std::size_t from) {
  TailBound b;
  b.from = from;
  b.powers.push_back({coefficient, power, shift});
  b.derivation = std::move(derivation);
  return b;
}

TailBound TailBound::zero_bound(std::string derivation) {
  return geometric_bound(0.0, 0.0, std::move(derivation));
}

TailBound TailBound::below(double floor_value, std::string derivation, std::size_t from) {
  if (!(floor_value > 0)) throw std::invalid_argument("lower bound must be positive");
  TailBound b;
  b.kind = Kind::bounded_below;
  b.from = from;
  b.floor_value = floor_value;
  b.derivation = std::move(derivation);
  return b;
}

TailBound TailBound::power_below(double coefficient, double power, double shift,
                                 std::string derivation, std::size_t from) {
  TailBound b = power_bound(coefficient, power, shift, std::move(derivation), from);
  b.kind = Kind::minorized;
  return b;
}

double TailBound::value_at(std::size_t k) const {
  if (kind == Kind::bounded_below) return floor_value;
  double v = 0;
  const auto kd = static_cast<double>(k);
  for (const auto& g : geometric)
    if (g.coefficient != 0) v += g.coefficient * std::pow(g.ratio, kd);
  for (const auto& p : powers)
    if (p.coefficient != 0) v += p.coefficient * std::pow(kd + p.shift, -p.power);
  return v;
}

bool TailBound::summable() const {
  if (kind != Kind::dominated) return false;
  for (const auto& g : geometric)
    if (g.coefficient != 0 && !(g.ratio >= 0 && g.ratio < 1)) return false;
  for (const auto& p : powers)
    if (p.coefficient != 0 && !(p.power > 1)) return false;
  return true;
}

double TailBound::tail_after(std::size_t n) const {
  if (!summable()) throw std::logic_error("tail of a non-summable bound");
  double t = 0;
  for (const auto& g : geometric)
    if (g.coefficient != 0 && g.ratio != 0)
      t += g.coefficient * std::pow(g.ratio, static_cast<double>(n + 1)) / (1 - g.ratio) *
           (1 + kBoundSlack);
  for (const auto& p : powers)
    if (p.coefficient != 0) t += p.coefficient * power_tail(p.power, p.shift, n);
  return t;
}

TailBound TailBound::plus(const TailBound& other) const {
  if (kind != Kind::dominated || other.kind != Kind::dominated)
    throw std::logic_error("only dominating bounds can be added");
  TailBound b = *this;
  b.from = std::max(from, other.from);
  b.geometric.insert(b.geometric.end(), other.geometric.begin(), other.geometric.end());
  b.powers.insert(b.powers.end(), other.powers.begin(), other.powers.end());
  b.derivation = derivation + " + " + other.derivation;
  return b;
}

TailBound TailBound::scaled(double factor) const {
  TailBound b = *this;
  for (auto& g : b.geometric) g.coefficient *= factor;
  for (auto& p : b.powers) p.coefficient *= factor;
  b.floor_value *= factor;
  b.derivation = fmt(factor) + " * (" + derivation + ")";
  return b;
}

SeriesValue SeriesValue::scalar(const Rational& x) {
  return {{Interval::enclose(x)}, std::vector<Rational>{x}};
}

SeriesValue SeriesValue::scalar(Interval x) { return {{x}, std::nullopt}; }

SeriesValue SeriesValue::vector(const std::vector<Rational>& xs) {
  SeriesValue v;
  for (const auto& x : xs) v.enclosure.push_back(Interval::enclose(x));
  v.exact = xs;
  return v;
}

Interval SeriesValue::norm() const {
  if (exact && dimension() == 1) return Interval::enclose(abs((*exact)[0]));
  Interval s = Interval::point(0);
  for (const auto& c : enclosure) s = s + square(c);
  return sqrt_nonneg(s);
}

SeriesValue operator+(const SeriesValue& a, const SeriesValue& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("series value dimension mismatch");
  SeriesValue out;
  for (std::size_t i = 0; i < a.dimension(); ++i) out.enclosure.push_back(a.enclosure[i] + b.enclosure[i]);
  if (a.exact && b.exact) {
    std::vector<Rational> xs(a.dimension());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = (*a.exact)[i] + (*b.exact)[i];
    // Exact sums give tight enclosures again.
    for (std::size_t i = 0; i < xs.size(); ++i) out.enclosure[i] = Interval::enclose(xs[i]);
    out.exact = std::move(xs);
  }
  return out;
}

SeriesReport make_series_report(std::string name, std::vector<SeriesValue> terms,
                                const std::optional<TailBound>& bound, bool vector_valued) {
  SeriesReport r;
  r.name = std::move(name);
  r.vector_valued = vector_valued;
  r.terms = std::move(terms);
  const std::size_t n = r.terms.size();
  for (std::size_t i = 0; i < n; ++i)
    r.partial_sums.push_back(i == 0 ? r.terms[0] : r.partial_sums.back() + r.terms[i]);

  if (vector_valued && n > 0) {
    const auto& last = r.partial_sums.back();
    r.cauchy_tail.assign(last.dimension(), 0.0);
    for (std::size_t m = n / 2; m + 1 < n; ++m)
      for (std::size_t c = 0; c < last.dimension(); ++c)
        r.cauchy_tail[c] = std::max(
            r.cauchy_tail[c], std::abs(last.enclosure[c].mid() - r.partial_sums[m].enclosure[c].mid()));
  }

  if (!bound) {
    r.tail_argument = "no closed-form tail bound available; finite partial sums decide nothing";
    return r;
  }
  const TailBound& b = *bound;
  const std::size_t first = std::max<std::size_t>(b.from, 1);
  if (n < first) {
    r.tail_argument = b.derivation;
    r.notes.push_back("horizon ends before the bound applies (k >= " + std::to_string(b.from) + ")");
    return r;
  }
  for (std::size_t k = first; k <= n; ++k) {
    const auto& t = r.terms[k - 1];
    const bool ok = b.kind == TailBound::Kind::dominated ? term_at_most(t, b.value_at(k))
                                                         : term_at_least(t, b.value_at(k));
    if (!ok) {
      r.tail_argument = b.derivation;
      r.notes.push_back("declared bound fails at k = " + std::to_string(k));
      return r;
    }
  }

  switch (b.kind) {
    case TailBound::Kind::dominated: {
      if (!b.summable()) {
        r.tail_argument = b.derivation + " (not summable)";
        return r;
      }
      const double tail = b.tail_after(n);
      r.verdict = Verdict::converges;
      r.tail_argument = b.derivation + " for k >= " + std::to_string(b.from) +
                        "; remainder after k = " + std::to_string(n) + " is at most " + fmt(tail);
      if (!vector_valued && n > 0) {
        const auto& s = r.partial_sums.back().enclosure[0];
        const bool nonneg = std::all_of(r.terms.begin(), r.terms.end(),
                                        [](const SeriesValue& t) { return t.enclosure[0].lo >= 0; });
        r.total = Interval{nonneg ? s.lo : round_down(s.lo - tail), tail > 0 ? round_up(s.hi + tail) : s.hi};
      }
      break;
    }
    case TailBound::Kind::bounded_below:
      r.verdict = Verdict::diverges;
      r.witness = n;
      r.tail_argument = b.derivation + " for k >= " + std::to_string(b.from) +
                        ": terms stay >= " + fmt(b.floor_value) + " and do not tend to 0";
      break;
    case TailBound::Kind::minorized: {
      const bool nonneg = std::all_of(r.terms.begin(), r.terms.end(), [](const SeriesValue& t) {
        return t.dimension() == 1 && t.enclosure[0].lo >= 0;
      });
      const bool divergent_power =
          b.powers.size() == 1 && b.powers[0].power <= 1 && b.powers[0].coefficient > 0;
      if (vector_valued || !nonneg || !divergent_power) {
        r.tail_argument = b.derivation + " (minorant does not force divergence)";
        return r;
      }
      r.verdict = Verdict::diverges;
      r.witness = n;
      r.tail_argument = b.derivation + " for k >= " + std::to_string(b.from) +
                        ": comparison with a divergent p-series (p = " + fmt(b.powers[0].power) + ")";
      break;
    }
  }
  return r;
}

std::vector<RationalPoint> AtomSequence::at(std::size_t k) const {
  if (k == 0) throw std::out_of_range("levels are numbered from 1");
  if (level_count && k > *level_count)
    throw std::out_of_range(name + ": level " + std::to_string(k) + " not available (have " +
                            std::to_string(*level_count) + ")");
  auto pts = atoms(k);
  for (const auto& p : pts)
    if (p.dimension() != dimension) throw std::invalid_argument(name + ": atom of wrong dimension");
  return pts;
}

std::optional<TailBound> AtomSequence::bound_for(SeriesKind kind, const Rational& r) const {
  if (!declared_bound || level_count) return std::nullopt;
  return declared_bound(kind, r);
}

AtomSequence explicit_atom_sequence(std::string name, std::vector<std::vector<RationalPoint>> sets) {
  if (sets.empty()) throw std::invalid_argument("explicit sequence needs at least one set");
  AtomSequence seq;
  seq.name = std::move(name);
  seq.dimension = sets.front().empty() ? 1 : sets.front().front().dimension();
  seq.level_count = sets.size();
  std::size_t sup = 0;
  for (const auto& s : sets) sup = std::max(sup, s.size());
  seq.cardinality_sup = sup;
  seq.atoms = [sets = std::move(sets)](std::size_t k) { return sets.at(k - 1); };
  return seq;
}

}  // namespace moran
