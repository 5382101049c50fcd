#include "cantor_moran/convergence.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace moran {

namespace {

// |a| exactly when |a|^2 is the square of a rational, else an enclosure.
SeriesValue norm_of(const RationalPoint& p) {
  const Rational sq = p.norm_squared();
  if (mpz_perfect_square_p(sq.get_num_mpz_t()) && mpz_perfect_square_p(sq.get_den_mpz_t())) {
    Integer num, den;
    mpz_sqrt(num.get_mpz_t(), sq.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), sq.get_den_mpz_t());
    return SeriesValue::scalar(ratio(num, den));
  }
  return SeriesValue::scalar(sqrt_nonneg(Interval::enclose(sq)));
}

std::vector<RationalPoint> level_atoms(const AtomSequence& seq, std::size_t k) {
  auto pts = seq.at(k);
  if (pts.empty()) throw std::invalid_argument(seq.name + ": empty digit set at level " + std::to_string(k));
  return pts;
}

void check_nonnegative(const AtomSequence& seq, const std::vector<RationalPoint>& pts, std::size_t k) {
  for (const auto& p : pts)
    for (const auto& c : p.coords())
      if (sgn(c) < 0)
        throw std::domain_error(seq.name + ": level " + std::to_string(k) + " has digit " +
                                to_string(p) + " outside R_+^d");
}

}  // namespace

DiscreteMeasure truncate_measure(const DiscreteMeasure& mu, const Rational& r) {
  if (sgn(r) <= 0) throw std::invalid_argument("truncation radius must be positive");
  const Rational r2 = r * r;
  std::vector<DiscreteMeasure::Atom> atoms;
  Rational folded = 0;
  for (const auto& a : mu.atoms()) {
    if (a.point.norm_squared() <= r2)
      atoms.push_back(a);
    else
      folded += a.weight;
  }
  if (sgn(folded) > 0) atoms.push_back({RationalPoint::zero(mu.dimension()), folded});
  return DiscreteMeasure::from_atoms(std::move(atoms));
}

TruncationStats truncation_stats(const AtomSequence& seq, const Rational& r, std::size_t k) {
  if (sgn(r) <= 0) throw std::invalid_argument("truncation radius must be positive");
  const auto pts = level_atoms(seq, k);
  const Rational w(1, pts.size());
  const Rational r2 = r * r;
  TruncationStats s;
  s.k = k;
  s.tail_mass = 0;
  s.centroid.assign(seq.dimension, Rational(0));
  Rational moment = 0;
  for (const auto& p : pts) {
    const Rational n2 = p.norm_squared();
    if (n2 > r2) {
      s.tail_mass += w;
      continue;
    }
    for (std::size_t i = 0; i < seq.dimension; ++i) s.centroid[i] += w * p[i];
    moment += w * n2;
  }
  Rational c2 = 0;
  for (const auto& c : s.centroid) c2 += c * c;
  s.second_moment = moment - c2;
  return s;
}

std::array<SeriesReport, 3> three_series_report(const AtomSequence& seq, const Rational& r,
                                                std::size_t n) {
  if (n == 0) throw std::invalid_argument("horizon must be at least 1");
  std::vector<SeriesValue> tails, centroids, variances;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto s = truncation_stats(seq, r, k);
    tails.push_back(SeriesValue::scalar(s.tail_mass));
    centroids.push_back(SeriesValue::vector(s.centroid));
    variances.push_back(SeriesValue::scalar(s.second_moment));
  }
  return {
      make_series_report("three-series (i) tail mass", std::move(tails),
                         seq.bound_for(SeriesKind::three_tail, r)),
      make_series_report("three-series (ii) truncated centroid", std::move(centroids),
                         seq.bound_for(SeriesKind::three_centroid, r), true),
      make_series_report("three-series (iii) truncated variance", std::move(variances),
                         seq.bound_for(SeriesKind::three_variance, r)),
  };
}

SeriesReport thm11_report(const AtomSequence& seq, std::size_t n) {
  if (n == 0) throw std::invalid_argument("horizon must be at least 1");
  std::vector<SeriesValue> terms;
  std::vector<std::string> notes;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto pts = level_atoms(seq, k);
    check_nonnegative(seq, pts, k);
    if (pts.size() < 2 && notes.empty())
      notes.push_back("#A_k >= 2 fails at k = " + std::to_string(k));
    std::vector<SeriesValue> parts;
    bool exact = true;
    for (const auto& p : pts) {
      auto len = norm_of(p);
      exact = exact && len.exact.has_value();
      parts.push_back(std::move(len));
    }
    const Rational w(1, pts.size());
    if (exact) {
      Rational sum = 0;
      for (const auto& len : parts) {
        const Rational& x = (*len.exact)[0];
        sum += x / (1 + x);
      }
      terms.push_back(SeriesValue::scalar(Rational(sum * w)));
    } else {
      // t -> t/(1+t) is increasing, so endpoints map to endpoints.
      Interval sum = Interval::point(0);
      for (const auto& len : parts) {
        const Interval x = len.enclosure[0];
        sum = sum + div_nonneg(x, Interval{round_down(1 + x.lo), round_up(1 + x.hi)});
      }
      terms.push_back(SeriesValue::scalar(mul_nonneg(sum, Interval::enclose(w))));
    }
  }
  auto report = make_series_report("criterion: mean |a|/(1+|a|)", std::move(terms),
                                   seq.bound_for(SeriesKind::thm11));
  report.notes.insert(report.notes.begin(), notes.begin(), notes.end());
  return report;
}

SeriesReport cor12_report(const AtomSequence& seq, std::size_t n) {
  if (n == 0) throw std::invalid_argument("horizon must be at least 1");
  std::vector<SeriesValue> terms;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto pts = level_atoms(seq, k);
    std::optional<SeriesValue> best;
    for (const auto& p : pts) {
      auto len = norm_of(p);
      if (!best) {
        best = len;
      } else if (best->exact && len.exact) {
        if ((*len.exact)[0] > (*best->exact)[0]) best = len;
      } else {
        Interval a = best->enclosure[0], b = len.enclosure[0];
        best = SeriesValue::scalar(Interval{std::max(a.lo, b.lo), std::max(a.hi, b.hi)});
      }
    }
    terms.push_back(*best);
  }
  auto report = make_series_report("criterion: max |a|", std::move(terms),
                                   seq.bound_for(SeriesKind::cor12));
  if (!seq.cardinality_sup)
    report.notes.push_back("sup #A_k is not known to be finite; equivalence with weak convergence needs it");
  return report;
}

std::pair<SeriesReport, SeriesReport> thm13_report(const AtomSequence& seq, std::size_t n) {
  if (n == 0) throw std::invalid_argument("horizon must be at least 1");
  std::vector<SeriesValue> squares, means;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto pts = level_atoms(seq, k);
    Rational best = 0;
    std::vector<Rational> mean(seq.dimension, Rational(0));
    const Rational w(1, pts.size());
    for (const auto& p : pts) {
      best = std::max(best, p.norm_squared());
      for (std::size_t i = 0; i < seq.dimension; ++i) mean[i] += w * p[i];
    }
    squares.push_back(SeriesValue::scalar(best));
    means.push_back(SeriesValue::vector(mean));
  }
  return {make_series_report("criterion: max |a|^2", std::move(squares),
                             seq.bound_for(SeriesKind::thm13_square)),
          make_series_report("criterion: mean a (vector)", std::move(means),
                             seq.bound_for(SeriesKind::thm13_mean), true)};
}

}  // namespace moran
