#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "cantor_moran/measure.hpp"
#include "cantor_moran/series.hpp"

namespace moran {

/// Statistics of the r-truncation of delta_{A_k}.
struct TruncationStats {
  std::size_t k = 0;
  Rational tail_mass;             // mass outside the closed ball B(r)
  std::vector<Rational> centroid; // c(mu_{k,r})
  Rational second_moment;         // M(mu_{k,r}) = int |x|^2 - |c|^2
};

/// mu_r: atoms outside the closed ball B(r) are moved to the origin.
DiscreteMeasure truncate_measure(const DiscreteMeasure& mu, const Rational& r);

TruncationStats truncation_stats(const AtomSequence& seq, const Rational& r, std::size_t k);

/// The three series of the three-series test: tail masses, truncated
/// centroids (vector series) and truncated variances, for k = 1..n.
std::array<SeriesReport, 3> three_series_report(const AtomSequence& seq, const Rational& r,
                                                std::size_t n);

/// sum_k (1/#A_k) sum_{a in A_k} |a|/(1+|a|). Digits must lie in R_+^d.
SeriesReport thm11_report(const AtomSequence& seq, std::size_t n);

/// sum_k max{|a| : a in A_k}; a note records whether sup #A_k is finite.
SeriesReport cor12_report(const AtomSequence& seq, std::size_t n);

/// sum_k max|a|^2 and the vector series sum_k (1/#A_k) sum a.
std::pair<SeriesReport, SeriesReport> thm13_report(const AtomSequence& seq, std::size_t n);

}  // namespace moran
