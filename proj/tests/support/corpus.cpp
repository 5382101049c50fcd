#include "corpus.hpp"

namespace moran::testing {

namespace {

Rational pow2(std::size_t k) { return Rational(Integer(1), Integer(1) << static_cast<mp_bitcnt_t>(k)); }

Rational inv_pow(unsigned base, std::size_t k) {
  Integer d;
  mpz_ui_pow_ui(d.get_mpz_t(), base, k);
  return Rational(Integer(1), d);
}

AtomSequence rule(std::string name, std::size_t dim, std::optional<std::size_t> card,
                  std::function<std::vector<RationalPoint>(std::size_t)> atoms,
                  std::function<std::optional<TailBound>(SeriesKind, const Rational&)> bound) {
  AtomSequence s;
  s.name = std::move(name);
  s.dimension = dim;
  s.cardinality_sup = card;
  s.atoms = std::move(atoms);
  s.declared_bound = std::move(bound);
  return s;
}

RationalPoint pt(const Rational& x) { return RationalPoint::scalar(x); }

}  // namespace

std::vector<CorpusSystem> nearly_consecutive_corpus() {
  return {
      {"consecutive b_k = k+1, N_k = 2b_k", build_consecutive_system(2, 1, 2), 4},
      {"consecutive b_k = 3, N_k = 6", build_consecutive_system(3, 0, 2), 4},
      {"consecutive b_k = k+2, N_k = b_k", build_consecutive_system(3, 1, 1), 4},
      {"example16", build_example16_system(), 3},
      {"explicit", explicit_system({{6, 3, {0, 1, 8}}, {4, 2, {0, 5}}, {10, 5, {0, 1, 2, 13, 4}}}), 3},
  };
}

std::vector<CorpusSystem> factorial_shift_corpus() {
  return {
      {"b = (2), N = (4)", build_factorial_shift_system({2}, {4}), 1},
      {"b = (2,2), N = (4,4)", build_factorial_shift_system({2, 2}, {4, 4}), 2},
      {"b = (2,3,4), N = (4,6,8)", build_factorial_shift_system({2, 3, 4}, {4, 6, 8}), 3},
      {"b = (3,2,2,3), N = (3,4,2,9)", build_factorial_shift_system({3, 2, 2, 3}, {3, 4, 2, 9}), 4},
      {"theorem17 (3/10, 7/10)", build_theorem17_system(Rational(3, 10), Rational(7, 10)), 3},
  };
}

AtomSequence seq_zero_one() {
  return rule("{0,1}", 1, 2, [](std::size_t) { return std::vector{pt(0), pt(1)}; },
              [](SeriesKind kind, const Rational&) -> std::optional<TailBound> {
                switch (kind) {
                  case SeriesKind::thm11: return TailBound::below(0.25, "term = 1/4");
                  case SeriesKind::cor12:
                  case SeriesKind::thm13_square: return TailBound::below(1.0, "max = 1");
                  case SeriesKind::thm13_mean:
                  case SeriesKind::three_centroid: return TailBound::below(0.5, "term = 1/2");
                  case SeriesKind::three_tail: return TailBound::zero_bound("atoms inside B(1)");
                  case SeriesKind::three_variance: return TailBound::below(0.25, "variance 1/4");
                  default: return std::nullopt;
                }
              });
}

AtomSequence seq_dyadic() {
  return rule("{0,2^-k}", 1, 2, [](std::size_t k) { return std::vector{pt(0), pt(pow2(k))}; },
              [](SeriesKind kind, const Rational&) -> std::optional<TailBound> {
                switch (kind) {
                  case SeriesKind::thm11:
                  case SeriesKind::thm13_mean:
                  case SeriesKind::three_centroid: return TailBound::geometric_bound(0.5, 0.5, "2^-k/2");
                  case SeriesKind::cor12: return TailBound::geometric_bound(1.0, 0.5, "2^-k");
                  case SeriesKind::thm13_square: return TailBound::geometric_bound(1.0, 0.25, "4^-k");
                  case SeriesKind::three_tail: return TailBound::zero_bound("atoms inside B(1)");
                  case SeriesKind::three_variance: return TailBound::geometric_bound(0.25, 0.25, "4^-k/4");
                  default: return std::nullopt;
                }
              });
}

AtomSequence seq_zero_k() {
  return rule("{0,k}", 1, 2, [](std::size_t k) { return std::vector{pt(0), pt(Rational(k))}; },
              [](SeriesKind kind, const Rational& r) -> std::optional<TailBound> {
                if (kind == SeriesKind::three_tail && r < 2)
                  return TailBound::below(0.5, "k > r from k = 2", 2);
                if (kind == SeriesKind::cor12) return TailBound::below(1.0, "max = k");
                return std::nullopt;
              });
}

AtomSequence seq_harmonic() {
  return rule("{0,1/k}", 1, 2, [](std::size_t k) { return std::vector{pt(0), pt(ratio(1, k))}; },
              [](SeriesKind kind, const Rational&) -> std::optional<TailBound> {
                if (kind == SeriesKind::cor12) return TailBound::power_below(1.0, 1.0, 0.0, "max = 1/k");
                if (kind == SeriesKind::thm11)
                  return TailBound::power_below(0.25, 1.0, 0.0, "(1/2)(1/k)/(1+1/k) >= 1/(4k)");
                if (kind == SeriesKind::thm13_square) return TailBound::power_bound(1.0, 2.0, 0.0, "1/k^2");
                return std::nullopt;
              });
}

AtomSequence seq_origin() {
  return rule("{0}", 1, 1, [](std::size_t) { return std::vector{pt(0)}; },
              [](SeriesKind, const Rational&) -> std::optional<TailBound> {
                return TailBound::zero_bound("all atoms at the origin");
              });
}

AtomSequence seq_symmetric_dyadic() {
  return rule("{-2^-k,2^-k}", 1, 2, [](std::size_t k) { return std::vector{pt(-pow2(k)), pt(pow2(k))}; },
              [](SeriesKind kind, const Rational&) -> std::optional<TailBound> {
                if (kind == SeriesKind::thm13_square) return TailBound::geometric_bound(1.0, 0.25, "4^-k");
                if (kind == SeriesKind::thm13_mean) return TailBound::zero_bound("symmetric digits");
                return std::nullopt;
              });
}

AtomSequence seq_mixed() {
  return rule("{-1/k,1/k,3*4^-k}", 1, 3,
              [](std::size_t k) {
                return std::vector{pt(ratio(-1, k)), pt(ratio(1, k)), pt(3 * inv_pow(4, k))};
              },
              [](SeriesKind kind, const Rational&) -> std::optional<TailBound> {
                if (kind == SeriesKind::thm13_square)
                  return TailBound::power_bound(1.0, 2.0, 0.0, "1/k^2")
                      .plus(TailBound::geometric_bound(9.0, 1.0 / 16.0, "9*16^-k"));
                if (kind == SeriesKind::thm13_mean) return TailBound::geometric_bound(1.0, 0.25, "4^-k");
                return std::nullopt;
              });
}

AtomSequence seq_planar() {
  return rule("{(0,0),(2^-k,3^-k)}", 2, 2,
              [](std::size_t k) {
                return std::vector{RationalPoint{0, 0}, RationalPoint{pow2(k), inv_pow(3, k)}};
              },
              [](SeriesKind kind, const Rational&) -> std::optional<TailBound> {
                if (kind == SeriesKind::thm11 || kind == SeriesKind::cor12)
                  return TailBound::geometric_bound(std::sqrt(2.0), 0.5, "|a| <= sqrt(2) 2^-k");
                if (kind == SeriesKind::thm13_mean)
                  return TailBound::geometric_bound(std::sqrt(2.0) / 2, 0.5, "|mean| <= 2^-k/sqrt(2)");
                return std::nullopt;
              });
}

}  // namespace moran::testing
