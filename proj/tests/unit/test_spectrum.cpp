#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "cantor_moran/cantor_moran.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace moran;
using namespace moran::testing;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::vector<std::int64_t> small(const std::vector<Integer>& xs) {
  std::vector<std::int64_t> out;
  for (const auto& x : xs) out.push_back(x.get_si());
  return out;
}

MoranSystem jorgensen_pedersen() { return build_homogeneous_system(4, ints({0, 2}), ints({0, 1})); }

const double pi2 = std::numbers::pi * std::numbers::pi;

}  // namespace

TEST_CASE("spectrum_level") {
  CHECK(spectrum_level(jorgensen_pedersen(), 2).lambdas == ints({0, 1, 4, 5}));
  CHECK(spectrum_level(jorgensen_pedersen(), 1).lambdas == ints({0, 1}));

  const auto ex = spectrum_level(build_example16_system(), 2);
  CHECK(ex.lambdas.size() == 36);
  CHECK(std::accumulate(ex.lambdas.begin(), ex.lambdas.end(), Integer(0)) == 2412);
  CHECK(ex.lambdas.back() == 134);
  CHECK(spectrum_level(build_example16_system(), 1).lambdas == ints({0, 2, 4, 6}));
  // every entry is reconstructed from its digits
  const std::vector<Integer> N = {8, 18};
  for (std::size_t i = 0; i < ex.lambdas.size(); ++i) CHECK(ex.digits[i][0] + N[0] * ex.digits[i][1] == ex.lambdas[i]);
}

TEST_CASE("spectrum_level reports collisions") {
  const std::vector<Integer> N = {2, 2};
  const std::vector<std::vector<Integer>> L = {ints({0, 2}), ints({0, 1})};
  try {
    spectrum_level(N, L);
    FAIL("no collision reported");
  } catch (const SpectrumCollision& e) {
    CHECK(e.lambda == 2);
    CHECK(e.first != e.second);
  }
  CHECK_THROWS_AS(spectrum_level(build_homogeneous_system(4, ints({0, 2})), 1), std::domain_error);
}

TEST_CASE("spectrum cardinality over the corpus") {
  for (const auto& c : nearly_consecutive_corpus()) {
    const std::size_t n = std::min<std::size_t>(c.levels, 3);
    const auto s = spectrum_level(c.system, n);
    Integer prod = 1;
    for (std::size_t k = 1; k <= n; ++k) prod *= c.system.b(k);
    CHECK_MESSAGE(Integer(static_cast<unsigned long>(s.lambdas.size())) == prod, c.label);
  }
}

TEST_CASE("verify_orthogonality") {
  const auto jp = jorgensen_pedersen();
  const auto mu = finite_level(jp, 2);
  const auto r = verify_orthogonality(mu, spectrum_level(jp, 2));
  CHECK(r.ok);
  CHECK_FALSE(r.witness);
  CHECK(r.pairs_tested == 6);

  const SpectrumLevel bad{2, ints({0, 16}), {}};
  const auto w = verify_orthogonality(mu, bad);
  CHECK_FALSE(w.ok);
  REQUIRE(w.witness);
  CHECK(w.witness->first == 0);
  CHECK(w.witness->second == 16);
  CHECK(w.pairs_tested == 1);
}

TEST_CASE("finite levels of nearly consecutive systems are spectral") {
  for (const auto& c : nearly_consecutive_corpus()) {
    for (std::size_t n = 1; n <= std::min<std::size_t>(c.levels, 3); ++n) {
      const auto mu = finite_level(c.system, n);
      const auto s = spectrum_level(c.system, n);
      CHECK_MESSAGE(verify_orthogonality(mu, s).ok, c.label << " n=" << n);
      CHECK(gram_deviation(mu, s) < 1e-9);
      if (s.lambdas.size() <= 200) CHECK(oracle_gram_matrix(mu, s.lambdas) < 1e-9);
    }
  }
  // level 1 restates the Hadamard property
  const auto t = triple_of_level(build_example16_system(), 1);
  CHECK(verify_orthogonality(uniform_measure(t.B, Rational(1, 8)), SpectrumLevel{1, t.L, {}}).ok);
}

TEST_CASE("verify_parseval") {
  const auto jp = jorgensen_pedersen();
  const auto mu = finite_level(jp, 2);
  const auto s = spectrum_level(jp, 2);
  const double zero = 0.0;
  CHECK(verify_parseval(mu, s, std::span<const double>(&zero, 1)) < 1e-9);
  const auto xis = seeded_frequencies(7, 100);
  CHECK(verify_parseval(mu, s, xis) < 1e-9);

  const SpectrumLevel missing{2, ints({0, 1, 4}), {}};
  CHECK_THROWS_AS(verify_parseval(mu, missing, xis), std::invalid_argument);
  const ExactTransformPlan plan(mu);
  const std::vector<double> at{0.3};
  const auto lm = small(missing.lambdas);
  CHECK(serial::parseval_deviation(plan, lm, at) == doctest::Approx(0.04920828341889927).epsilon(1e-12));
  CHECK(parallel::parseval_deviation(plan, lm, at) == serial::parseval_deviation(plan, lm, at));

  const auto ex = build_example16_system();
  CHECK(verify_parseval(finite_level(ex, 2), spectrum_level(ex, 2), seeded_frequencies(1, 50)) < 1e-9);
}

TEST_CASE("seeded_frequencies") {
  const auto a = seeded_frequencies(42, 20), b = seeded_frequencies(42, 20), c = seeded_frequencies(43, 20);
  CHECK(a == b);
  CHECK(a != c);
  for (double x : a) {
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("mask_lower_bound") {
  CHECK(mask_lower_bound(5, 0, 0.0) == 1.0);
  CHECK(mask_lower_bound(3, 1, 0.0) == doctest::Approx(1.0 / 3.0));
  CHECK(mask_lower_bound(2, 0, 0.5) == doctest::Approx(-0.6449340668482264).epsilon(1e-14));
  CHECK(mask_lower_bound(2, 0, 0.5) == doctest::Approx(1 - pi2 / 6));
  CHECK_THROWS(mask_lower_bound(1, 0, 0.0));
  CHECK_THROWS(mask_lower_bound(3, 4, 0.0));
}

TEST_CASE("mask bound holds on the grid for every corpus level") {
  const auto xs = uniform_grid(-2.0 / 3.0, 2.0 / 3.0, 10'000);
  for (const auto& c : nearly_consecutive_corpus())
    for (std::size_t k = 1; k <= c.levels; ++k) {
      const auto level = c.system.level(k);
      const Mask unscaled(level.B);
      const auto margins = serial::mask_margins(unscaled, level.b, count_shifted(level.b, level.B), xs);
      double worst = 0.0;
      for (double v : margins) worst = std::min(worst, v);
      CHECK_MESSAGE(worst >= -1e-12, c.label << " k=" << k);
      CHECK(parallel::mask_margins(unscaled, level.b, count_shifted(level.b, level.B), xs) == margins);
    }
}

TEST_CASE("mask agrees with the naive oracle") {
  const auto xs = uniform_grid(-3.0, 3.0, 301);
  for (const auto& c : nearly_consecutive_corpus())
    for (std::size_t k = 1; k <= c.levels; ++k) {
      const auto digits = c.system.digits(k);
      const Rational scale = Rational(1) / Rational(c.system.prefix_product(k));
      const Mask m(digits, scale);
      for (double x : xs) CHECK(m.modulus(x) == doctest::Approx(oracle_mask_modulus(digits, scale, x)).epsilon(1e-9));
    }
}

TEST_CASE("k_x policy") {
  CHECK(k_x(0.0) == 0);
  CHECK(k_x(0.5) == 0);
  CHECK(k_x(0.5000001) == -1);
  CHECK(k_x(0.99) == -1);
  for (int i = 0; i < 1000; ++i) {
    const double x = i / 1000.0;
    for (int j = -99; j <= 99; ++j) {
      const double y = j / 600.0;  // |y| < 1/6
      CHECK(std::abs(x + y + k_x(x)) < 2.0 / 3.0);
    }
  }
}

TEST_CASE("equi_positivity_certificate") {
  CHECK(n0_threshold() == doctest::Approx(0.0466959702896771).epsilon(1e-14));

  const auto cons = equi_positivity_certificate(build_consecutive_system(), 10, 15, 1000);
  CHECK(cons.epsilon == doctest::Approx(0.053700808057630576).epsilon(1e-12));
  CHECK(cons.S == 0.0);
  CHECK(cons.n0 == 0);
  CHECK(cons.delta == doctest::Approx(1.0 / 6.0));
  CHECK(cons.valid);
  CHECK(cons.grid_min >= cons.epsilon);

  const auto ex = equi_positivity_certificate(build_example16_system(), 10, 15, 1000);
  CHECK(ex.S >= pi2 / 6 - 1);
  CHECK(ex.S < pi2 / 6 - 1 + 1e-9);
  CHECK(ex.epsilon <= 0.0011205544953653);
  CHECK(ex.epsilon == doctest::Approx(0.0011205544953653).epsilon(1e-6));
  CHECK(ex.n0 == 5);
  CHECK(ex.valid);
  CHECK(ex.direct_min >= ex.epsilon);

  CHECK_THROWS_AS(equi_positivity_certificate(build_homogeneous_system(4, ints({0, 2})), 3), std::domain_error);
}

TEST_CASE("n0 reflects a large first ratio") {
  // example16 has 2 c_1 / b_1 = 1/2, above the threshold
  const auto ex = build_example16_system();
  CHECK(2.0 / static_cast<double>(ex.b(1)) > n0_threshold());
  CHECK(equi_positivity_certificate(ex, 4, 10, 200).n0 >= 1);
  // a finite list carries no tail bound, so the ratio series stays UNKNOWN
  const auto sys = explicit_system({{4, 2, ints({0, 5})}, {4, 2, ints({0, 1})}, {4, 2, ints({0, 1})}});
  const auto nc = check_nearly_consecutive(sys, 3);
  CHECK(nc.all_residues_ok());
  CHECK(nc.ratio_series.verdict == Verdict::unknown);
  CHECK_THROWS_AS(equi_positivity_certificate(sys, 3), std::domain_error);
}

TEST_CASE("tail_lower_bound_check") {
  const std::vector<double> zero{0.0};
  const auto cons = tail_lower_bound_check(build_consecutive_system(), 0, 15, zero);
  double prod = 1.0;
  for (int k = 1; k <= 15; ++k) prod *= 1 - 2 * pi2 / 27 * std::pow(4.0, 1 - k);
  // pointwise factor bounds dominate the grid-uniform product
  CHECK(cons.bound[0] >= prod * cons.tail_factor);
  CHECK(prod * cons.tail_factor >= std::exp(-8 * pi2 / 27));
  CHECK(cons.direct[0] == doctest::Approx(1.0));
  CHECK(cons.direct_dominates);

  const auto ex = build_example16_system();
  const auto xs = uniform_grid(-2.0 / 3.0, 2.0 / 3.0, 1000);
  const auto cert = equi_positivity_certificate(ex, 10, 15, 1000);
  const auto chk = tail_lower_bound_check(ex, cert.n0, 6, xs);
  CHECK(chk.direct_dominates);
  CHECK(chk.bound_min >= cert.epsilon);
  CHECK(chk.direct_min >= cert.epsilon);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(chk.direct[i] + 1e-12 >= chk.bound[i]);
}

TEST_CASE("nu_tail_truncated") {
  const auto jp = jorgensen_pedersen();
  CHECK(nu_tail_truncated(jp, 1, 1) == uniform_measure(std::vector<Rational>{0, Rational(1, 2)}));
  const auto ex = build_example16_system();
  CHECK(nu_tail_truncated(ex, 2, 1) == uniform_measure(ex.digits(3), Rational(1) / Rational(ex.N(3))));
  const auto cons = build_consecutive_system();
  CHECK(fourier_transform(nu_tail_truncated(cons, 2, 3), Rational(0)) == Complex(1.0));
  CHECK_THROWS_AS(nu_tail_truncated(explicit_system({{4, 2, ints({0, 1})}}), 1, 1), std::out_of_range);
}

TEST_CASE("serial and parallel kernels agree") {
  const auto ex = build_example16_system();
  const auto mu = finite_level(ex, 2);
  const ExactTransformPlan plan(mu);
  const auto lam = small(spectrum_level(ex, 2).lambdas);
  CHECK(serial::gram_deviation(plan, lam) == parallel::gram_deviation(plan, lam));
  CHECK_FALSE(serial::first_nonorthogonal_pair(plan, lam));
  CHECK_FALSE(parallel::first_nonorthogonal_pair(plan, lam));

  std::vector<std::int64_t> broken = lam;
  broken.push_back(lam[5] + 8 * 18);
  broken.push_back(lam[2] + 8 * 18);
  const auto s = serial::first_nonorthogonal_pair(plan, broken);
  const auto p = parallel::first_nonorthogonal_pair(plan, broken);
  REQUIRE(s);
  REQUIRE(p);
  CHECK(s->i == p->i);
  CHECK(s->j == p->j);
  CHECK(s->i == 2);

  const auto xis = seeded_frequencies(3, 64);
  CHECK(serial::parseval_deviation(plan, lam, xis) == parallel::parseval_deviation(plan, lam, xis));

  const auto xs = uniform_grid(-1.0, 1.0, 513);
  CHECK(serial::transform_grid(mu, xs) == parallel::transform_grid(mu, xs));

  std::vector<TailFactor> factors;
  Integer Q = 1;
  for (std::size_t k = 3; k <= 8; ++k) {
    Q *= ex.N(k);
    const double b = static_cast<double>(ex.b(k));
    factors.push_back({Mask(ex.digits(k), Rational(1) / Rational(Q)), b / to_double(Q), 2.0 / b});
  }
  const auto a = serial::tail_grid(factors, xs), c = parallel::tail_grid(factors, xs);
  CHECK(a.direct == c.direct);
  CHECK(a.bound == c.bound);
}

TEST_CASE("uniform_grid") {
  const auto g = uniform_grid(-1.0, 1.0, 5);
  CHECK(g == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK_THROWS(uniform_grid(0.0, 1.0, 1));
}
