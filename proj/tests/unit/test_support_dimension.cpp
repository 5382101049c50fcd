#include <cmath>
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

MoranSystem factorial(std::initializer_list<long> b, std::initializer_list<long> N) {
  return build_factorial_shift_system(std::vector<std::int64_t>(b.begin(), b.end()), ints(N));
}

}  // namespace

TEST_CASE("factorial_decomposition") {
  CHECK(factorial_decomposition(0, 5) == PatchIndex{});
  CHECK(factorial_decomposition(1, 5) == PatchIndex{1});
  CHECK(factorial_decomposition(3, 5) == PatchIndex{1, 2});
  CHECK(factorial_decomposition(9, 5) == PatchIndex{1, 2, 3});
  CHECK(factorial_decomposition(30, 5) == PatchIndex{3, 4});
  CHECK_FALSE(factorial_decomposition(4, 5));
  CHECK_FALSE(factorial_decomposition(6, 2));
  CHECK(factorial_offsets_distinct(30));
}

TEST_CASE("support_partition examples") {
  const auto one = support_partition(factorial({2}, {4}), 1);
  REQUIRE(one.groups.size() == 2);
  CHECK(one.groups.at({}).atoms == std::vector<Rational>{0});
  CHECK(one.groups.at({1}).atoms == std::vector<Rational>{Rational(5, 4)});
  CHECK(one.groups.at({1}).offset == 1);
  CHECK(one.windows_ok);
  CHECK(one.disjoint);
  CHECK(one.exhaustive);

  const auto two = support_partition(factorial({2, 2}, {4, 4}), 2);
  REQUIRE(two.groups.size() == 4);
  std::vector<Rational> all;
  std::vector<Integer> offsets;
  for (const auto& [S, g] : two.groups) {
    CHECK(g.atoms.size() == 1);
    all.insert(all.end(), g.atoms.begin(), g.atoms.end());
    offsets.push_back(g.offset);
  }
  std::sort(all.begin(), all.end());
  std::sort(offsets.begin(), offsets.end());
  CHECK(all == std::vector<Rational>{0, Rational(5, 4), Rational(33, 16), Rational(53, 16)});
  CHECK(offsets == ints({0, 1, 2, 3}));

  CHECK_THROWS_AS(support_partition(build_example16_system(), 2), std::domain_error);
}

TEST_CASE("support partitions of the corpus") {
  for (const auto& c : factorial_shift_corpus()) {
    CHECK(has_factorial_shift_form(c.system, c.levels));
    for (std::size_t n = 1; n <= c.levels; ++n) {
      const auto p = support_partition(c.system, n);
      CHECK_MESSAGE(p.windows_ok, c.label);
      CHECK(p.disjoint);
      CHECK(p.exhaustive);
      CHECK(p.groups.count({}) == 1);
      CHECK(p.groups.at({}).atoms.front() == 0);
      Rational total = 0;
      std::size_t atoms = 0;
      for (const auto& [S, g] : p.groups) {
        total += g.mass;
        atoms += g.atoms.size();
        CHECK(g.mass == group_mass_formula(c.system, S, n));
        CHECK(g.atoms.front() >= Rational(g.offset));
        CHECK(g.atoms.back() < Rational(g.offset + 1));
        if (n <= 4) CHECK(g.mass == oracle_group_mass(c.system, S, n));
      }
      CHECK(total == 1);
      CHECK(atoms == finite_level(c.system, n).size());
    }
  }
}

TEST_CASE("patch_measure_formula") {
  CHECK(patch_measure_formula(factorial({2}, {4}), 0, 1) == Rational(1, 2));
  const auto s = factorial({2, 3, 4}, {4, 6, 8});
  CHECK(patch_measure_formula(s, 1, 3) == Rational(1, 4));
  CHECK(patch_measure_formula(s, 3, 3) == Rational(1, 24));
  CHECK(patch_measure_formula(s, 0, 0) == 1);
  CHECK_THROWS_AS(patch_measure_formula(s, 3, 2), std::invalid_argument);
}

TEST_CASE("patch formula equals cylinder enumeration") {
  for (const auto& c : factorial_shift_corpus())
    for (std::size_t n = 1; n <= std::min<std::size_t>(c.levels, 5); ++n)
      for (std::size_t l0 = 0; l0 <= n; ++l0)
        CHECK_MESSAGE(patch_measure_formula(c.system, l0, n) == oracle_cylinder_mass(c.system, l0, n),
                      c.label << " l0=" << l0 << " n=" << n);
}

TEST_CASE("dimension quotients from raw logs") {
  std::vector<double> lb(201), lN(201);
  for (std::size_t k = 1; k <= 201; ++k) {
    lb[k - 1] = 2 * std::log(static_cast<double>(k));
    lN[k - 1] = std::log(2.0) + lb[k - 1];
  }
  const auto [h, p] = dimension_quotients(lb, lN, 200);
  CHECK(p.q.back() == doctest::Approx(0.9256715854917615).epsilon(1e-12));
  CHECK(h.q.back() == doctest::Approx(0.9253276947894903).epsilon(1e-12));
  CHECK(std::abs(p.q.back() - 1) < 0.1);
  for (std::size_t k = 0; k < 200; ++k) {
    CHECK(p.q[k] >= 0);
    CHECK(p.q[k] <= 1);
    CHECK(h.q[k] >= 0);
    CHECK(h.q[k] <= 1 + h.error_bound);
    CHECK(h.tail_inf[k] <= h.tail_sup[k]);
  }

  std::vector<double> cb(11, std::log(2.0)), cN(11, std::log(4.0));
  const auto [ch, cp] = dimension_quotients(cb, cN, 10);
  for (double q : cp.q) CHECK(q == doctest::Approx(0.5).epsilon(1e-15));
  // hausdorff: k log 2 / ((k + 1) log 4 - log 2) = k / (2k + 1)
  for (std::size_t k = 1; k <= 10; ++k) CHECK(ch.q[k - 1] == doctest::Approx(k / (2.0 * k + 1)).epsilon(1e-14));
  CHECK_THROWS(dimension_quotients(std::span<const double>(cb).first(10), cN, 10));
}

TEST_CASE("dimension quotients of rule systems") {
  CHECK_THROWS_AS(dimension_quotients(build_consecutive_system(2, 0, 2), 10), std::domain_error);
  const auto [ch, cp] = dimension_quotients(build_consecutive_system(2, 0, 2), 10, false);
  for (double q : cp.q) CHECK(q == doctest::Approx(0.5));

  const auto sys = build_theorem17_system(Rational(3, 10), Rational(7, 10));
  const auto [h, p] = dimension_quotients(sys, 14400);
  CHECK(h.q[575] == doctest::Approx(0.305169).epsilon(1e-5));
  CHECK(p.q[14399] == doctest::Approx(0.678071).epsilon(1e-5));
  for (const auto& v : h.block_values) CHECK(v.end.odd);
  for (const auto& v : p.block_values) CHECK_FALSE(v.end.odd);
  REQUIRE_FALSE(h.block_values.empty());
  CHECK(std::abs(h.block_values.back().value - 0.3) < 0.1);
  CHECK(std::abs(p.block_values.back().value - 0.7) < 0.1);
  for (std::size_t k = 0; k < h.q.size(); ++k) {
    CHECK(p.q[k] >= 0);
    CHECK(p.q[k] <= 1);
  }
}

TEST_CASE("equal parameters give one trend") {
  const auto sys = build_theorem17_system(Rational(1, 2), Rational(1, 2));
  const auto [h, p] = dimension_quotients(sys, 14400);
  CHECK(h.q[575] == doctest::Approx(0.499486).epsilon(1e-5));
  CHECK(p.q[14399] == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(std::abs(h.q.back() - p.q.back()) < 0.01);
}

TEST_CASE("stolz_cesaro_bounds") {
  std::vector<double> a(50, 3.0), b(50, 3.0);
  const auto eq = stolz_cesaro_bounds(a, b, 50);
  CHECK(eq.quotient == 1.0);
  CHECK(eq.holds);

  const std::size_t n = 100'000;
  std::vector<double> al(n), be(n);
  for (std::size_t k = 1; k <= n; ++k) {
    al[k - 1] = 2 * std::log(static_cast<double>(k));
    be[k - 1] = std::log(2.0) + al[k - 1];
  }
  const auto s = stolz_cesaro_bounds(al, be, n);
  CHECK(s.quotient == doctest::Approx(0.9680858704328503).epsilon(1e-10));
  CHECK(s.holds);
  double prev = 0;
  for (std::size_t m : {10, 100, 1000, 10000, 100000}) {
    const double q = stolz_cesaro_bounds(al, be, m).quotient;
    CHECK(q > prev);
    prev = q;
  }

  std::vector<double> osc(40), ones(40, 1.0);
  for (std::size_t k = 1; k <= 40; ++k) osc[k - 1] = k % 2 ? -1.0 : 1.0;
  const auto o = stolz_cesaro_bounds(osc, ones, 40);
  CHECK(o.lower == -1.0);
  CHECK(o.upper == 1.0);
  CHECK(o.quotient >= -1.0);
  CHECK(o.quotient <= 1.0);
  CHECK(o.holds);

  std::vector<double> bad = ones;
  bad[3] = 0.0;
  CHECK_THROWS_AS(stolz_cesaro_bounds(osc, bad, 40), std::invalid_argument);
}
