#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cantor_moran/rational.hpp"

namespace moran {

/// Orders above this are rejected by the exact vanishing test.
inline constexpr std::uint64_t kMaxRootOfUnityOrder = 1'000'000;

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
///
/// Computed as (x^m - 1) divided by Phi_e for every proper divisor e of m,
/// recursively, and memoized process-wide. Thread-safe.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint64_t m);

/// Product of the distinct primes dividing q (rad(1) = 1).
std::uint64_t radical(std::uint64_t q);

struct RootTerm {
  std::uint64_t exponent = 0;  // reduced mod q by the caller
  Integer coefficient;
};

/// Exact test of sum_i c_i * zeta_q^{e_i} == 0 for a primitive q-th root of unity.
///
/// Equivalent to Phi_q dividing P(x) = sum_i c_i x^{e_i}. Uses
/// Phi_q(x) = Phi_rad(q)(x^{q/rad(q)}): exponents are split by their residue
/// mod q/rad(q) and each slice is reduced modulo Phi_rad(q) separately.
bool vanishes_at_root_of_unity(std::uint64_t q, std::span<const RootTerm> terms);
bool vanishes_at_root_of_unity(std::uint64_t q, std::span<const std::uint64_t> exponents,
                               std::span<const std::int64_t> coefficients);

}  // namespace moran
