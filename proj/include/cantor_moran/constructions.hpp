#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cantor_moran/moran_system.hpp"
#include "cantor_moran/rational.hpp"
#include "cantor_moran/series.hpp"

namespace moran {

/// g_0(n) = n^{1 + floor(ln n)}, g_gamma(n) = floor(n^{1/gamma - 1}) n for
/// 0 < gamma < 1, g_1(n) = 2n. gamma must lie in [0, 1]; n >= 2.
Integer g_gamma(const Rational& gamma, const Integer& n);
/// ln g_gamma(n) without materializing g_gamma(n).
double log_g_gamma(const Rational& gamma, std::uint64_t n);
/// floor(ln n), checked against e^m with a safety margin.
std::uint64_t floor_ln(std::uint64_t n);

/// Smallest n0 in [2, n_max] with g_gamma(n) <= n^{1 + ln n} for all n0 <= n <= n_max
/// (compared in log space); nullopt if it fails at n_max.
std::optional<std::uint64_t> empirical_n0(const Rational& gamma, std::uint64_t n_max);

/// l_1 = 0, l_j = (j!)^2 for j >= 2.
Integer default_block_schedule(std::size_t j);
/// l_j ln l_j / (l_{j+1} - l_j), with the l_1 = 0 term taken as 0.
double block_decay_quotient(std::size_t j);

/// b_k = (k+1)^2, N_k = 2 b_k, B_k = {0, ..., b_k - 2, b_k - 1 + N_1...N_k}.
MoranSystem build_example16_system();

/// b_1 = 2, b_k = k^2; N_k = g_alpha(b_k) on odd blocks (l_j, l_{j+1}] and
/// g_beta(b_k) on even ones; B_k = {0, ..., b_k - 2, b_k - 1 + N_1...N_k k!}.
/// Blocks follow default_block_schedule. Throws if not 0 <= alpha <= beta <= 1.
MoranSystem build_theorem17_system(const Rational& alpha, const Rational& beta);

/// b_k = b0 + slope (k - 1), N_k = n_factor b_k, B_k = {0, ..., b_k - 1}.
MoranSystem build_consecutive_system(std::int64_t b0 = 2, std::int64_t slope = 1,
                                     std::int64_t n_factor = 2);

/// The same (N, B) at every level, optionally with spectrum digits L.
MoranSystem build_homogeneous_system(const Integer& N, std::vector<Integer> B,
                                     std::optional<std::vector<Integer>> L = std::nullopt);

/// Finite system with B_k = {0, ..., b_k - 2, b_k - 1 + N_1...N_k k!}.
MoranSystem build_factorial_shift_system(std::vector<std::int64_t> b, std::vector<Integer> N);

/// sum_k max(B_k) / (N_1...N_k).
SeriesReport unbounded_support_report(const MoranSystem& system, std::size_t n);

}  // namespace moran
