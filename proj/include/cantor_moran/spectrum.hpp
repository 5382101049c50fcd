#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cantor_moran/kernels.hpp"
#include "cantor_moran/measure.hpp"
#include "cantor_moran/moran_system.hpp"

namespace moran {

/// Lambda_n = L_1 + N_1 L_2 + ... + N_1...N_{n-1} L_n, sorted, with the digit
/// decomposition (l_1, ..., l_n) of every entry.
struct SpectrumLevel {
  std::size_t n = 0;
  std::vector<Integer> lambdas;
  std::vector<std::vector<Integer>> digits;
};

/// Two digit decompositions producing the same lambda.
class SpectrumCollision : public std::runtime_error {
 public:
  SpectrumCollision(Integer lambda, std::vector<Integer> first, std::vector<Integer> second);
  Integer lambda;
  std::vector<Integer> first, second;
};

SpectrumLevel spectrum_level(std::span<const Integer> N, const std::vector<std::vector<Integer>>& L);

/// Uses the rule's own L_k when it has them (checked to form a Hadamard triple
/// with (N_k, B_k)) and canonical_L otherwise, which requires the residue test.
SpectrumLevel spectrum_level(const MoranSystem& system, std::size_t n);

struct OrthogonalityResult {
  bool ok = false;
  std::optional<std::pair<Integer, Integer>> witness;
  std::size_t pairs_tested = 0;  // pairs up to and including the witness
};

OrthogonalityResult verify_orthogonality(const DiscreteMeasure& mu, const SpectrumLevel& spectrum);
/// max |mu^(l - l') - [l == l']| over all pairs.
double gram_deviation(const DiscreteMeasure& mu, const SpectrumLevel& spectrum);

/// max_j |Q(xi_j) - 1|, Q(xi) = sum_lambda |mu^(xi + lambda)|^2.
/// Throws std::invalid_argument when #Lambda != #atoms.
double verify_parseval(const DiscreteMeasure& mu, const SpectrumLevel& spectrum,
                       std::span<const double> xis);

/// m points of [0, 1) from a seeded mt19937_64 (53-bit mantissas).
std::vector<double> seeded_frequencies(std::uint64_t seed, std::size_t m);

/// nu_{>n} truncated to m factors: delta_{N_{n+1}^{-1} B_{n+1}} * ... * delta_{(N_{n+1}...N_{n+m})^{-1} B_{n+m}}.
DiscreteMeasure nu_tail_truncated(const MoranSystem& system, std::size_t n, std::size_t m);

inline constexpr double kEquiPositivityDelta = 1.0 / 6.0;

/// 7/9 - 2 pi^2 / 27.
double n0_threshold();

/// k_x: 0 on [0, 1/2], -1 on (1/2, 1).
int k_x(double x);

struct TailCheck {
  std::size_t n = 0;
  std::size_t factors = 0;
  std::vector<double> xs;
  std::vector<double> direct;   // prod_{k<=K} |m_{B_{n+k}}(xi / N_{n+1}...N_{n+k})|
  std::vector<double> bound;    // factor bounds times the exponential tail bound
  double tail_factor = 1.0;     // the exponential bound on factors k > K
  double bound_min = 0.0;
  double direct_min = 0.0;
  bool direct_dominates = false;  // direct >= bound at every grid point
};

struct EquiPositivityCertificate {
  double epsilon = 0.0;
  double delta = kEquiPositivityDelta;
  std::size_t n0 = 0;
  double partial_sum_ckbk = 0.0;
  double tail_ckbk = 0.0;       // rule bound on sum_{k > horizon} c_k/b_k
  double S = 0.0;               // upper bound on the full series
  std::size_t horizon = 0;
  double grid_min = 0.0;
  double direct_min = 0.0;
  bool valid = false;           // grid_min >= epsilon and direct dominates
  std::string tail_argument;
};

/// Fails with std::domain_error when sum c_k/b_k has no CONVERGES verdict or
/// the residue test fails.
EquiPositivityCertificate equi_positivity_certificate(const MoranSystem& system, std::size_t horizon,
                                                      std::size_t factors = 15,
                                                      std::size_t grid_points = 10'000);

TailCheck tail_lower_bound_check(const MoranSystem& system, std::size_t n, std::size_t K,
                                 std::span<const double> xs);

}  // namespace moran
