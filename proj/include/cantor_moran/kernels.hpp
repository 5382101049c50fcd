#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cantor_moran/mask.hpp"
#include "cantor_moran/measure.hpp"

namespace moran {

/// Indices (i < j) of a pair of frequencies whose difference is not a zero of mu^.
struct PairWitness {
  std::size_t i = 0;
  std::size_t j = 0;
};

/// One factor m_{B_{n+k}}(xi / (N_{n+1}...N_{n+k})) of the tail transform, with
/// its closed-form lower bound 1 - (b xi / Q)^2 pi^2 / 6 - 2c/b.
struct TailFactor {
  Mask mask;
  double b_over_Q = 0.0;
  double shifted_term = 0.0;  // 2c/b
};

struct TailGridValues {
  std::vector<double> direct;  // prod |m|
  std::vector<double> bound;   // prod of the factor bounds
};

/// The serial versions are the reference implementations; the parallel ones
/// must return identical results (bit-identical for the floating reductions,
/// which only use min/max).
namespace serial {

/// Lexicographically first (i, j), i < j, with mu^(lambda_i - lambda_j) != 0.
std::optional<PairWitness> first_nonorthogonal_pair(const ExactTransformPlan& plan,
                                                    std::span<const std::int64_t> lambdas);
/// max over i, j of |mu^(lambda_i - lambda_j) - [i == j]|.
double gram_deviation(const ExactTransformPlan& plan, std::span<const std::int64_t> lambdas);
/// max over xi of |sum_lambda |mu^(xi + lambda)|^2 - 1|.
double parseval_deviation(const ExactTransformPlan& plan, std::span<const std::int64_t> lambdas,
                          std::span<const double> xis);
std::vector<Complex> transform_grid(const DiscreteMeasure& mu, std::span<const double> xs);
/// |m(xi)| - bound(xi) at every grid point.
std::vector<double> mask_margins(const Mask& mask, std::int64_t b, std::int64_t c,
                                 std::span<const double> xs);
TailGridValues tail_grid(std::span<const TailFactor> factors, std::span<const double> xs);

}  // namespace serial

namespace parallel {

std::optional<PairWitness> first_nonorthogonal_pair(const ExactTransformPlan& plan,
                                                    std::span<const std::int64_t> lambdas);
double gram_deviation(const ExactTransformPlan& plan, std::span<const std::int64_t> lambdas);
double parseval_deviation(const ExactTransformPlan& plan, std::span<const std::int64_t> lambdas,
                          std::span<const double> xis);
std::vector<Complex> transform_grid(const DiscreteMeasure& mu, std::span<const double> xs);
std::vector<double> mask_margins(const Mask& mask, std::int64_t b, std::int64_t c,
                                 std::span<const double> xs);
TailGridValues tail_grid(std::span<const TailFactor> factors, std::span<const double> xs);

}  // namespace parallel

/// n evenly spaced points covering [lo, hi] (both ends included).
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

}  // namespace moran
