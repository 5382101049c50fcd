#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cantor_moran/moran_system.hpp"
#include "cantor_moran/rational.hpp"

namespace moran {

/// Levels (1-based, increasing) whose digit is the shifted one.
using PatchIndex = std::vector<std::size_t>;

struct SupportGroup {
  Integer offset;               // sum_{k in S} k!
  std::vector<Rational> atoms;  // sorted
  Rational mass;                // mu_n mass of the group
};

struct SupportPartition {
  std::size_t n = 0;
  std::map<PatchIndex, SupportGroup> groups;
  bool windows_ok = false;      // every atom in [offset, offset + 1)
  bool disjoint = false;        // distinct offsets, hence disjoint windows
  bool exhaustive = false;      // the groups hold exactly the atoms of mu_n
};

/// Checks B_k = {0, ..., b_k - 2, b_k - 1 + N_1...N_k * k!} for k <= n.
bool has_factorial_shift_form(const MoranSystem& system, std::size_t n);

/// Atoms of mu_n grouped by the levels that used the shifted digit. Groups are
/// recovered from each atom's integer part by greedy factorial decomposition and
/// cross-checked against the digit enumeration. std::domain_error if the system
/// is not of factorial-shift form.
SupportPartition support_partition(const MoranSystem& system, std::size_t n);

/// Greedy decomposition m = sum_{k in S} k! with distinct k <= n (nullopt if none).
std::optional<PatchIndex> factorial_decomposition(const Integer& m, std::size_t n);

/// (1/(b_1...b_l0)) prod_{k=l0+1}^{n} (1 - 1/b_k).
Rational patch_measure_formula(const MoranSystem& system, std::size_t l0, std::size_t n);

/// prod_{k in S} 1/b_k * prod_{k <= n, k not in S} (1 - 1/b_k).
Rational group_mass_formula(const MoranSystem& system, const PatchIndex& S, std::size_t n);

/// sum_{k<=n} k! < (n+1)! for every n up to `up_to`.
bool factorial_offsets_distinct(std::size_t up_to);

struct BlockValue {
  BlockEnd end;
  double value = 0.0;
};

struct DimensionEstimate {
  std::string kind;              // "hausdorff" or "packing"
  std::vector<double> q;         // index 0 is k = 1
  std::vector<double> tail_inf;  // min_{j >= k} q_j over the horizon
  std::vector<double> tail_sup;
  std::vector<BlockValue> block_values;  // hausdorff: odd block ends, packing: even ones
  double error_bound = 0.0;      // absolute error of each q_k from log-space rounding
};

/// hausdorff q_k = log(b_1...b_k) / (log(N_1...N_{k+1}) - log b_{k+1})
/// packing   q_k = log(b_1...b_k) / log(N_1...N_k)
/// for k = 1..K. Uses the rule's analytic log N_k. Unless `require_hypotheses`
/// is false, refuses systems without a summable bound on 1/b_k.
std::pair<DimensionEstimate, DimensionEstimate> dimension_quotients(const MoranSystem& system,
                                                                    std::size_t K,
                                                                    bool require_hypotheses = true);

/// Same from raw logs; log_b and log_N need K + 1 entries.
std::pair<DimensionEstimate, DimensionEstimate> dimension_quotients(std::span<const double> log_b,
                                                                    std::span<const double> log_N,
                                                                    std::size_t K);

struct StolzCesaroBounds {
  double lower = 0.0;      // min alpha_k / beta_k over the tail window
  double upper = 0.0;      // max over the window
  double quotient = 0.0;   // sum alpha / sum beta up to n
  double slack = 0.0;      // head contribution
  bool holds = false;      // lower - slack <= quotient <= upper + slack
};

/// Window is k = head+1..n (1-based); default head n/2.
StolzCesaroBounds stolz_cesaro_bounds(std::span<const double> alpha, std::span<const double> beta,
                                      std::size_t n, std::optional<std::size_t> head = std::nullopt);

}  // namespace moran
