#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cantor_moran/moran_system.hpp"
#include "cantor_moran/rational.hpp"
#include "cantor_moran/series.hpp"

namespace moran {

/// (N, B, L) in dimension one.
struct HadamardTriple {
  Integer N;
  std::vector<Integer> B;
  std::vector<Integer> L;
};

/// Exact unitarity test of [ e^{-2 pi i b l / N} / sqrt(#B) ]: for every pair
/// b != b' the sum over L of e^{-2 pi i (b - b') l / N} must vanish.
/// Throws std::invalid_argument if #B != #L, #B < 2, |N| < 2 or a set repeats.
bool check_hadamard(const HadamardTriple& t);

/// max |H H* - I| entrywise, in floating point.
double hadamard_gram_deviation(const HadamardTriple& t);

/// {0, N/b, 2N/b, ..., (b-1)N/b}.
std::vector<Integer> canonical_L(std::int64_t b, const Integer& N);

struct NearlyConsecutiveReport {
  std::vector<bool> residues_ok;   // B_k mod N_k == {0..b_k-1} as multisets
  std::vector<std::int64_t> c;     // c_k
  std::vector<std::int64_t> b;     // b_k
  SeriesReport ratio_series;       // sum c_k / b_k
  bool all_residues_ok() const;
};

NearlyConsecutiveReport check_nearly_consecutive(const MoranSystem& system, std::size_t n);

bool residues_consecutive(const Integer& N, std::int64_t b, const std::vector<Integer>& digits);

/// (N_k, B_k, canonical_L(b_k, N_k)); std::domain_error if the residue test fails.
HadamardTriple triple_of_level(const MoranSystem& system, std::size_t k);

}  // namespace moran
