#pragma once

#include <vector>

#include "cantor_moran/cantor_moran.hpp"

namespace moran::testing {

/// Gram matrix of the exponentials e_l in L^2(delta_{N^-1 B}), built entry by
/// entry in long double without exact phase reduction; returns max |G - I|.
double oracle_hadamard_gram(const HadamardTriple& t);

/// Full #Lambda x #Lambda matrix of mu^(l - l'), each entry by direct summation.
double oracle_gram_matrix(const DiscreteMeasure& mu, const std::vector<Integer>& lambdas);

/// Three-series terms recomputed as moments of truncate_measure(uniform_measure(A_k), r).
TruncationStats oracle_truncation_stats(const std::vector<RationalPoint>& atoms, const Rational& r,
                                        std::size_t k);

/// mu_n mass of the cylinder: digits of levels 1..l0 fixed to the first digit,
/// digits of levels l0+1..n restricted to {0, ..., b_k - 2}. Brute-force enumeration.
Rational oracle_cylinder_mass(const MoranSystem& system, std::size_t l0, std::size_t n);

/// mu_n mass of the atoms whose shifted-digit levels are exactly S, by enumeration.
Rational oracle_group_mass(const MoranSystem& system, const PatchIndex& S, std::size_t n);

/// |m_B(xi)| summed naively in long double (phases reduced exactly for big digits).
double oracle_mask_modulus(const std::vector<Integer>& digits, const Rational& scale, double xi);

}  // namespace moran::testing
