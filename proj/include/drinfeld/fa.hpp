#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/multipoly.hpp"
#include "drinfeld/unipoly.hpp"

namespace drinfeld {

enum class FaRoute { ChainSum, Recursive };

std::string to_string(FaRoute route);

/// f_a in F_q[T_1..T_r] with a record of how it was obtained.
struct FaPoly {
  MultiPoly poly;
  UniPoly a;
  int rank = 1;
  FaRoute route = FaRoute::ChainSum;
  /// Roots of a, at the splitting level, in the labelling that was used.
  std::vector<FieldElement> root_order;
};

/// Roots of a at splitting_level(a), with multiplicity, by element index.
std::vector<FieldElement> ordered_roots(const UniPoly& a);

/// binomial(n + r - 2, r - 1).
std::uint64_t chain_count(int n, int r);

/// Sum over chains 1 = i_0 <= ... <= i_r = n, uncoerced (over `level`).
MultiPoly f_from_roots_chain(const std::vector<FieldElement>& roots, int r, const Field& level);
/// Recursion eliminating T_r and peeling roots[0] first.
MultiPoly f_from_roots_recursive(const std::vector<FieldElement>& roots, int r, const Field& level);

/// Moves every coefficient down to `fq`, raising RationalityFailure otherwise.
MultiPoly coerce_rational(const MultiPoly& p, const Field& fq);

FaPoly f_chain_sum(const UniPoly& a, int r);
FaPoly f_recursive(const UniPoly& a, int r);
/// Chain sum with the root list relabelled: root k of the sorted list goes
/// to position sigma[k].
FaPoly f_root_order_variant(const UniPoly& a, int r, const std::vector<int>& sigma);

}  // namespace drinfeld
