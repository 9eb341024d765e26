#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/matrix.hpp"
#include "drinfeld/unipoly.hpp"

namespace drinfeld {

/// phi[a] inside an explicit finite level containing it.
struct TorsionModule {
  UniPoly a;
  DrinfeldModule module;
  Field level;
  /// Degree m of `level` over K.
  int extension_degree = 1;
  std::vector<FieldElement> fq_basis;
  std::optional<std::vector<FieldElement>> a_basis;

  std::size_t dimension() const noexcept { return fq_basis.size(); }
  /// q^dimension; throws InvalidArgument when that does not fit.
  std::uint64_t size() const;
  /// Every point, enumerated by F_q-combinations of fq_basis with the first
  /// basis coefficient varying fastest (index i <-> base-q digits of i).
  std::vector<FieldElement> points() const;
  FieldElement point(std::uint64_t index) const;
  FieldElement random_point(std::mt19937_64& rng) const;
  bool contains(const FieldElement& x) const;
};

/// Basis of {x in L : f(x) = 0} over F_q for an F_q-linear skew polynomial f.
std::vector<FieldElement> skew_kernel(const SkewPoly& f, const Field& L);

/// Searches m = 1, 2, ..., cap for the first F_{q^{s m}} holding all of phi[a].
TorsionModule torsion(const DrinfeldModule& phi, const UniPoly& a, int cap = 64);

/// phi[a] intersected with a given level L containing K.
std::vector<FieldElement> torsion_basis_in_level(const DrinfeldModule& phi, const UniPoly& a, const Field& L);

/// F_q-rank of the A-submodule generated by the given points (phi_{T^k}
/// images for k < deg a span it).
std::size_t generated_rank(const TorsionModule& t, const std::vector<FieldElement>& gens);

/// Fills t.a_basis with r points freely generating phi[a] over A/aA.
/// Candidates are random; `tries` bounds the search.
const std::vector<FieldElement>& torsion_a_basis(TorsionModule& t, std::mt19937_64& rng, int tries = 1000);

/// sigma^k with sigma : x -> x^(q^s), the Frobenius of K.
struct GaloisElement {
  std::uint64_t k = 0;
  FieldElement apply(const FieldElement& x, const DrinfeldModule& phi) const;
};

/// Matrices over A/aA, entries reduced modulo a.
struct AModMatrix {
  UniPoly a;
  std::size_t n = 0;
  std::vector<UniPoly> entries;  // row-major

  const UniPoly& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  static AModMatrix identity(const UniPoly& a, std::size_t n);
  friend bool operator==(const AModMatrix& x, const AModMatrix& y);
};

AModMatrix amod_mul(const AModMatrix& x, const AModMatrix& y);
/// Leibniz expansion, reduced modulo a.
UniPoly amod_det(const AModMatrix& m);

/// Exhaustive table point -> (b_1, ..., b_r) in (A/aA)^r for an A/aA-basis.
class ACoordinates {
 public:
  ACoordinates(const TorsionModule& t, const std::vector<FieldElement>& basis);
  /// Throws PointNotInModule for a point outside the module.
  const std::vector<UniPoly>& operator()(const FieldElement& x) const;
  std::size_t size() const noexcept { return table_.size(); }

 private:
  Field level_;
  std::unordered_map<FieldElement, std::vector<UniPoly>, FieldElementHash> table_;
};

/// Column j holds the coordinates of sigma(beta_j).
AModMatrix galois_action_matrix(const TorsionModule& t, const GaloisElement& sigma, const ACoordinates& coords,
                                const std::vector<FieldElement>& basis);

/// All residues mod a, i.e. polynomials over F_q of degree < deg a, in
/// base-q index order.
std::vector<UniPoly> residues(const UniPoly& a);

}  // namespace drinfeld
