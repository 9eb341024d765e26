#pragma once

#include <string>
#include <utility>
#include <vector>

#include "drinfeld/field.hpp"

namespace drinfeld {

/// Dense univariate polynomial over one tower level, little-endian.
/// Used for A = F_q[T] as well as for polynomials over extensions.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(Field level);
  /// Coefficients are embedded into `level`; trailing zeros are dropped.
  UniPoly(Field level, std::vector<FieldElement> coeffs);

  static UniPoly from_ints(const Field& level, const std::vector<std::int64_t>& coeffs);
  static UniPoly constant(const FieldElement& c);
  static UniPoly monomial(const FieldElement& c, std::size_t degree);
  /// The polynomial T - root.
  static UniPoly linear(const FieldElement& root);

  const Field& level() const noexcept { return level_; }
  const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const noexcept;
  FieldElement coeff(std::size_t i) const;
  FieldElement lead() const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& rhs);
  UniPoly& operator-=(const UniPoly& rhs);
  UniPoly& operator*=(const UniPoly& rhs);
  UniPoly& operator*=(const FieldElement& c);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const FieldElement& c) { return a *= c; }
  friend UniPoly operator*(const FieldElement& c, UniPoly a) { return a *= c; }
  friend bool operator==(const UniPoly& a, const UniPoly& b);

 private:
  void trim();

  Field level_;
  std::vector<FieldElement> coeffs_;
};

/// Euclidean division: a = quot * b + rem with deg rem < deg b.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator%(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero if both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// Evaluation at x, which may live at a higher level than the coefficients.
FieldElement eval(const UniPoly& f, const FieldElement& x);
UniPoly derivative(const UniPoly& f);
UniPoly make_monic(const UniPoly& f);
UniPoly embed(const UniPoly& f, const Field& to);
UniPoly restrict_to(const UniPoly& f, const Field& lower);
/// base^exponent mod modulus.
UniPoly powmod(const UniPoly& base, std::uint64_t exponent, const UniPoly& modulus);
/// g^(|L|^times) mod modulus, where L is the coefficient level.
UniPoly frobenius_powmod(const UniPoly& g, int times, const UniPoly& modulus);

bool is_irreducible(const UniPoly& f);
bool is_squarefree(const UniPoly& f);

/// All roots lying in `level`, with multiplicity, in element-index order.
std::vector<FieldElement> roots_in_field(const UniPoly& f, const Field& level);
/// Degrees of the irreducible factors of f (one entry per factor with
/// multiplicity), via distinct-degree splitting.
std::vector<int> factor_degrees(const UniPoly& f);
/// F_{Q^d}, d the lcm of the irreducible-factor degrees, Q = |level of f|.
Field splitting_level(const UniPoly& f);

/// Human form, highest degree first, e.g. "T^2 + T + 1".
std::string to_string(const UniPoly& f, const std::string& var = "T");

}  // namespace drinfeld
