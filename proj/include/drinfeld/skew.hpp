#pragma once

#include <string>
#include <vector>

#include "drinfeld/field.hpp"

namespace drinfeld {

/// Element of L{tau}: sum c_i tau^i with tau c = c^q tau.
class SkewPoly {
 public:
  SkewPoly() = default;
  explicit SkewPoly(Field level);
  SkewPoly(Field level, std::vector<FieldElement> coeffs);

  static SkewPoly constant(const FieldElement& c);
  /// c * tau^i.
  static SkewPoly monomial(const FieldElement& c, std::size_t i);

  const Field& level() const noexcept { return level_; }
  const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  FieldElement coeff(std::size_t i) const;
  FieldElement lead() const;

  SkewPoly& operator+=(const SkewPoly& rhs);
  SkewPoly& operator-=(const SkewPoly& rhs);
  /// Left scalar multiplication c * f.
  SkewPoly& operator*=(const FieldElement& c);

  friend SkewPoly operator+(SkewPoly a, const SkewPoly& b) { return a += b; }
  friend SkewPoly operator-(SkewPoly a, const SkewPoly& b) { return a -= b; }
  friend SkewPoly operator*(const FieldElement& c, SkewPoly f) { return f *= c; }
  friend bool operator==(const SkewPoly& a, const SkewPoly& b);

 private:
  void trim();

  Field level_;
  std::vector<FieldElement> coeffs_;
};

/// Composition product: (a tau^i)(b tau^j) = a b^(q^i) tau^(i+j).
SkewPoly skew_mul(const SkewPoly& f, const SkewPoly& g);
inline SkewPoly operator*(const SkewPoly& f, const SkewPoly& g) { return skew_mul(f, g); }

/// f(beta) = sum c_i beta^(q^i); beta may lie above f's coefficient level.
FieldElement skew_apply(const SkewPoly& f, const FieldElement& beta);

/// e.g. "tau^2 + tau + 1".
std::string to_string(const SkewPoly& f);

}  // namespace drinfeld
