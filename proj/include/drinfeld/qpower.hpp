#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "drinfeld/field.hpp"
#include "drinfeld/multipoly.hpp"

namespace drinfeld {

/// Sum of c * x_1^(q^j_1) ... x_r^(q^j_r), keyed by (j_1, ..., j_r) in
/// lexicographic order.
class QPowerPoly {
 public:
  using Terms = std::map<Exponents, FieldElement>;

  QPowerPoly(int vars, Field level);

  int vars() const noexcept { return vars_; }
  const Field& level() const noexcept { return level_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  FieldElement coefficient(const Exponents& frob) const;
  void add_term(const Exponents& frob, const FieldElement& c);
  /// Largest j_var occurring, or -1 for the zero polynomial.
  int max_frob(int var) const;

  FieldElement eval(std::span<const FieldElement> x) const;

  QPowerPoly& operator+=(const QPowerPoly& rhs);
  QPowerPoly& operator*=(const FieldElement& c);
  friend QPowerPoly operator*(const FieldElement& c, QPowerPoly p) { return p *= c; }
  friend bool operator==(const QPowerPoly& a, const QPowerPoly& b);

 private:
  int vars_;
  Field level_;
  Terms terms_;
};

/// det(x_i^(q^(j-1))) expanded: r! terms with coefficients +-1.
QPowerPoly moore_poly(int r, const Field& level);
/// The same determinant evaluated numerically.
FieldElement moore_eval(std::span<const FieldElement> beta);

/// Terms with j_var == frob, with that variable removed.
QPowerPoly coefficient_block(const QPowerPoly& p, int var, int frob);

/// Largest key first; q = 3 Moore: "2*x1^3*x2 + x1*x2^3", and x^(q^j) for
/// j > 1 prints as "x1^(3^2)".
std::string to_string(const QPowerPoly& p);

}  // namespace drinfeld
