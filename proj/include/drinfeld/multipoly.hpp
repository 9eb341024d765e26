#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drinfeld/field.hpp"
#include "drinfeld/unipoly.hpp"

namespace drinfeld {

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order with T_1 > ... > T_r, largest monomial first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse polynomial in T_1..T_r over one tower level.  Zero coefficients are
/// never stored, so the term map is a canonical form.
class MultiPoly {
 public:
  using Terms = std::map<Exponents, FieldElement, GrlexGreater>;

  MultiPoly(int vars, Field level);

  static MultiPoly constant(int vars, const FieldElement& c);
  /// T_{index+1} (0-based variable index).
  static MultiPoly variable(int vars, const Field& level, int index);
  /// T_{index+1} - c.
  static MultiPoly linear(int vars, int index, const FieldElement& c);
  /// f(T_{index+1}) for univariate f.
  static MultiPoly univariate(int vars, int index, const UniPoly& f);

  int vars() const noexcept { return vars_; }
  const Field& level() const noexcept { return level_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  FieldElement coefficient(const Exponents& e) const;
  /// Adds c * T^e.
  void add_term(const Exponents& e, const FieldElement& c);
  int degree_in(int index) const;
  int total_degree() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  MultiPoly& operator*=(const FieldElement& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const FieldElement& c) { return a *= c; }
  friend MultiPoly operator*(const FieldElement& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

 private:
  void promote(const Field& to);

  int vars_;
  Field level_;
  Terms terms_;
};

/// The ideal (a(T_1), ..., a(T_r)).
struct IdealI {
  UniPoly a;
  int vars;
};

/// Remainder modulo I: every variable degree drops below deg(a).  Each
/// generator is univariate in its own variable, so reducing each exponent
/// separately is exact.
MultiPoly normal_form(const MultiPoly& p, const IdealI& ideal);

/// Sends T_i to T_{sigma(i)} (0-based permutation).
MultiPoly permute_vars(const MultiPoly& p, const std::vector<int>& sigma);

/// Views a polynomial in T_1..T_s as one in T_1..T_vars (vars >= s).
MultiPoly widen(const MultiPoly& p, int vars);

MultiPoly embed(const MultiPoly& p, const Field& to);
MultiPoly restrict_to(const MultiPoly& p, const Field& lower);

/// e.g. "T1^2*T2 + 2*T1 + 1", in the canonical order.
std::string to_string(const MultiPoly& p, const std::string& var = "T");

}  // namespace drinfeld
