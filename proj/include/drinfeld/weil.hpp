#pragma once

#include <span>
#include <vector>

#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/fa.hpp"
#include "drinfeld/qpower.hpp"

namespace drinfeld {

/// Contraction of a coefficient tensor f in K[T_1..T_s] against Moore
/// determinants: sum_i f_i M(phi_{T^i_1}(x_1), ..., phi_{T^i_s}(x_s)).
QPowerPoly weil_polynomial_from(const DrinfeldModule& phi, const MultiPoly& f);

/// W_a for monic a, built from the chain-sum f_a in rank(phi) variables.
QPowerPoly weil_polynomial(const DrinfeldModule& phi, const UniPoly& a);
/// The same contraction using f_a in `arity` variables (the Moore
/// determinant shrinks accordingly; phi is unchanged).
QPowerPoly weil_polynomial(const DrinfeldModule& phi, const UniPoly& a, int arity);

/// Evaluation map for one (phi, a).  The coefficient tensor defaults to f_a
/// but may be replaced, which the fault-injection runs rely on.
class WeilPairing {
 public:
  /// Images phi_{T^k}(beta)^(q^j), indexed [k][j].
  using Prepared = std::vector<std::vector<FieldElement>>;

  WeilPairing(const DrinfeldModule& phi, const UniPoly& a);
  WeilPairing(const DrinfeldModule& phi, const UniPoly& a, MultiPoly f);

  const DrinfeldModule& module() const noexcept { return phi_; }
  const UniPoly& a() const noexcept { return a_; }
  const MultiPoly& f() const noexcept { return f_; }
  int arity() const noexcept { return f_.vars(); }

  Prepared prepare(const FieldElement& beta) const;
  FieldElement value(std::span<const Prepared* const> slots) const;
  /// Unchecked contraction.
  FieldElement value(std::span<const FieldElement> beta) const;
  /// Rejects points outside phi[a] with NotTorsionPoint and confirms that the
  /// result is killed by psi_a.
  FieldElement evaluate(std::span<const FieldElement> beta) const;

 private:
  DrinfeldModule phi_;
  UniPoly a_;
  MultiPoly f_;
  int max_power_ = 0;
};

FieldElement weil_evaluate(const DrinfeldModule& phi, const UniPoly& a, std::span<const FieldElement> beta);

/// W_b for b = c a with c in F_q^x and a monic, as c^(r-1) W_a.
FieldElement weil_nonmonic(const DrinfeldModule& phi, const UniPoly& b, std::span<const FieldElement> beta);
/// Same rule with W_a already prepared; c is the leading coefficient of b.
FieldElement weil_nonmonic(const WeilPairing& monic, const FieldElement& c, std::span<const FieldElement> beta);

}  // namespace drinfeld
