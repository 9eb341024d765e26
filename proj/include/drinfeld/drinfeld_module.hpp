#pragma once

#include <vector>

#include "drinfeld/field.hpp"
#include "drinfeld/skew.hpp"
#include "drinfeld/unipoly.hpp"

namespace drinfeld {

/// A Drinfeld module over a finite field K = F_{q^s}, determined by
/// phi_T = theta + g_1 tau + ... + g_r tau^r with g_r != 0.
class DrinfeldModule {
 public:
  DrinfeldModule(Field K, FieldElement theta, std::vector<FieldElement> g);

  const Field& base() const noexcept { return K_; }
  const Field& fq() const noexcept { return fq_; }
  int rank() const noexcept { return static_cast<int>(g_.size()); }
  const FieldElement& theta() const noexcept { return theta_; }
  const std::vector<FieldElement>& g() const noexcept { return g_; }
  const FieldElement& leading() const { return g_.back(); }
  const SkewPoly& phi_T() const noexcept { return phi_T_; }
  /// Monic generator of ker(gamma): the minimal polynomial of theta over F_q.
  const UniPoly& characteristic() const noexcept { return char_; }
  /// [K : F_q].
  int base_degree() const noexcept { return s_; }

 private:
  Field K_;
  Field fq_;
  FieldElement theta_;
  std::vector<FieldElement> g_;
  SkewPoly phi_T_;
  UniPoly char_;
  int s_ = 1;
};

DrinfeldModule make_drinfeld(const Field& K, const FieldElement& theta, const std::vector<FieldElement>& g);

/// Minimal polynomial of x over the lower level `over`.
UniPoly minimal_polynomial(const FieldElement& x, const Field& over);

/// phi_a for a in F_q[T]; the tau^0 coefficient is a(theta).
SkewPoly phi_image(const DrinfeldModule& phi, const UniPoly& a);

/// The rank-1 module psi_T = theta + (-1)^(r-1) g_r tau.
DrinfeldModule det_module(const DrinfeldModule& phi);

}  // namespace drinfeld
