#include "drinfeld/drinfeld_module.hpp"

namespace drinfeld {

DrinfeldModule::DrinfeldModule(Field K, FieldElement theta, std::vector<FieldElement> g)
    : K_(std::move(K)), theta_(std::move(theta)), g_(std::move(g)) {
  if (K_->height() < K_->base_height())
    raise(ErrorKind::LevelMismatch, "K must contain F_q");
  if (g_.empty()) raise(ErrorKind::InvalidArgument, "rank must be at least 1");
  if (g_.back().is_zero()) raise(ErrorKind::ZeroLeadingCoefficient, "g_r must be nonzero");
  fq_ = base_field(K_);
  s_ = degree_over(*K_, *fq_);
  theta_ = embed(theta_, K_);
  for (auto& c : g_) c = embed(c, K_);
  std::vector<FieldElement> coeffs{theta_};
  coeffs.insert(coeffs.end(), g_.begin(), g_.end());
  phi_T_ = SkewPoly(K_, std::move(coeffs));
  char_ = minimal_polynomial(theta_, fq_);
}

DrinfeldModule make_drinfeld(const Field& K, const FieldElement& theta, const std::vector<FieldElement>& g) {
  return DrinfeldModule(K, theta, g);
}

UniPoly minimal_polynomial(const FieldElement& x, const Field& over) {
  if (!is_sublevel(*over, *x.level())) raise(ErrorKind::LevelMismatch, "minimal polynomial over a level that is not below");
  const std::uint64_t Q = over->cardinality();
  UniPoly m = UniPoly::linear(x);
  FieldElement conj = x.pow(Q);
  while (!(conj == x)) {
    m *= UniPoly::linear(conj);
    conj = conj.pow(Q);
  }
  return restrict_to(m, over);
}

SkewPoly phi_image(const DrinfeldModule& phi, const UniPoly& a) {
  const UniPoly coeffs = restrict_to(a, phi.fq());
  SkewPoly acc(phi.base());
  for (int i = coeffs.degree(); i >= 0; --i) {
    acc = skew_mul(acc, phi.phi_T());
    acc += SkewPoly::constant(embed(coeffs.coeffs()[i], phi.base()));
  }
  return acc;
}

DrinfeldModule det_module(const DrinfeldModule& phi) {
  FieldElement c = phi.leading();
  if (phi.rank() % 2 == 0) c = -c;
  return DrinfeldModule(phi.base(), phi.theta(), {c});
}

}  // namespace drinfeld
