#include "drinfeld/weil.hpp"

#include <algorithm>
#include <numeric>

#include "drinfeld/matrix.hpp"

namespace drinfeld {

namespace {

UniPoly monic_over_fq(const DrinfeldModule& phi, const UniPoly& a) {
  if (a.is_zero() || !a.is_monic()) raise(ErrorKind::NonMonic, "a must be monic");
  if (a.degree() < 1) raise(ErrorKind::InvalidDegree, "a must have positive degree");
  return restrict_to(a, phi.fq());
}

int max_degree(const MultiPoly& f) {
  int m = 0;
  for (int i = 0; i < f.vars(); ++i) m = std::max(m, f.degree_in(i));
  return m;
}

Field join_level(const Field& base, std::span<const FieldElement> xs) {
  Field L = base;
  for (const auto& x : xs) {
    if (is_sublevel(*x.level(), *L)) continue;
    if (!is_sublevel(*L, *x.level())) raise(ErrorKind::LevelMismatch, "point in a level not containing K");
    L = x.level();
  }
  return L;
}

}  // namespace

QPowerPoly weil_polynomial_from(const DrinfeldModule& phi, const MultiPoly& f) {
  const Field& K = phi.base();
  const int s = f.vars();
  const int top = max_degree(f);
  // twisted[k][e][t] = (coefficient of tau^t in phi_{T^k})^(q^e)
  std::vector<std::vector<std::vector<FieldElement>>> twisted(top + 1);
  SkewPoly power = SkewPoly::constant(FieldElement::one(K));
  for (int k = 0; k <= top; ++k) {
    std::vector<FieldElement> c = power.coeffs();
    for (int e = 0; e < s; ++e) {
      twisted[k].push_back(c);
      for (auto& x : c) x = frobenius_pow(x, 1);
    }
    power = skew_mul(power, phi.phi_T());
  }
  QPowerPoly out(s, K);
  std::vector<int> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j)
        if (perm[i] > perm[j]) ++inversions;
    for (const auto& [e, coef] : f.terms()) {
      FieldElement c0 = embed(coef, K);
      if (inversions % 2) c0 = -c0;
      // walk all choices of tau-index per slot
      Exponents key(s, 0);
      std::vector<std::size_t> idx(s, 0);
      for (;;) {
        FieldElement c = c0;
        for (int i = 0; i < s && !c.is_zero(); ++i) {
          c *= twisted[e[i]][perm[i]][idx[i]];
          key[i] = static_cast<std::uint32_t>(idx[i] + perm[i]);
        }
        if (!c.is_zero()) out.add_term(key, c);
        int pos = 0;
        while (pos < s && ++idx[pos] == twisted[e[pos]][0].size()) idx[pos++] = 0;
        if (pos == s) break;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

QPowerPoly weil_polynomial(const DrinfeldModule& phi, const UniPoly& a) {
  return weil_polynomial(phi, a, phi.rank());
}

QPowerPoly weil_polynomial(const DrinfeldModule& phi, const UniPoly& a, int arity) {
  const UniPoly A = monic_over_fq(phi, a);
  return weil_polynomial_from(phi, f_chain_sum(A, arity).poly);
}

WeilPairing::WeilPairing(const DrinfeldModule& phi, const UniPoly& a)
    : WeilPairing(phi, a, f_chain_sum(monic_over_fq(phi, a), phi.rank()).poly) {}

WeilPairing::WeilPairing(const DrinfeldModule& phi, const UniPoly& a, MultiPoly f)
    : phi_(phi), a_(monic_over_fq(phi, a)), f_(std::move(f)) {
  max_power_ = max_degree(f_);
}

WeilPairing::Prepared WeilPairing::prepare(const FieldElement& beta) const {
  Prepared p;
  FieldElement x = beta;
  for (int k = 0; k <= max_power_; ++k) {
    std::vector<FieldElement> row{x};
    for (int j = 1; j < arity(); ++j) row.push_back(frobenius_pow(row.back(), 1));
    p.push_back(std::move(row));
    if (k < max_power_) x = skew_apply(phi_.phi_T(), x);
  }
  return p;
}

FieldElement WeilPairing::value(std::span<const Prepared* const> slots) const {
  const int s = arity();
  if (static_cast<int>(slots.size()) != s) raise(ErrorKind::ArityMismatch, "wrong number of pairing arguments");
  Field L = phi_.base();
  for (const auto* p : slots) L = join_level(L, std::span<const FieldElement>(&(*p)[0][0], 1));
  FieldElement acc = FieldElement::zero(L);
  MatrixFq m(s, s, L);
  for (const auto& [e, coef] : f_.terms()) {
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) m.set(i, j, (*slots[i])[e[i]][j]);
    const FieldElement d = determinant(m);
    if (!d.is_zero()) acc += coef * d;
  }
  return acc;
}

FieldElement WeilPairing::value(std::span<const FieldElement> beta) const {
  const Field L = join_level(phi_.base(), beta);
  std::vector<Prepared> prepared;
  for (const auto& b : beta) prepared.push_back(prepare(embed(b, L)));
  std::vector<const Prepared*> ptrs;
  for (const auto& p : prepared) ptrs.push_back(&p);
  return value(std::span<const Prepared* const>(ptrs));
}

FieldElement WeilPairing::evaluate(std::span<const FieldElement> beta) const {
  if (eval(a_, phi_.theta()).is_zero())
    raise(ErrorKind::InseparableTorsion, "a(theta) = 0: a lies in the A-characteristic, generated by p = " +
                                             to_string(phi_.characteristic()));
  const SkewPoly phi_a = phi_image(phi_, a_);
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (!skew_apply(phi_a, beta[i]).is_zero())
      raise(ErrorKind::NotTorsionPoint, "argument " + std::to_string(i + 1) + " is not in phi[a]");
  const FieldElement w = value(beta);
  if (!skew_apply(phi_image(det_module(phi_), a_), w).is_zero())
    raise(ErrorKind::PointNotInModule, "pairing value is not in psi[a]");
  return w;
}

FieldElement weil_evaluate(const DrinfeldModule& phi, const UniPoly& a, std::span<const FieldElement> beta) {
  return WeilPairing(phi, a).evaluate(beta);
}

FieldElement weil_nonmonic(const DrinfeldModule& phi, const UniPoly& b, std::span<const FieldElement> beta) {
  if (b.is_zero()) raise(ErrorKind::InvalidArgument, "b must be nonzero");
  const FieldElement c = b.lead();
  const UniPoly a = make_monic(b);
  return c.pow(phi.rank() - 1) * weil_evaluate(phi, a, beta);
}

FieldElement weil_nonmonic(const WeilPairing& monic, const FieldElement& c, std::span<const FieldElement> beta) {
  if (c.is_zero()) raise(ErrorKind::InvalidArgument, "scalar must be nonzero");
  return c.pow(monic.module().rank() - 1) * monic.value(beta);
}

}  // namespace drinfeld
