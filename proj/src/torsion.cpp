#include "drinfeld/torsion.hpp"

#include <algorithm>
#include <numeric>

namespace drinfeld {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 62) / base) raise(ErrorKind::ConfigurationTooLarge, "point count overflows 62 bits");
    r *= base;
  }
  return r;
}

FieldElement unit_vector(const Field& L, const Field& fq, int k) {
  const int N = degree_over(*L, *fq);
  std::vector<FieldElement> c(N, FieldElement::zero(fq));
  c[k] = FieldElement::one(fq);
  return from_vector(c, L);
}

std::vector<FieldElement> coordinates(const FieldElement& x, const Field& fq) { return as_vector(x, fq); }

// x moved into `level`, or nullopt when it does not lie there.
std::optional<FieldElement> into_level(const FieldElement& x, const Field& level) {
  if (is_sublevel(*x.level(), *level)) return embed(x, level);
  if (is_sublevel(*level, *x.level()) && lies_in(x, *level)) return restrict_to(x, level);
  return std::nullopt;
}

}  // namespace

std::uint64_t TorsionModule::size() const { return checked_power(module.fq()->cardinality(), dimension()); }

FieldElement TorsionModule::point(std::uint64_t index) const {
  const Field& fq = module.fq();
  const std::uint64_t Q = fq->cardinality();
  FieldElement acc = FieldElement::zero(level);
  for (const auto& b : fq_basis) {
    const std::uint64_t d = index % Q;
    index /= Q;
    if (d != 0) acc += element_from_index(fq, d) * b;
  }
  return acc;
}

std::vector<FieldElement> TorsionModule::points() const {
  const std::uint64_t n = size();
  std::vector<FieldElement> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(point(i));
  return out;
}

FieldElement TorsionModule::random_point(std::mt19937_64& rng) const {
  const Field& fq = module.fq();
  FieldElement acc = FieldElement::zero(level);
  for (const auto& b : fq_basis) acc += random_element(fq, rng) * b;
  return acc;
}

bool TorsionModule::contains(const FieldElement& x) const {
  const auto y = into_level(x, level);
  return y && skew_apply(phi_image(module, a), *y).is_zero();
}

std::vector<FieldElement> skew_kernel(const SkewPoly& f, const Field& L) {
  const Field fq = base_field(L);
  const int N = degree_over(*L, *fq);
  MatrixFq m(N, N, fq);
  for (int k = 0; k < N; ++k) {
    const auto col = coordinates(skew_apply(f, unit_vector(L, fq, k)), fq);
    for (int i = 0; i < N; ++i) m.set(i, k, col[i]);
  }
  std::vector<FieldElement> out;
  for (const auto& v : kernel(m)) out.push_back(from_vector(v, L));
  return out;
}

namespace {

UniPoly admissible(const DrinfeldModule& phi, const UniPoly& a) {
  if (a.is_zero() || !a.is_monic()) raise(ErrorKind::NonMonic, "a must be monic");
  if (a.degree() < 1) raise(ErrorKind::InvalidDegree, "a must have positive degree");
  UniPoly A = restrict_to(a, phi.fq());
  if (eval(A, phi.theta()).is_zero())
    raise(ErrorKind::InseparableTorsion, "a(theta) = 0: a lies in the A-characteristic, generated by p = " +
                                             to_string(phi.characteristic()));
  return A;
}

}  // namespace

TorsionModule torsion(const DrinfeldModule& phi, const UniPoly& a, int cap) {
  const UniPoly A = admissible(phi, a);
  const SkewPoly fa = phi_image(phi, A);
  const std::size_t target = static_cast<std::size_t>(phi.rank()) * A.degree();
  for (int m = 1; m <= cap; ++m) {
    const Field L = m == 1 ? phi.base() : extend(phi.base(), m).field;
    auto basis = skew_kernel(fa, L);
    if (basis.size() == target) return TorsionModule{A, phi, L, m, std::move(basis), std::nullopt};
  }
  raise(ErrorKind::SearchCapExceeded,
        "phi[a] does not split within " + std::to_string(cap) + " extensions of K");
}

std::vector<FieldElement> torsion_basis_in_level(const DrinfeldModule& phi, const UniPoly& a, const Field& L) {
  const UniPoly A = admissible(phi, a);
  return skew_kernel(phi_image(phi, A), L);
}

std::size_t generated_rank(const TorsionModule& t, const std::vector<FieldElement>& gens) {
  const Field& fq = t.module.fq();
  const int N = degree_over(*t.level, *fq);
  const int n = t.a.degree();
  std::vector<std::vector<FieldElement>> cols;
  for (const auto& g : gens) {
    FieldElement x = embed(g, t.level);
    for (int k = 0; k < n; ++k) {
      cols.push_back(coordinates(x, fq));
      x = skew_apply(t.module.phi_T(), x);
    }
  }
  if (cols.empty()) return 0;
  MatrixFq m(N, cols.size(), fq);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < N; ++i) m.set(i, j, cols[j][i]);
  return rank(m);
}

const std::vector<FieldElement>& torsion_a_basis(TorsionModule& t, std::mt19937_64& rng, int tries) {
  if (!is_squarefree(t.a)) raise(ErrorKind::NotSquarefree, "A/aA-basis requires squarefree a");
  const std::size_t r = t.module.rank();
  const std::size_t want = r * t.a.degree();
  for (int attempt = 0; attempt < tries; ++attempt) {
    std::vector<FieldElement> gens;
    for (std::size_t i = 0; i < r; ++i) gens.push_back(t.random_point(rng));
    if (generated_rank(t, gens) == want) {
      t.a_basis = std::move(gens);
      return *t.a_basis;
    }
  }
  raise(ErrorKind::SearchBudget, "no A/aA-basis found in " + std::to_string(tries) + " random tries");
}

FieldElement GaloisElement::apply(const FieldElement& x, const DrinfeldModule& phi) const {
  if (k == 0) return x;
  return frobenius_pow(x, k * static_cast<std::uint64_t>(phi.base_degree()));
}

AModMatrix AModMatrix::identity(const UniPoly& a, std::size_t n) {
  AModMatrix m{a, n, std::vector<UniPoly>(n * n, UniPoly(a.level()))};
  for (std::size_t i = 0; i < n; ++i) m.entries[i * n + i] = UniPoly::constant(FieldElement::one(a.level()));
  return m;
}

bool operator==(const AModMatrix& x, const AModMatrix& y) { return x.n == y.n && x.entries == y.entries; }

AModMatrix amod_mul(const AModMatrix& x, const AModMatrix& y) {
  if (x.n != y.n) raise(ErrorKind::ArityMismatch, "matrix sizes differ");
  AModMatrix out{x.a, x.n, std::vector<UniPoly>(x.n * x.n, UniPoly(x.a.level()))};
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) {
      UniPoly s(x.a.level());
      for (std::size_t k = 0; k < x.n; ++k) s += x(i, k) * y(k, j);
      out.entries[i * x.n + j] = s % x.a;
    }
  return out;
}

UniPoly amod_det(const AModMatrix& m) {
  std::vector<std::size_t> perm(m.n);
  std::iota(perm.begin(), perm.end(), 0);
  UniPoly det(m.a.level());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < m.n; ++i)
      for (std::size_t j = i + 1; j < m.n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    UniPoly term = UniPoly::constant(FieldElement::one(m.a.level()));
    for (std::size_t i = 0; i < m.n; ++i) term = (term * m(i, perm[i])) % m.a;
    if (inversions % 2) det -= term;
    else det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det % m.a;
}

std::vector<UniPoly> residues(const UniPoly& a) {
  const Field& fq = a.level();
  const std::uint64_t Q = fq->cardinality();
  const std::uint64_t count = checked_power(Q, a.degree());
  std::vector<UniPoly> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::vector<FieldElement> c;
    std::uint64_t v = i;
    for (int k = 0; k < a.degree(); ++k) {
      c.push_back(element_from_index(fq, v % Q));
      v /= Q;
    }
    out.emplace_back(fq, std::move(c));
  }
  return out;
}

ACoordinates::ACoordinates(const TorsionModule& t, const std::vector<FieldElement>& basis) : level_(t.level) {
  const std::size_t r = basis.size();
  const int n = t.a.degree();
  const std::uint64_t per_slot = checked_power(t.module.fq()->cardinality(), n);
  const std::uint64_t total = checked_power(per_slot, r);
  if (total > (std::uint64_t{1} << 22)) raise(ErrorKind::ConfigurationTooLarge, "coordinate table too large");
  // images[i][k] = phi_{T^k}(beta_i)
  std::vector<std::vector<FieldElement>> images(r);
  for (std::size_t i = 0; i < r; ++i) {
    FieldElement x = embed(basis[i], level_);
    for (int k = 0; k < n; ++k) {
      images[i].push_back(x);
      x = skew_apply(t.module.phi_T(), x);
    }
  }
  const auto res = residues(t.a);
  std::vector<std::vector<FieldElement>> slot(r);
  for (std::size_t i = 0; i < r; ++i)
    for (const auto& b : res) {
      FieldElement acc = FieldElement::zero(level_);
      for (int k = 0; k <= b.degree(); ++k) acc += b.coeffs()[k] * images[i][k];
      slot[i].push_back(acc);
    }
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t v = idx;
    FieldElement acc = FieldElement::zero(level_);
    std::vector<UniPoly> key;
    for (std::size_t i = 0; i < r; ++i) {
      acc += slot[i][v % per_slot];
      key.push_back(res[v % per_slot]);
      v /= per_slot;
    }
    table_.emplace(acc, std::move(key));
  }
  if (table_.size() != total) raise(ErrorKind::PointNotInModule, "basis does not generate freely");
}

const std::vector<UniPoly>& ACoordinates::operator()(const FieldElement& x) const {
  const auto y = into_level(x, level_);
  if (!y) raise(ErrorKind::PointNotInModule, "point outside the torsion level");
  auto it = table_.find(*y);
  if (it == table_.end()) raise(ErrorKind::PointNotInModule, "point does not decompose over the basis");
  return it->second;
}

AModMatrix galois_action_matrix(const TorsionModule& t, const GaloisElement& sigma, const ACoordinates& coords,
                                const std::vector<FieldElement>& basis) {
  const std::size_t r = basis.size();
  AModMatrix m{t.a, r, std::vector<UniPoly>(r * r, UniPoly(t.a.level()))};
  for (std::size_t j = 0; j < r; ++j) {
    const auto& c = coords(sigma.apply(embed(basis[j], t.level), t.module));
    for (std::size_t i = 0; i < r; ++i) m.entries[i * r + j] = c[i];
  }
  return m;
}

}  // namespace drinfeld
