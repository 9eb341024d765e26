#include "drinfeld/fa.hpp"

#include <algorithm>

namespace drinfeld {

std::string to_string(FaRoute route) { return route == FaRoute::ChainSum ? "chain" : "recursive"; }

namespace {

UniPoly checked_a(const UniPoly& a, int r) {
  if (a.is_zero() || !a.is_monic()) raise(ErrorKind::NonMonic, "a must be monic");
  if (a.degree() < 1) raise(ErrorKind::InvalidDegree, "a must have positive degree");
  if (r < 1) raise(ErrorKind::InvalidArgument, "rank must be at least 1");
  return restrict_to(a, base_field(a.level()));
}

// prod over i in [0, n) outside [lo, hi] of (T_var - roots[i])
MultiPoly outside_product(const std::vector<FieldElement>& roots, int lo, int hi, int vars, int var,
                          const Field& level) {
  UniPoly u = UniPoly::constant(FieldElement::one(level));
  for (int i = 0; i < static_cast<int>(roots.size()); ++i)
    if (i < lo || i > hi) u *= UniPoly::linear(embed(roots[i], level));
  return MultiPoly::univariate(vars, var, u);
}

}  // namespace

std::vector<FieldElement> ordered_roots(const UniPoly& a) {
  const Field L = splitting_level(a);
  auto roots = roots_in_field(a, L);
  if (static_cast<int>(roots.size()) != a.degree())
    raise(ErrorKind::InvalidArgument, "splitting level does not split a");
  return roots;
}

std::uint64_t chain_count(int n, int r) {
  // C(n + r - 2, r - 1), computed incrementally so every partial value is exact
  std::uint64_t c = 1;
  const int top = n + r - 2;
  const int k = r - 1;
  for (int i = 1; i <= k; ++i) c = c * (top - k + i) / i;
  return c;
}

MultiPoly f_from_roots_chain(const std::vector<FieldElement>& roots, int r, const Field& level) {
  const int n = static_cast<int>(roots.size());
  MultiPoly sum(r, level);
  // chain[0] = 0 and chain[r] = n - 1 (0-based); interior entries nondecreasing
  std::vector<int> chain(r + 1, 0);
  chain[r] = n - 1;
  std::uint64_t count = 0;
  for (;;) {
    MultiPoly term = MultiPoly::constant(r, FieldElement::one(level));
    for (int j = 1; j <= r; ++j) term *= outside_product(roots, chain[j - 1], chain[j], r, j - 1, level);
    sum += term;
    ++count;
    // next nondecreasing interior sequence
    int pos = r - 1;
    while (pos >= 1 && chain[pos] == n - 1) --pos;
    if (pos < 1) break;
    ++chain[pos];
    for (int j = pos + 1; j < r; ++j) chain[j] = chain[pos];
  }
  if (count != chain_count(n, r)) raise(ErrorKind::InvalidArgument, "chain enumeration miscounted");
  return sum;
}

MultiPoly f_from_roots_recursive(const std::vector<FieldElement>& roots, int r, const Field& level) {
  const int n = static_cast<int>(roots.size());
  if (r == 1 || n == 1) return MultiPoly::constant(r, FieldElement::one(level));
  const FieldElement a1 = embed(roots[0], level);
  MultiPoly left = MultiPoly::constant(r, FieldElement::one(level));
  for (int j = 0; j < r - 1; ++j) left *= MultiPoly::linear(r, j, a1);
  const std::vector<FieldElement> rest(roots.begin() + 1, roots.end());
  left *= f_from_roots_recursive(rest, r, level);
  MultiPoly right = outside_product(roots, 0, 0, r, r - 1, level);
  right *= widen(f_from_roots_recursive(roots, r - 1, level), r);
  return left + right;
}

MultiPoly coerce_rational(const MultiPoly& p, const Field& fq) {
  MultiPoly out(p.vars(), fq);
  for (const auto& [e, c] : p.terms()) {
    if (!lies_in(c, *fq))
      raise(ErrorKind::RationalityFailure, "coefficient " + to_string(c) + " of f_a is not in F_q");
    out.add_term(e, restrict_to(c, fq));
  }
  return out;
}

FaPoly f_chain_sum(const UniPoly& a, int r) {
  const UniPoly A = checked_a(a, r);
  auto roots = ordered_roots(A);
  const Field L = roots.empty() ? A.level() : roots.front().level();
  MultiPoly p = coerce_rational(f_from_roots_chain(roots, r, L), A.level());
  return FaPoly{std::move(p), A, r, FaRoute::ChainSum, std::move(roots)};
}

FaPoly f_recursive(const UniPoly& a, int r) {
  const UniPoly A = checked_a(a, r);
  auto roots = ordered_roots(A);
  const Field L = roots.front().level();
  MultiPoly p = coerce_rational(f_from_roots_recursive(roots, r, L), A.level());
  return FaPoly{std::move(p), A, r, FaRoute::Recursive, std::move(roots)};
}

FaPoly f_root_order_variant(const UniPoly& a, int r, const std::vector<int>& sigma) {
  const UniPoly A = checked_a(a, r);
  const auto sorted = ordered_roots(A);
  const std::size_t n = sorted.size();
  std::vector<int> check = sigma;
  std::sort(check.begin(), check.end());
  bool ok = check.size() == n;
  for (std::size_t i = 0; ok && i < n; ++i) ok = check[i] == static_cast<int>(i);
  if (!ok) raise(ErrorKind::InvalidArgument, "root permutation is not a bijection");
  std::vector<FieldElement> roots(n);
  for (std::size_t k = 0; k < n; ++k) roots[sigma[k]] = sorted[k];
  const Field L = sorted.front().level();
  MultiPoly p = coerce_rational(f_from_roots_chain(roots, r, L), A.level());
  return FaPoly{std::move(p), A, r, FaRoute::ChainSum, std::move(roots)};
}

}  // namespace drinfeld
