#include <doctest.h>

#include <random>
#include <set>

#include "drinfeld/skew.hpp"
#include "drinfeld/torsion.hpp"
#include "drinfeld/verify.hpp"
#include "support.hpp"

using namespace drinfeld;
using namespace testing_support;

namespace {

SkewPoly random_skew(const Field& f, int deg, std::mt19937_64& rng) {
  std::vector<FieldElement> c;
  for (int i = 0; i <= deg; ++i) c.push_back(random_element(f, rng));
  return SkewPoly(f, c);
}

// sum_i phi_{b_i}(beta_i) for every (b_1..b_r) in (A/aA)^r, as element indices.
std::set<std::uint64_t> generated_points(const TorsionModule& t, const std::vector<FieldElement>& basis) {
  const auto res = residues(t.a);
  std::vector<std::vector<FieldElement>> images(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const auto& b : res) images[i].push_back(embed(skew_apply(phi_image(t.module, b), basis[i]), t.level));
  std::set<std::uint64_t> out;
  std::vector<std::size_t> idx(basis.size(), 0);
  while (true) {
    FieldElement s = FieldElement::zero(t.level);
    for (std::size_t i = 0; i < basis.size(); ++i) s += images[i][idx[i]];
    out.insert(element_index(s));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == res.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("skew polynomial multiplication and evaluation") {
  const Field F3 = make_field(3, 1);
  const Field K9 = extend(F3, 2, std::vector<FieldElement>{k(F3, 1), k(F3, 0), k(F3, 1)}).field;
  const FieldElement y = el(K9, 3);
  const SkewPoly tau = SkewPoly::monomial(FieldElement::one(K9), 1);
  CHECK(tau * SkewPoly::constant(y) == SkewPoly::monomial(k(K9, 2) * y, 1));

  const Field F2 = make_field(2, 1);
  const SkewPoly one_tau(F2, {k(F2, 1), k(F2, 1)});
  CHECK(one_tau * one_tau == SkewPoly(F2, {k(F2, 1), k(F2, 0), k(F2, 1)}));

  const Field F8 = extend(F2, 3).field;
  std::mt19937_64 rng(9);
  for (int i = 0; i < 40; ++i) {
    const auto theta = random_element(F8, rng), beta = random_element(F8, rng);
    CHECK(skew_apply(SkewPoly(F8, {theta, FieldElement::one(F8)}), beta) == theta * beta + beta * beta);
    const SkewPoly f = random_skew(F8, 3, rng), g = random_skew(F8, 2, rng), h = random_skew(F8, 2, rng);
    CHECK(skew_apply(f, FieldElement::zero(F8)).is_zero());
    // composition and associativity, checked pointwise and formally
    CHECK(skew_apply(f * g, beta) == skew_apply(f, skew_apply(g, beta)));
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
  }
}

TEST_CASE("make_drinfeld and phi_image") {
  const DrinfeldModule carlitz = prime_module(2, 1, {1});
  const Field F2 = carlitz.fq();
  CHECK(carlitz.rank() == 1);
  CHECK(carlitz.phi_T() == SkewPoly(F2, {k(F2, 1), k(F2, 1)}));
  CHECK(carlitz.characteristic() == poly(F2, {1, 1}));

  const DrinfeldModule phi = prime_module(2, 1, {1, 1});
  CHECK(phi.phi_T() == SkewPoly(F2, {k(F2, 1), k(F2, 1), k(F2, 1)}));
  CHECK(throws_kind([] { prime_module(2, 1, {1, 0}); }, ErrorKind::ZeroLeadingCoefficient));

  CHECK(phi_image(phi, poly(F2, {1})) == SkewPoly::constant(k(F2, 1)));
  const SkewPoly sq = phi_image(phi, poly(F2, {0, 0, 1}));
  CHECK(sq == skew_mul(phi.phi_T(), phi.phi_T()));
  CHECK(sq.degree() == 4);
  CHECK(sq.coeff(0).is_one());

  // homomorphism and constant term a(theta) on a module over F_4
  const DrinfeldModule f4 = f4_module();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    std::vector<std::int64_t> ca, cb;
    for (int j = 0; j < 3; ++j) ca.push_back(rng() % 2), cb.push_back(rng() % 2);
    ca.push_back(1);
    cb.push_back(1);
    const UniPoly a = poly(f4.fq(), ca), b = poly(f4.fq(), cb);
    CHECK(phi_image(f4, a * b) == phi_image(f4, a) * phi_image(f4, b));
    CHECK(phi_image(f4, a + b) == phi_image(f4, a) + phi_image(f4, b));
    CHECK(phi_image(f4, a).coeff(0) == eval(a, f4.theta()));
    CHECK(phi_image(f4, a).degree() == 2 * a.degree());
  }
}

TEST_CASE("det_module signs") {
  const DrinfeldModule r1 = prime_module(3, 2, {1});
  CHECK(det_module(r1).phi_T() == r1.phi_T());
  const Field F3 = r1.fq();
  const DrinfeldModule r2 = prime_module(3, 2, {1, 2});
  CHECK(det_module(r2).phi_T() == SkewPoly(F3, {k(F3, 2), k(F3, -2)}));
  const DrinfeldModule r3 = prime_module(3, 2, {0, 0, 2});
  CHECK(det_module(r3).phi_T() == SkewPoly(F3, {k(F3, 2), k(F3, 2)}));
}

TEST_CASE("torsion modules") {
  const DrinfeldModule phi = prime_module(2, 1, {1, 1});
  const Field F2 = phi.fq();
  const TorsionModule t = torsion(phi, poly(F2, {0, 1}));
  CHECK(t.extension_degree == 3);
  CHECK(t.dimension() == 2);
  CHECK(t.size() == 4);
  // oracle: scan all of F_8 for x + x^2 + x^4 = 0
  std::set<std::uint64_t> scanned, listed;
  for (const auto& x : all_elements(t.level))
    if ((x + x * x + x.pow(4)).is_zero()) scanned.insert(element_index(x));
  for (const auto& x : t.points()) listed.insert(element_index(x));
  CHECK(scanned == listed);
  for (const auto& x : t.points())
    if (!x.is_zero()) CHECK((x.pow(3) + x + FieldElement::one(t.level)).is_zero());

  const DrinfeldModule carlitz = prime_module(2, 1, {1});
  const TorsionModule c = torsion(carlitz, poly(F2, {0, 1}));
  CHECK(c.size() == 2);
  CHECK(c.dimension() == 1);
  CHECK(c.contains(FieldElement::one(c.level)));

  CHECK(throws_kind([&] { torsion(phi, poly(F2, {1, 1})); }, ErrorKind::InseparableTorsion));
  const DrinfeldModule q3 = prime_module(3, 2, {1, 1});
  CHECK(throws_kind([&] { torsion(q3, poly(q3.fq(), {1, 2})); }, ErrorKind::NonMonic));
  CHECK(throws_kind([&] { torsion(phi, poly(F2, {0, 1, 1, 1}), 3); }, ErrorKind::SearchCapExceeded));
}

TEST_CASE("torsion matches an exhaustive scan of the splitting level") {
  const DrinfeldModule phi = prime_module(2, 1, {1, 1});
  const UniPoly a = poly(phi.fq(), {1, 1, 1});
  const TorsionModule t = torsion(phi, a);
  CHECK(t.size() == 16);
  const SkewPoly pa = phi_image(phi, a);
  std::set<std::uint64_t> scanned, listed;
  for (const auto& x : all_elements(t.level))
    if (skew_apply(pa, x).is_zero()) scanned.insert(element_index(x));
  for (const auto& x : t.points()) listed.insert(element_index(x));
  CHECK(scanned == listed);
  // no smaller level holds all of phi[a]
  for (int m = 1; m < t.extension_degree; ++m) {
    if (t.extension_degree % m != 0) continue;
    const Field L = extend(phi.base(), m).field;
    CHECK(torsion_basis_in_level(phi, a, L).size() < 4);
  }
}

TEST_CASE("A/aA-bases generate the whole module") {
  struct Case {
    DrinfeldModule phi;
    std::vector<std::int64_t> a;
  };
  std::vector<Case> cases{{prime_module(2, 1, {1, 1}), {0, 1}},
                          {prime_module(2, 1, {1, 1}), {1, 1, 1}},
                          {prime_module(3, 2, {1, 1}), {0, 1}},
                          {prime_module(3, 2, {1, 1}), {2, 1, 1}},
                          {prime_module(2, 1, {1, 0, 1}), {0, 1}},
                          {f4_module(), {0, 1}}};
  for (auto& c : cases) {
    TorsionModule t = torsion(c.phi, poly(c.phi.fq(), c.a));
    std::mt19937_64 rng(17);
    const auto& basis = torsion_a_basis(t, rng);
    CHECK(basis.size() == static_cast<std::size_t>(c.phi.rank()));
    const auto gen = generated_points(t, basis);
    CHECK(gen.size() == t.size());
    std::set<std::uint64_t> all;
    for (const auto& x : t.points()) all.insert(element_index(x));
    CHECK(gen == all);
  }
  // rank 1, irreducible a: any nonzero point is a basis
  const DrinfeldModule carlitz = prime_module(3, 2, {1});
  const TorsionModule t = torsion(carlitz, poly(carlitz.fq(), {1, 0, 1}));
  for (const auto& x : t.points())
    if (!x.is_zero()) CHECK(generated_points(t, {x}).size() == t.size());
  // non-squarefree a is refused
  const DrinfeldModule phi = prime_module(2, 1, {1, 1});
  TorsionModule sq = torsion(phi, poly(phi.fq(), {0, 0, 1}));
  std::mt19937_64 rng(1);
  CHECK(throws_kind([&] { torsion_a_basis(sq, rng); }, ErrorKind::NotSquarefree));
}

TEST_CASE("Galois action matrices") {
  const DrinfeldModule phi = prime_module(2, 1, {1, 1});
  TorsionModule t = torsion(phi, poly(phi.fq(), {1, 1, 1}));
  std::mt19937_64 rng(5);
  const auto basis = torsion_a_basis(t, rng);
  const ACoordinates coords(t, basis);
  CHECK(coords.size() == 16);
  const auto id = AModMatrix::identity(t.a, 2);
  CHECK(galois_action_matrix(t, GaloisElement{0}, coords, basis) == id);
  const auto d = static_cast<std::uint64_t>(t.extension_degree);
  const auto m1 = galois_action_matrix(t, GaloisElement{1}, coords, basis);
  AModMatrix acc = id;
  for (std::uint64_t j = 1; j <= d; ++j) {
    acc = amod_mul(acc, m1);
    CHECK(acc == galois_action_matrix(t, GaloisElement{j}, coords, basis));
  }
  CHECK(acc == id);

  // a = T: psi[T] sits in K, so every determinant is 1
  TorsionModule tt = torsion(phi, poly(phi.fq(), {0, 1}));
  const auto bt = torsion_a_basis(tt, rng);
  const ACoordinates ct(tt, bt);
  for (std::uint64_t j = 0; j < 3; ++j) CHECK(amod_det(galois_action_matrix(tt, GaloisElement{j}, ct, bt)) == poly(phi.fq(), {1}));
}

TEST_CASE("det of the Galois action against a hand-computed psi scalar") {
  // theta = 2, g = [1, 1] over F_3; psi_T = 2 - tau, so psi[T] = {x : x^2 = 2}
  // and Frobenius acts on it by x^3 / x = x^2 = 2.
  const DrinfeldModule phi = prime_module(3, 2, {1, 1});
  const DrinfeldModule psi = det_module(phi);
  const Field F3 = phi.fq();
  const Field F9 = extend(F3, 2).field;
  const auto xs = roots_in_field(poly(F3, {-2, 0, 1}), F9);
  REQUIRE(xs.size() == 2);
  const FieldElement scalar = restrict_to(xs[0].pow(3) / xs[0], F3);
  CHECK(scalar == k(F3, 2));
  std::mt19937_64 rng(0);
  const auto rows = galois_det_table(phi, psi, poly(F3, {0, 1}), rng);
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0].det == poly(F3, {1}));
  CHECK(rows[0].psi_scalar == poly(F3, {1}));
  CHECK(rows[1].psi_scalar == UniPoly::constant(scalar));
  CHECK(rows[1].det == UniPoly::constant(scalar));
}
