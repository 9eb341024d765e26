#include <doctest.h>

#include <random>
#include <set>

#include "drinfeld/torsion.hpp"
#include "drinfeld/weil.hpp"
#include "support.hpp"

using namespace drinfeld;
using namespace testing_support;

namespace {

// Tuples of torsion points by mixed-radix counting.
template <class F>
void for_each_tuple(const std::vector<FieldElement>& pts, int r, F&& body) {
  std::vector<std::size_t> idx(r, 0);
  std::vector<FieldElement> beta(r);
  while (true) {
    for (int i = 0; i < r; ++i) beta[i] = pts[idx[i]];
    body(beta);
    int i = 0;
    while (i < r && ++idx[i] == pts.size()) idx[i++] = 0;
    if (i == r) return;
  }
}

FieldElement det3(const std::vector<std::vector<FieldElement>>& m) {
  return m[0][0] * m[1][1] * m[2][2] + m[0][1] * m[1][2] * m[2][0] + m[0][2] * m[1][0] * m[2][1] -
         m[0][2] * m[1][1] * m[2][0] - m[0][0] * m[1][2] * m[2][1] - m[0][1] * m[1][0] * m[2][2];
}

FieldElement moore2(const FieldElement& x, const FieldElement& y) {
  return x * frobenius_pow(y, 1) - y * frobenius_pow(x, 1);
}

}  // namespace

TEST_CASE("Moore determinant") {
  const Field F2 = make_field(2, 1);
  const QPowerPoly m1 = moore_poly(1, F2);
  CHECK(m1.size() == 1);
  CHECK(m1.coefficient({0}).is_one());

  const Field F3 = make_field(3, 1);
  const Field F9 = extend(F3, 2).field;
  const QPowerPoly m2 = moore_poly(2, F3);
  CHECK(m2.size() == 2);
  CHECK(to_string(m2) == "2*x1^3*x2 + x1*x2^3");
  for (const auto& b1 : all_elements(F9))
    for (const auto& b2 : all_elements(F9)) {
      const FieldElement expect = b1 * b2.pow(3) - b2 * b1.pow(3);
      const std::vector<FieldElement> beta{b1, b2};
      CHECK(moore_eval(beta) == expect);
      CHECK(m2.eval(beta) == expect);
    }

  const Field F16 = extend(F2, 4).field;
  const QPowerPoly m3 = moore_poly(3, F2);
  CHECK(m3.size() == 6);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    std::vector<FieldElement> beta;
    for (int j = 0; j < 3; ++j) beta.push_back(random_element(F16, rng));
    std::vector<std::vector<FieldElement>> m(3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m[r].push_back(frobenius_pow(beta[r], c));
    CHECK(moore_eval(beta) == det3(m));
    CHECK(m3.eval(beta) == det3(m));
    beta[2] = beta[0];
    CHECK(moore_eval(beta).is_zero());
  }
}

TEST_CASE("W_T is the Moore polynomial") {
  for (const auto& phi : {prime_module(2, 1, {1, 1}), prime_module(3, 2, {1, 1}), prime_module(2, 1, {1, 0, 1}),
                          f4_module()}) {
    const QPowerPoly W = weil_polynomial(phi, poly(phi.fq(), {0, 1}));
    CHECK(W == moore_poly(phi.rank(), phi.base()));
  }
  const DrinfeldModule q3 = prime_module(3, 2, {1, 1});
  CHECK(throws_kind([&] { weil_polynomial(q3, poly(q3.fq(), {1, 2})); }, ErrorKind::NonMonic));
}

TEST_CASE("the F_8 example") {
  const DrinfeldModule phi = prime_module(2, 1, {1, 1});
  const UniPoly a = poly(phi.fq(), {0, 1});
  const TorsionModule t = torsion(phi, a);
  const Field L = t.level;
  CHECK(L->cardinality() == 8);
  int checked = 0;
  for (const auto& b : t.points()) {
    if (b.is_zero()) continue;
    CHECK((b.pow(3) + b + FieldElement::one(L)).is_zero());
    const std::vector<FieldElement> beta{b, b * b};
    CHECK(weil_evaluate(phi, a, beta).is_one());
    ++checked;
  }
  CHECK(checked == 3);
}

TEST_CASE("polynomial and evaluation map agree on every torsion tuple") {
  struct Case {
    DrinfeldModule phi;
    std::vector<std::int64_t> a;
  };
  for (auto& c : std::vector<Case>{{prime_module(2, 1, {1, 1}), {0, 1}},
                                    {prime_module(2, 1, {1, 1}), {1, 1, 1}},
                                    {f4_module(), {0, 1}},
                                    {prime_module(2, 1, {1, 0, 1}), {0, 1}},
                                    {prime_module(3, 2, {1, 1}), {0, 1}},
                                    {prime_module(3, 2, {0, 0, 1}), {0, 1}}}) {
    const UniPoly a = poly(c.phi.fq(), c.a);
    const TorsionModule t = torsion(c.phi, a);
    const QPowerPoly W = weil_polynomial(c.phi, a);
    const WeilPairing pairing(c.phi, a);
    const SkewPoly psi_a = phi_image(det_module(c.phi), a);
    const auto pts = t.points();
    for_each_tuple(pts, c.phi.rank(), [&](const std::vector<FieldElement>& beta) {
      const FieldElement v = pairing.evaluate(beta);
      CHECK(v == W.eval(beta));
      CHECK(skew_apply(psi_a, v).is_zero());
    });
  }
}

TEST_CASE("rank-2 formula as an independent oracle") {
  for (auto [phi, coeffs] : {std::pair{prime_module(2, 1, {1, 1}), std::vector<std::int64_t>{1, 1, 1}},
                             std::pair{prime_module(3, 2, {1, 1}), std::vector<std::int64_t>{2, 1, 1}}}) {
    const UniPoly a = poly(phi.fq(), coeffs);
    const int n = a.degree();
    const TorsionModule t = torsion(phi, a);
    std::vector<SkewPoly> powers;
    for (int i = 0; i < n; ++i) powers.push_back(phi_image(phi, UniPoly::monomial(FieldElement::one(phi.fq()), i)));
    for_each_tuple(t.points(), 2, [&](const std::vector<FieldElement>& beta) {
      FieldElement s = FieldElement::zero(t.level);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j)
          s += embed(a.coeff(i), t.level) * moore2(skew_apply(powers[j - 1], beta[0]), skew_apply(powers[i - j], beta[1]));
      CHECK(weil_evaluate(phi, a, beta) == s);
    });
  }
}

TEST_CASE("degenerate arguments and errors") {
  const DrinfeldModule phi = prime_module(2, 1, {1, 0, 1});
  const UniPoly a = poly(phi.fq(), {0, 1});
  const TorsionModule t = torsion(phi, a);
  const auto pts = t.points();
  const FieldElement zero = FieldElement::zero(t.level);
  for (const auto& x : pts)
    for (const auto& y : pts) {
      CHECK(weil_evaluate(phi, a, std::vector<FieldElement>{zero, x, y}).is_zero());
      CHECK(weil_evaluate(phi, a, std::vector<FieldElement>{x, y, zero}).is_zero());
      CHECK(weil_evaluate(phi, a, std::vector<FieldElement>{x, y, x}).is_zero());
      CHECK(weil_evaluate(phi, a, std::vector<FieldElement>{x, x, y}).is_zero());
    }
  FieldElement outside = zero;
  for (const auto& x : all_elements(t.level))
    if (!t.contains(x)) {
      outside = x;
      break;
    }
  CHECK(throws_kind([&] { weil_evaluate(phi, a, std::vector<FieldElement>{outside, pts[1], pts[2]}); },
                    ErrorKind::NotTorsionPoint));
  const UniPoly bad = poly(phi.fq(), {1, 1});
  CHECK(throws_kind([&] { weil_evaluate(phi, bad, std::vector<FieldElement>{pts[1], pts[2], pts[3]}); },
                    ErrorKind::InseparableTorsion));
}

TEST_CASE("non-monic scaling") {
  for (const auto& phi : {prime_module(3, 2, {1, 1}), prime_module(3, 2, {0, 0, 1})}) {
    const Field F3 = phi.fq();
    const UniPoly a = poly(F3, {0, 1});
    const int r = phi.rank();
    const TorsionModule t = torsion(phi, a);
    const FieldElement two = k(F3, 2);
    const FieldElement factor = r == 2 ? two : FieldElement::one(F3);
    for_each_tuple(t.points(), r, [&](const std::vector<FieldElement>& beta) {
      const FieldElement w = weil_evaluate(phi, a, beta);
      CHECK(weil_nonmonic(phi, a, beta) == w);
      const FieldElement w2 = weil_nonmonic(phi, a * two, beta);
      CHECK(w2 == embed(factor, t.level) * w);
      // compatibility with b = c forces c W_{ca}(beta) = W_a(c beta)
      std::vector<FieldElement> scaled;
      for (const auto& b : beta) scaled.push_back(embed(two, t.level) * b);
      CHECK(embed(two, t.level) * w2 == weil_evaluate(phi, a, scaled));
    });
  }
}

TEST_CASE("degree bound and leading block") {
  struct Case {
    DrinfeldModule phi;
    std::vector<std::int64_t> a;
  };
  for (auto& c : std::vector<Case>{{prime_module(2, 1, {1, 1}), {1, 1, 1}},
                                    {prime_module(2, 1, {1, 1}), {1, 1, 0, 1}},
                                    {prime_module(3, 2, {1, 2}), {2, 1, 1}},
                                    {prime_module(2, 1, {1, 0, 1}), {1, 1, 1}}}) {
    const UniPoly a = poly(c.phi.fq(), c.a);
    const int r = c.phi.rank(), n = a.degree();
    const QPowerPoly W = weil_polynomial(c.phi, a);
    for (int j = 0; j < r; ++j) CHECK(W.max_frob(j) <= r * n - 1);
    CHECK(W.max_frob(r - 1) == r * n - 1);
    QPowerPoly expect = weil_polynomial(c.phi, a, r - 1);
    expect *= c.phi.leading().pow(n - 1);
    CHECK(coefficient_block(W, r - 1, r * n - 1) == expect);
  }
}
