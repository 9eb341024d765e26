#include <doctest.h>

#include "drinfeld/verify.hpp"
#include "drinfeld/weil.hpp"
#include "support.hpp"

using namespace drinfeld;
using namespace testing_support;

namespace {

const char* kF2Rank2 = R"({
  "name": "f2_rank2",
  "module": {"K": {"p": 2, "tower": []}, "theta": 1, "g": [1, 1]},
  "f_grid": {"max_degree": 3, "ranks": [1, 2]},
  "pairing": [[0, 1], [1, 1, 1]],
  "compatibility": [[[0, 1], [0, 1]], [[0, 1], [1, 1, 1]]],
  "det": [[0, 1], [1, 1, 1]]
})";

const char* kF3Rank2 = R"({
  "name": "f3_rank2",
  "module": {"K": {"p": 3, "tower": []}, "theta": 2, "g": [1, 1]},
  "pairing": [[0, 1]],
  "det": [[0, 1]]
})";

VerificationConfig cfg_of(const char* text) { return config_from_json(parse_json(text)); }

const CheckResult* first_fail(const VerificationReport& rep, const std::string& prefix) {
  for (const auto& c : rep.checks)
    if (c.status == Status::Fail && c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

std::vector<FieldElement> elems(const Json& j, const Field& L) {
  std::vector<FieldElement> out;
  for (const auto& e : j) out.push_back(element_from_json(e, L));
  return out;
}

// Re-running only the suite that produced a FAIL gives the same verdict and counterexample.
void check_refails(const VerificationConfig& cfg, const CheckResult& c) {
  VerificationConfig only = cfg;
  only.suites = {c.name.substr(0, c.name.find('/'))};
  const VerificationReport again = run_verification(only);
  const CheckResult* same = again.find(c.name);
  REQUIRE(same != nullptr);
  CHECK(same->status == Status::Fail);
  REQUIRE(same->counterexample);
  CHECK(same->counterexample->dump() == c.counterexample->dump());
}

}  // namespace

TEST_CASE("grid sizes") {
  std::size_t q2 = 0, q3 = 0;
  for (int d = 1; d <= 3; ++d) {
    q2 += monic_polys(make_field(2, 1), d).size();
    q3 += monic_polys(make_field(3, 1), d).size();
  }
  CHECK(q2 == 14);
  CHECK(q3 == 39);
  for (const auto& a : monic_polys(make_field(3, 1), 2)) CHECK(a.is_monic());
}

TEST_CASE("config parsing") {
  CHECK(throws_kind([] { cfg_of(R"({"field": {"p": 2}, "colour": 1})"); }, ErrorKind::ParseError));
  CHECK(throws_kind([] { cfg_of(R"({"field": {"p": 2}, "suites": ["nope"]})"); }, ErrorKind::ParseError));
  CHECK(throws_kind([] { cfg_of(R"({"name": "x"})"); }, ErrorKind::ParseError));
  CHECK(throws_kind([] { cfg_of(R"({"field": {"p": 2}, "fault": "bogus"})"); }, ErrorKind::ParseError));
  const auto cfg = cfg_of(kF2Rank2);
  CHECK(cfg.name == "f2_rank2");
  CHECK(cfg.pairing_polys.size() == 2);
  CHECK(cfg.compat_pairs.size() == 2);
  CHECK(cfg.f_grid->ranks == std::vector<int>{1, 2});
  CHECK(configs_from_json(parse_json(std::string(R"({"configs": [)") + kF2Rank2 + "," + kF3Rank2 + "]}")).size() == 2);
}

TEST_CASE("honest runs pass and are reproducible") {
  auto cfg = cfg_of(kF2Rank2);
  const VerificationReport a = run_verification(cfg);
  CHECK(!a.any_fail());
  CHECK(a.count(Status::Pass) > 20);
  const VerificationReport b = run_verification(cfg);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.to_json().dump().find("millis") == std::string::npos);
  CHECK(a.to_json(true).dump().find("millis") != std::string::npos);
  cfg.seed = 7;
  CHECK(run_verification(cfg).config_digest != a.config_digest);
  const std::string names = a.to_json().dump();
  for (const char* s : {"pairing_properties/multilinearity[a=T]", "compatibility/psi_b_W_ab[a=T,b=T^2+T+1]",
                        "det_representation/det_equals_psi_scalar[a=T^2+T+1]", "congruences/shift_variable[r=2]",
                        "f_identities/closed_form_rank2[r=2]"})
    CHECK(a.find(s) != nullptr);
}

TEST_CASE("rank-1 grid is trivially satisfied") {
  auto cfg = cfg_of(R"({"field": {"p": 3}, "f_grid": {"max_degree": 3, "ranks": [1]}})");
  const auto rep = run_verification(cfg);
  CHECK(!rep.any_fail());
  for (const auto& a : monic_polys(cfg.fq, 3)) CHECK(f_chain_sum(a, 1).poly == MultiPoly::constant(1, k(cfg.fq, 1)));
}

TEST_CASE("perturbing f_a by T_1 breaks the shift congruence") {
  const Field F2 = make_field(2, 1);
  const UniPoly a = poly(F2, {1, 1, 1});
  const MultiPoly t1 = MultiPoly::variable(2, F2, 0), t2 = MultiPoly::variable(2, F2, 1);
  const MultiPoly f = f_chain_sum(a, 2).poly + t1;
  CHECK(!normal_form(t1 * f - t2 * f, IdealI{a, 2}).is_zero());
}

TEST_CASE("budget overruns are reported, not truncated") {
  auto cfg = cfg_of(kF2Rank2);
  cfg.budget = 10;
  cfg.suites = {"pairing_properties"};
  CHECK(throws_kind([&] { run_verification(cfg); }, ErrorKind::ConfigurationTooLarge));
}

TEST_CASE("fault: flipped f_a coefficient") {
  auto cfg = cfg_of(kF2Rank2);
  cfg.fault = Fault::FlipFaCoefficient;
  cfg.suites = {"f_identities", "congruences"};
  const auto rep = run_verification(cfg);
  const CheckResult* c = rep.find("f_identities/chain_vs_recursive[r=2]");
  REQUIRE(c != nullptr);
  REQUIRE(c->status == Status::Fail);
  REQUIRE(c->counterexample);
  const Json& cx = *c->counterexample;
  const UniPoly a = unipoly_from_json(cx.at("a"), cfg.fq);
  const MultiPoly stored = multipoly_from_json(cx.at("chain"));
  CHECK(!(stored == f_recursive(a, 2).poly));
  CHECK(!(stored == f_chain_sum(a, 2).poly));
  check_refails(cfg, *c);
}

TEST_CASE("fault: f_ab replaced by f_a f_b") {
  auto cfg = cfg_of(kF2Rank2);
  cfg.fault = Fault::FabAsProduct;
  cfg.suites = {"compatibility"};
  const auto rep = run_verification(cfg);
  const CheckResult* c = first_fail(rep, "compatibility/");
  REQUIRE(c != nullptr);
  REQUIRE(c->counterexample);
  const Json& cx = *c->counterexample;
  const DrinfeldModule& phi = *cfg.module;
  const UniPoly a = unipoly_from_json(cx.at("a"), cfg.fq), b = unipoly_from_json(cx.at("b"), cfg.fq);
  const UniPoly ab = a * b;
  const TorsionModule t = torsion(phi, ab);
  const auto beta = elems(cx.at("tuple"), t.level);
  for (const auto& x : beta) CHECK(t.contains(x));
  std::vector<FieldElement> moved;
  for (const auto& x : beta) moved.push_back(skew_apply(phi_image(phi, b), x));
  const SkewPoly psi_b = phi_image(det_module(phi), b);
  const FieldElement rhs = weil_evaluate(phi, a, moved);
  const WeilPairing wrong(phi, ab, f_chain_sum(a, 2).poly * f_chain_sum(b, 2).poly);
  CHECK(!(skew_apply(psi_b, wrong.value(beta)) == rhs));
  CHECK(skew_apply(psi_b, weil_evaluate(phi, ab, beta)) == rhs);
  check_refails(cfg, *c);
}

TEST_CASE("fault: sign dropped in psi") {
  auto cfg = cfg_of(kF3Rank2);
  cfg.fault = Fault::DropPsiSign;
  cfg.suites = {"pairing_properties"};
  const auto rep = run_verification(cfg);
  const CheckResult* c = rep.find("pairing_properties/multilinearity[a=T]");
  REQUIRE(c != nullptr);
  REQUIRE(c->status == Status::Fail);
  REQUIRE(c->counterexample);
  const Json& cx = *c->counterexample;
  const DrinfeldModule& phi = *cfg.module;
  const UniPoly a = unipoly_from_json(cx.at("a"), cfg.fq);
  const UniPoly b = unipoly_from_json(cx.at("b"), cfg.fq);
  const int slot = cx.at("slot").get<int>() - 1;
  const TorsionModule t = torsion(phi, a);
  auto beta = elems(cx.at("tuple"), t.level);
  const FieldElement w = weil_evaluate(phi, a, beta);
  auto moved = beta;
  moved[slot] = skew_apply(phi_image(phi, b), beta[slot]);
  const FieldElement lhs = weil_evaluate(phi, a, moved);
  const DrinfeldModule unsigned_psi(phi.base(), phi.theta(), {phi.leading()});
  CHECK(!(lhs == skew_apply(phi_image(unsigned_psi, b), w)));
  CHECK(lhs == skew_apply(phi_image(det_module(phi), b), w));
  CHECK(verifier_psi(cfg).phi_T() == unsigned_psi.phi_T());
  check_refails(cfg, *c);
  // in characteristic 2 the sign is invisible
  auto c2 = cfg_of(kF2Rank2);
  c2.fault = Fault::DropPsiSign;
  CHECK(verifier_psi(c2).phi_T() == det_module(*c2.module).phi_T());
}
