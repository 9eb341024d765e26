// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "drinfeld/fa.hpp"
#include "drinfeld/torsion.hpp"
#include "drinfeld/verify.hpp"
#include "drinfeld/weil.hpp"

using namespace drinfeld;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const char* kGridQ2 = R"({"name": "grid_q2", "field": {"p": 2}, "f_grid": {"max_degree": 3, "ranks": [1, 2, 3]}})";
const char* kGridQ3 = R"({"name": "grid_q3", "field": {"p": 3}, "f_grid": {"max_degree": 3, "ranks": [1, 2, 3]}})";

const char* kF2Rank2 = R"({
  "name": "f2_rank2",
  "module": {"K": {"p": 2, "tower": []}, "theta": 1, "g": [1, 1]},
  "pairing": [[0, 1], [1, 1, 1]],
  "compatibility": [[[0, 1], [0, 1]], [[0, 1], [1, 1, 1]]],
  "leading_term": [[0, 1], [1, 1], [0, 0, 1], [1, 1, 1], [1, 1, 0, 1]],
  "det": [[0, 1], [1, 1, 1]]
})";

// g_2 = y generates F_4^x
const char* kF4Rank2 = R"({
  "name": "f4_rank2",
  "module": {"K": {"p": 2, "base": 0, "tower": [{"degree": 2, "modulus": [1, 1, 1]}]}, "theta": [0, 1], "g": [1, [0, 1]]},
  "pairing": [[0, 1]],
  "leading_term": [[0, 1], [0, 0, 1], [1, 1, 1]]
})";

const char* kF2Rank3 = R"({
  "name": "f2_rank3",
  "module": {"K": {"p": 2, "tower": []}, "theta": 1, "g": [1, 0, 1]},
  "pairing": [[0, 1]],
  "leading_term": [[0, 1], [0, 0, 1], [1, 1, 1]]
})";

// theta = 2 generates F_3^x
const char* kF3Rank2 = R"({
  "name": "f3_rank2",
  "module": {"K": {"p": 3, "tower": []}, "theta": 2, "g": [1, 1]},
  "pairing": [[0, 1]],
  "leading_term": [[0, 1], [2, 1], [0, 0, 1], [2, 1, 1], [2, 1, 0, 1]],
  "det": [[0, 1], [2, 1, 1]],
  "nonmonic": {"c": [2], "polys": [[0, 1], [2, 1, 1]]}
})";

const char* kF3Rank3 = R"({
  "name": "f3_rank3",
  "module": {"K": {"p": 3, "tower": []}, "theta": 2, "g": [0, 0, 1]},
  "leading_term": [[0, 1], [0, 0, 1]],
  "nonmonic": {"c": [2], "polys": [[0, 1]]}
})";

VerificationConfig cfg_of(const char* text) { return config_from_json(parse_json(text)); }

VerificationReport run(VerificationConfig cfg, std::vector<std::string> suites) {
  cfg.suites = std::move(suites);
  return run_verification(cfg);
}

// Every check whose name starts with one of the prefixes must pass, and at least `min` must match.
struct Gate {
  bool ok = true;
  std::string why;
  void need(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
  void all_pass(const VerificationReport& rep, const std::string& tag, const std::vector<std::string>& prefixes,
                std::size_t min) {
    std::size_t seen = 0;
    for (const auto& c : rep.checks)
      for (const auto& p : prefixes)
        if (c.name.rfind(p, 0) == 0) {
          ++seen;
          need(c.status == Status::Pass, tag + ": " + c.name + " is " + to_string(c.status));
        }
    need(seen >= min, tag + ": expected >= " + std::to_string(min) + " checks, found " + std::to_string(seen));
  }
};

int failures = 0;

void report(int id, const char* title, const Gate& g, const std::string& detail) {
  if (!g.ok) ++failures;
  std::printf("criterion %2d %s  %s  (%s)\n", id, g.ok ? "PASS" : "FAIL", title, g.ok ? detail.c_str() : g.why.c_str());
  std::fflush(stdout);
}

std::string fixed(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

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

}  // namespace

int main() {
  try {
    const auto q2 = cfg_of(kGridQ2), q3 = cfg_of(kGridQ3);
    const std::vector<std::string> closed = {"f_identities/closed_form_power", "f_identities/closed_form_quadratic",
                                             "f_identities/closed_form_cubic_rank3", "f_identities/closed_form_rank2"};

    // 1-4 share the grid runs
    const auto t_grid = Clock::now();
    const VerificationReport g2 = run(q2, {"f_identities"}), g3 = run(q3, {"f_identities"});
    const double grid_s = seconds_since(t_grid);
    {
      Gate g;
      std::size_t n2 = 0, n3 = 0;
      for (int d = 1; d <= 3; ++d) {
        n2 += monic_polys(q2.fq, d).size();
        n3 += monic_polys(q3.fq, d).size();
      }
      g.need(n2 == 14 && n3 == 39, "grid sizes " + std::to_string(n2) + ", " + std::to_string(n3));
      for (const auto* rep : {&g2, &g3}) {
        g.all_pass(*rep, "dual", {"f_identities/chain_vs_recursive"}, 3);
        g.all_pass(*rep, "closed forms", closed, 3);
        g.all_pass(*rep, "degree", {"f_identities/degree_bound"}, 3);
        for (const char* name : {"f_identities/closed_form_rank2[r=2]", "f_identities/closed_form_cubic_rank3[r=3]",
                                 "f_identities/closed_form_quadratic[r=3]", "f_identities/closed_form_power[r=3]"}) {
          const CheckResult* c = rep->find(name);
          g.need(c && c->status == Status::Pass, std::string(name) + " missing or not passing");
        }
      }
      const Field F2 = q2.fq;
      const UniPoly a(F2, {FieldElement::one(F2), FieldElement::one(F2), FieldElement::one(F2)});
      g.need(to_string(f_chain_sum(a, 2).poly) == "T1 + T2 + 1", "f_{T^2+T+1} for r = 2");
      g.need(grid_s < 10.0, "grid took " + fixed(grid_s));
      report(1, "chain sum = recursion = closed forms", g, "14 + 39 polynomials, r = 1..3, " + fixed(grid_s));
    }
    {
      const auto t0 = Clock::now();
      const VerificationReport c2 = run(q2, {"congruences"}), c3 = run(q3, {"congruences"});
      const double s = seconds_since(t0);
      Gate g;
      for (const auto* rep : {&c2, &c3}) g.all_pass(*rep, "congruences", {"congruences/"}, 6);
      g.need(s < 30.0, "congruences took " + fixed(s));
      const CheckResult* peel = c3.find("congruences/root_peeling[r=3]");
      report(2, "shift and root-peeling congruences mod I", g, (peel ? peel->note : std::string()) + ", " + fixed(s));
    }
    {
      Gate g;
      for (const auto* rep : {&g2, &g3}) {
        g.all_pass(*rep, "symmetry", {"f_identities/symmetry"}, 3);
        g.all_pass(*rep, "root order", {"f_identities/root_order"}, 3);
      }
      report(3, "symmetry in T_1..T_r and independence of root order", g, "all of S_r, >= 10 root labellings");
    }
    {
      Gate g;
      for (const auto* rep : {&g2, &g3}) g.all_pass(*rep, "rationality", {"f_identities/rationality"}, 3);
      report(4, "f_a has coefficients in F_q", g, "53 polynomials x 3 ranks");
    }

    const auto f2r2 = cfg_of(kF2Rank2), f4r2 = cfg_of(kF4Rank2), f2r3 = cfg_of(kF2Rank3), f3r2 = cfg_of(kF3Rank2),
               f3r3 = cfg_of(kF3Rank3);
    {
      const auto t0 = Clock::now();
      Gate g;
      for (const auto* cfg : {&f2r2, &f2r3, &f3r2, &f3r3}) {
        const auto rep = run(*cfg, {"leading_term"});
        const std::size_t n = cfg->leading_polys.size();
        g.all_pass(rep, cfg->name, {"leading_term/degree_bound"}, n);
        g.all_pass(rep, cfg->name, {"leading_term/split"}, n);
        // a linear a has n - 1 = 0, so at least one split must carry a nontrivial power
        bool deep = false;
        for (const auto& a : cfg->leading_polys) deep = deep || a.degree() >= 2;
        g.need(deep, cfg->name + ": no polynomial of degree >= 2");
      }
      const auto rep4 = run(f4r2, {"leading_term"});
      g.all_pass(rep4, "f4_rank2", {"leading_term/degree_bound"}, f4r2.leading_polys.size());
      const double s = seconds_since(t0);
      g.need(s < 60.0, "leading-term suites took " + fixed(s));
      report(5, "degree bound and leading block g_r^(n-1) W^(r-1)", g,
             "4 modules with g_r in F_q; degree bound also on f4_rank2; " + fixed(s));
    }
    {
      const auto t0 = Clock::now();
      Gate g;
      const std::vector<std::string> props = {"codomain", "multilinearity", "alternating",
                                              "surjectivity", "nondegeneracy", "galois_invariance"};
      struct Case {
        const VerificationConfig* cfg;
        std::vector<std::string> tags;
      };
      for (const Case& c : {Case{&f2r2, {"[a=T]", "[a=T^2+T+1]"}}, Case{&f4r2, {"[a=T]"}}, Case{&f2r3, {"[a=T]"}}}) {
        const auto rep = run(*c.cfg, {"pairing_properties"});
        for (const auto& tag : c.tags)
          for (const auto& p : props) {
            const std::string name = "pairing_properties/" + p + tag;
            const CheckResult* r = rep.find(name);
            g.need(r && r->status == Status::Pass, c.cfg->name + ": " + name + " missing or not passing");
          }
      }
      const double s = seconds_since(t0);
      g.need(s < 120.0, "pairing suites took " + fixed(s));
      report(6, "pairing: codomain, multilinearity, alternating, surjective, nondegenerate, Galois", g,
             "f2_rank2 a=T,T^2+T+1; f4_rank2 a=T; f2_rank3 a=T; " + fixed(s));
    }
    {
      const auto t0 = Clock::now();
      Gate g;
      const auto rep = run(f2r2, {"compatibility"});
      for (const char* name : {"compatibility/psi_b_W_ab[a=T,b=T]", "compatibility/psi_b_W_ab[a=T,b=T^2+T+1]"}) {
        const CheckResult* r = rep.find(name);
        g.need(r && r->status == Status::Pass, std::string(name) + " missing or not passing");
        g.need(r && r->note.find("exhaustive") != std::string::npos, std::string(name) + " was sampled");
      }
      const DrinfeldModule& phi = *f2r2.module;
      const Field F2 = f2r2.fq;
      const auto one = FieldElement::one(F2), zero = FieldElement::zero(F2);
      const UniPoly T(F2, {zero, one}), Q(F2, {one, one, one});
      const std::size_t n1 = torsion(phi, T * T).size(), n2 = torsion(phi, T * Q).size();
      g.need(n1 == 16 && n2 == 64, "torsion sizes " + std::to_string(n1) + ", " + std::to_string(n2));
      const double s = seconds_since(t0);
      g.need(s < 300.0, "compatibility took " + fixed(s));
      report(7, "psi_b(W_ab) = W_a(phi_b .)", g, "16 and 64 points per slot, exhaustive, " + fixed(s));
    }
    {
      const auto t0 = Clock::now();
      Gate g;
      for (const auto* cfg : {&f2r2, &f3r2}) {
        const auto rep = run(*cfg, {"det_representation"});
        g.all_pass(rep, cfg->name, {"det_representation/"}, 2 * cfg->det_polys.size());
      }
      const double s = seconds_since(t0);
      g.need(s < 60.0, "det suites took " + fixed(s));
      report(8, "det rho_phi = rho_psi on every power of Frobenius", g, "f2_rank2 and f3_rank2 with theta = 2, " + fixed(s));
    }
    {
      Gate g;
      std::size_t tuples = 0;
      for (const auto* cfg : {&f3r2, &f3r3}) {
        const auto rep = run(*cfg, {"nonmonic_scaling"});
        g.all_pass(rep, cfg->name, {"nonmonic_scaling/"}, cfg->nonmonic_polys.size());
        // direct form: W_{2a} = 2^(r-1) W_a
        const DrinfeldModule& phi = *cfg->module;
        const int r = phi.rank();
        const FieldElement two = FieldElement::one(cfg->fq) + FieldElement::one(cfg->fq);
        const FieldElement factor = two.pow(r - 1);
        for (const auto& a : cfg->nonmonic_polys) {
          const TorsionModule t = torsion(phi, a);
          const WeilPairing W(phi, a);
          for_each_tuple(t.points(), r, [&](const std::vector<FieldElement>& beta) {
            ++tuples;
            g.need(weil_nonmonic(phi, a * two, beta) == embed(factor, t.level) * W.evaluate(beta),
                   cfg->name + ": W_{2a} != 2^(r-1) W_a");
          });
        }
      }
      report(9, "non-monic scaling W_{ca} = c^(r-1) W_a, c = 2, q = 3", g,
             "r = 2 and r = 3, " + std::to_string(tuples) + " direct tuples");
    }
    {
      Gate g;
      struct Mut {
        Fault fault;
        const VerificationConfig* cfg;
        std::vector<std::string> suites;
      };
      std::string seen;
      for (const Mut& m : {Mut{Fault::FlipFaCoefficient, &q2, {"f_identities", "congruences"}},
                           Mut{Fault::FabAsProduct, &f2r2, {"compatibility"}},
                           Mut{Fault::DropPsiSign, &f3r2, {"pairing_properties"}}}) {
        VerificationConfig cfg = *m.cfg;
        cfg.fault = m.fault;
        const auto rep = run(cfg, m.suites);
        const CheckResult* hit = nullptr;
        for (const auto& c : rep.checks)
          if (c.status == Status::Fail && c.counterexample) {
            hit = &c;
            break;
          }
        g.need(hit != nullptr, to_string(m.fault) + ": no FAIL with a counterexample");
        if (!hit) continue;
        // the counterexample is reproducible by the failing suite alone
        const auto again = run(cfg, {hit->name.substr(0, hit->name.find('/'))});
        const CheckResult* same = again.find(hit->name);
        g.need(same && same->status == Status::Fail && same->counterexample &&
                   same->counterexample->dump() == hit->counterexample->dump(),
               to_string(m.fault) + ": counterexample not reproduced");
        if (!seen.empty()) seen += "; ";
        seen += to_string(m.fault) + " -> " + hit->name;
      }
      report(10, "each planted fault is caught with a counterexample", g, seen);
    }
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
