// drinfeld: command-line front end to the library.
//
// Exit codes: 0 ok, 1 a verification check failed, 2 malformed input or
// config, 3 a mathematical precondition failed, 4 a budget or search cap
// was exceeded.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "default_config.hpp"
#include "drinfeld/fa.hpp"
#include "drinfeld/serialize.hpp"
#include "drinfeld/torsion.hpp"
#include "drinfeld/verify.hpp"
#include "drinfeld/weil.hpp"

using namespace drinfeld;

namespace {

struct Globals {
  bool json = false;
  bool timing = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  std::optional<int> cap;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonMonic:
    case ErrorKind::NotTorsionPoint:
    case ErrorKind::InseparableTorsion:
    case ErrorKind::PointNotInModule:
    case ErrorKind::NotSquarefree:
    case ErrorKind::RationalityFailure:
    case ErrorKind::DivisionByZero:
      return 3;
    case ErrorKind::ConfigurationTooLarge:
    case ErrorKind::SearchCapExceeded:
    case ErrorKind::SearchBudget:
      return 4;
    default:
      return 2;
  }
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

// q = p^e, or ParseError.
Field field_for_q(std::uint64_t q) {
  if (q < 2) raise(ErrorKind::ParseError, "q must be a prime power");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) raise(ErrorKind::ParseError, "q = " + std::to_string(q) + " is not a prime power");
  return make_field(static_cast<std::uint32_t>(p), e);
}

// Coefficients 0 <= c < q name elements of F_q by index; others go through Z.
UniPoly poly_from_list(const Field& fq, const std::vector<std::int64_t>& coeffs) {
  std::vector<FieldElement> c;
  for (auto v : coeffs) {
    if (v >= 0 && static_cast<std::uint64_t>(v) < fq->cardinality())
      c.push_back(element_from_index(fq, static_cast<std::uint64_t>(v)));
    else
      c.push_back(FieldElement::from_int(fq, v));
  }
  UniPoly a(fq, std::move(c));
  if (a.is_zero()) raise(ErrorKind::ParseError, "the polynomial a is zero");
  return a;
}

DrinfeldModule module_argument(const std::string& arg) {
  Json j = load_json_argument(arg);
  if (j.is_object() && j.contains("module")) j = j.at("module");
  return module_from_json(j);
}

std::vector<VerificationConfig> load_configs(const std::string& path, const Globals& g) {
  auto cfgs = configs_from_json(path.empty() ? parse_json(kDefaultConfig) : load_json_argument(path));
  for (auto& c : cfgs) {
    if (g.seed) c.seed = *g.seed;
    if (g.budget) c.budget = *g.budget;
    if (g.cap) c.extension_cap = *g.cap;
  }
  return cfgs;
}

// One (module, list of a) pair to operate on, from either --config or --module/--a.
struct Job {
  std::string name;
  DrinfeldModule phi;
  DrinfeldModule psi;
  std::vector<UniPoly> polys;
  std::uint64_t seed;
  int cap;
};

std::vector<Job> jobs_for(const std::string& config, const std::string& module, const std::vector<std::int64_t>& a,
                          const Globals& g, bool det) {
  std::vector<Job> jobs;
  const std::uint64_t seed = g.seed.value_or(0);
  const int cap = g.cap.value_or(64);
  if (!module.empty()) {
    if (!config.empty()) raise(ErrorKind::ParseError, "give either --config or --module, not both");
    if (a.empty()) raise(ErrorKind::ParseError, "--module needs --a");
    DrinfeldModule phi = module_argument(module);
    jobs.push_back({"module", phi, det_module(phi), {poly_from_list(phi.fq(), a)}, seed, cap});
    return jobs;
  }
  for (auto& cfg : load_configs(config, g)) {
    if (!cfg.module) continue;
    std::vector<UniPoly> polys;
    if (!a.empty()) {
      polys.push_back(poly_from_list(cfg.fq, a));
    } else {
      polys = det && !cfg.det_polys.empty() ? cfg.det_polys : cfg.pairing_polys;
    }
    if (polys.empty()) continue;
    jobs.push_back({cfg.name, *cfg.module, verifier_psi(cfg), polys, cfg.seed, cfg.extension_cap});
  }
  if (jobs.empty()) raise(ErrorKind::ParseError, "no module with polynomials in the config");
  return jobs;
}

std::string join_elements(const std::vector<FieldElement>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
  return s;
}

// ---------------------------------------------------------------- commands

int cmd_fa(const Globals& g, std::uint64_t q, const std::vector<std::int64_t>& coeffs, int r, const std::string& route) {
  const Field fq = field_for_q(q);
  const UniPoly a = poly_from_list(fq, coeffs);
  if (r < 1) raise(ErrorKind::ParseError, "--r must be at least 1");
  std::vector<FaPoly> out;
  if (route == "chain" || route == "both") out.push_back(f_chain_sum(a, r));
  if (route == "recursive" || route == "both") out.push_back(f_recursive(a, r));
  const bool match = out.size() == 2 && out[0].poly == out[1].poly;
  if (g.json) {
    if (out.size() == 1) {
      print(fa_to_json(out[0]));
    } else {
      print(Json{{"chain", fa_to_json(out[0])}, {"recursive", fa_to_json(out[1])}, {"match", match}});
    }
  } else {
    if (out.size() == 1) {
      std::cout << to_string(out[0].poly) << "\n";
    } else {
      std::cout << "chain:     " << to_string(out[0].poly) << "\n"
                << "recursive: " << to_string(out[1].poly) << "\n"
                << (match ? "match" : "mismatch") << "\n";
    }
  }
  return out.size() == 2 && !match ? 1 : 0;
}

std::vector<FieldElement> parse_points(const std::string& text, const Field& level) {
  std::vector<FieldElement> pts;
  if (!text.empty() && text.front() == '[') {
    const Json j = parse_json(text);
    for (const auto& e : j) pts.push_back(element_from_json(e, level));
    return pts;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::uint64_t idx = 0;
    try {
      idx = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) raise(ErrorKind::ParseError, "bad point index '" + item + "'");
    if (idx >= level->cardinality()) raise(ErrorKind::ParseError, "point index " + item + " outside the torsion level");
    pts.push_back(element_from_index(level, idx));
  }
  return pts;
}

int cmd_weil(const Globals& g, const std::string& module, const std::vector<std::int64_t>& coeffs,
             const std::string& eval) {
  const DrinfeldModule phi = module_argument(module);
  const UniPoly a = poly_from_list(phi.fq(), coeffs);
  if (eval.empty()) {
    const QPowerPoly W = weil_polynomial(phi, a);
    if (g.json) {
      print(Json{{"a", unipoly_to_json(a)}, {"module", module_to_json(phi)}, {"polynomial", qpower_to_json(W)}});
    } else {
      std::cout << to_string(W) << "\n";
    }
    return 0;
  }
  const TorsionModule t = torsion(phi, a, g.cap.value_or(64));
  const auto beta = parse_points(eval, t.level);
  if (static_cast<int>(beta.size()) != phi.rank())
    raise(ErrorKind::ArityMismatch, "--eval needs " + std::to_string(phi.rank()) + " points");
  const WeilPairing W(phi, a);
  const FieldElement v = W.evaluate(beta);  // throws unless v is killed by psi_a
  if (g.json) {
    Json pts = Json::array();
    for (const auto& b : beta) pts.push_back(element_to_json(b));
    print(Json{{"a", unipoly_to_json(a)},
               {"level", field_to_json(t.level)},
               {"points", pts},
               {"value", element_to_json(v)},
               {"in_psi_a", true}});
  } else {
    std::cout << to_string(v) << "\n"
              << "psi_a kills the value: it lies in psi[a]\n";
  }
  return 0;
}

int cmd_torsion(const Globals& g, const std::vector<Job>& jobs) {
  Json all = Json::array();
  for (const auto& job : jobs) {
    std::mt19937_64 rng(job.seed);
    for (const auto& a : job.polys) {
      TorsionModule t = torsion(job.phi, a, job.cap);
      if (is_squarefree(a) && t.size() <= (1u << 16)) torsion_a_basis(t, rng);
      if (g.json) {
        Json j = torsion_to_json(t);
        j["name"] = job.name;
        j["points"] = t.size();
        all.push_back(j);
        continue;
      }
      std::cout << job.name << ": phi[" << to_string(a) << "]\n"
                << "  extension degree over K: " << t.extension_degree << "\n"
                << "  level: " << field_to_json(t.level).dump() << "\n"
                << "  F_q-dimension: " << t.dimension() << "\n"
                << "  points: " << t.size() << "\n"
                << "  F_q-basis: " << join_elements(t.fq_basis) << "\n";
      if (t.a_basis) std::cout << "  A/aA-basis: " << join_elements(*t.a_basis) << "\n";
    }
  }
  if (g.json) print(all);
  return 0;
}

int cmd_galois_det(const Globals& g, const std::vector<Job>& jobs) {
  Json all = Json::array();
  bool mismatch = false;
  for (const auto& job : jobs) {
    for (const auto& a : job.polys) {
      std::mt19937_64 rng(job.seed);
      const auto rows = galois_det_table(job.phi, job.psi, a, rng, job.cap);
      Json jr = Json::array();
      if (!g.json) std::cout << job.name << ": a = " << to_string(a) << "\n";
      for (const auto& row : rows) {
        const bool ok = row.det == row.psi_scalar;
        mismatch |= !ok;
        if (g.json) {
          jr.push_back(Json{{"k", row.k},
                            {"det", unipoly_to_json(row.det)},
                            {"psi_scalar", unipoly_to_json(row.psi_scalar)},
                            {"equal", ok}});
        } else {
          std::cout << "  sigma^" << row.k << ": det = " << to_string(row.det)
                    << ", psi scalar = " << to_string(row.psi_scalar) << (ok ? "" : "  MISMATCH") << "\n";
        }
      }
      if (g.json) all.push_back(Json{{"name", job.name}, {"a", unipoly_to_json(a)}, {"rows", jr}});
    }
  }
  if (g.json) print(all);
  return mismatch ? 1 : 0;
}

int cmd_verify(const Globals& g, const std::string& config, const std::string& fault,
               const std::vector<std::string>& suites) {
  auto cfgs = load_configs(config, g);
  for (auto& c : cfgs) {
    if (!fault.empty()) c.fault = fault_from_string(fault);
    if (!suites.empty()) c.suites = suites;
  }
  const VerificationReport rep = run_verification(cfgs);
  if (g.json) {
    print(rep.to_json(g.timing));
  } else {
    for (const auto& c : rep.checks) {
      std::cout << to_string(c.status) << "  " << c.name;
      if (g.timing) std::cout << "  (" << static_cast<long long>(c.millis) << " ms)";
      if (!c.note.empty()) std::cout << "  " << c.note;
      std::cout << "\n";
      if (c.counterexample) std::cout << "      counterexample: " << c.counterexample->dump() << "\n";
    }
    std::cout << rep.count(Status::Pass) << " passed, " << rep.count(Status::Fail) << " failed, "
              << rep.count(Status::Skipped) << " skipped; digest " << rep.config_digest << "\n";
  }
  return rep.any_fail() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit Weil pairing for Drinfeld modules over finite fields"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed = 0, budget = 0;
  int cap = 0;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_flag("--timing", g.timing, "Include per-check timings");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for all randomness (default 0)");
  auto* budget_opt = app.add_option("--budget", budget, "Evaluation budget for exhaustive scans");
  auto* cap_opt = app.add_option("--cap", cap, "Extension-degree search cap")->check(CLI::PositiveNumber);

  std::uint64_t q = 2;
  std::vector<std::int64_t> a;
  int r = 1;
  std::string route = "chain";
  auto* fa = app.add_subcommand("fa", "Compute the polynomial f_a in F_q[T1..Tr]")->fallthrough();
  fa->add_option("--q", q, "Size of F_q")->required();
  fa->add_option("--a", a, "Coefficients of a, constant term first")->required()->delimiter(',');
  fa->add_option("--r", r, "Rank")->required();
  fa->add_option("--route", route, "chain, recursive or both")->check(CLI::IsMember({"chain", "recursive", "both"}));

  std::string module, eval, config, fault;
  std::vector<std::string> suites;
  auto* weil = app.add_subcommand("weil", "Weil pairing polynomial, or its value at torsion points")->fallthrough();
  weil->add_option("--module", module, "Module JSON, inline or a file")->required();
  weil->add_option("--a", a, "Coefficients of a, constant term first")->required()->delimiter(',');
  weil->add_option("--eval", eval, "r points of phi[a]: element indices in the torsion level, or a JSON array");

  auto* tors = app.add_subcommand("torsion", "Describe phi[a]")->fallthrough();
  tors->add_option("--config", config, "Config JSON (default: the bundled configs)");
  tors->add_option("--module", module, "Module JSON, inline or a file");
  tors->add_option("--a", a, "Coefficients of a")->delimiter(',');

  auto* gdet = app.add_subcommand("galois-det", "Compare det of the Galois action with the rank-1 module")->fallthrough();
  gdet->add_option("--config", config, "Config JSON (default: the bundled configs)");
  gdet->add_option("--module", module, "Module JSON, inline or a file");
  gdet->add_option("--a", a, "Coefficients of a")->delimiter(',');

  auto* ver = app.add_subcommand("verify", "Run the property suites")->fallthrough();
  ver->add_option("--config", config, "Config JSON (default: the bundled configs)");
  ver->add_option("--fault", fault, "Inject a fault")
      ->check(CLI::IsMember({"none", "drop_psi_sign", "fab_as_product", "flip_fa_coefficient"}));
  ver->add_option("--suite", suites, "Restrict to these suites")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (*seed_opt) g.seed = seed;
  if (*budget_opt) g.budget = budget;
  if (*cap_opt) g.cap = cap;

  try {
    if (*fa) return cmd_fa(g, q, a, r, route);
    if (*weil) return cmd_weil(g, module, a, eval);
    if (*tors) return cmd_torsion(g, jobs_for(config, module, a, g, false));
    if (*gdet) return cmd_galois_det(g, jobs_for(config, module, a, g, true));
    if (*ver) return cmd_verify(g, config, fault, suites);
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
