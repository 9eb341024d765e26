#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/serialize.hpp"
#include "drinfeld/unipoly.hpp"

namespace drinfeld {

/// Deliberate defects for mutation runs.
enum class Fault {
  None,
  /// psi_T = theta + g_r tau, sign omitted.
  DropPsiSign,
  /// f_{ab} replaced by f_a f_b in the compatibility suite.
  FabAsProduct,
  /// 1 added to the T_1^(n-1) coefficient of every chain-sum f_a.
  FlipFaCoefficient,
};

std::string to_string(Fault f);
Fault fault_from_string(const std::string& s);

struct FGrid {
  int max_degree = 3;
  std::vector<int> ranks{1, 2, 3};
};

struct VerificationConfig {
  std::string name = "config";
  Field fq;
  std::optional<DrinfeldModule> module;
  std::vector<UniPoly> pairing_polys;
  std::vector<std::pair<UniPoly, UniPoly>> compat_pairs;
  std::vector<UniPoly> leading_polys;
  std::vector<UniPoly> det_polys;
  std::optional<FGrid> f_grid;
  std::vector<FieldElement> nonmonic_scalars;
  std::vector<UniPoly> nonmonic_polys;
  int trials = 30;
  std::uint64_t seed = 0;
  int extension_cap = 64;
  std::uint64_t budget = 10'000'000;
  std::uint64_t sample_tuples = 10'000;
  /// Empty means every suite the config has data for.
  std::vector<std::string> suites;
  Fault fault = Fault::None;
  /// The JSON this config was read from, used for the digest.
  Json source;
};

VerificationConfig config_from_json(const Json& j);
/// A bundle is either one config object or {"configs": [...]}.
std::vector<VerificationConfig> configs_from_json(const Json& j);

enum class Status { Pass, Fail, Skipped };
std::string to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  std::optional<Json> counterexample;
  std::string note;
  double millis = 0;
};

struct VerificationReport {
  std::string config_digest;
  std::vector<CheckResult> checks;

  bool any_fail() const;
  std::size_t count(Status s) const;
  const CheckResult* find(const std::string& name) const;
  Json to_json(bool timing = false) const;
};

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& text);

using SuiteResult = std::vector<CheckResult>;

SuiteResult verify_f_identities(const VerificationConfig& cfg);
SuiteResult verify_congruences(const VerificationConfig& cfg);
SuiteResult verify_pairing_properties(const VerificationConfig& cfg);
SuiteResult verify_compatibility(const VerificationConfig& cfg);
SuiteResult verify_leading_term(const VerificationConfig& cfg);
SuiteResult verify_det_representation(const VerificationConfig& cfg);
SuiteResult verify_nonmonic_scaling(const VerificationConfig& cfg);

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& suite, const VerificationConfig& cfg);

/// Runs the selected suites; checks are sorted by name.
VerificationReport run_verification(const VerificationConfig& cfg);
/// Several configs merged into one report; names get a "config:" prefix.
VerificationReport run_verification(const std::vector<VerificationConfig>& cfgs);

/// psi as the verifier sees it (honouring DropPsiSign).
DrinfeldModule verifier_psi(const VerificationConfig& cfg);

/// Every monic polynomial of degree d over fq, in base-q index order.
std::vector<UniPoly> monic_polys(const Field& fq, int d);

/// Independent closed forms for f_a; nullopt where one does not apply.
std::optional<MultiPoly> closed_form_power(const UniPoly& a, int r);      // a = T^n
std::optional<MultiPoly> closed_form_quadratic(const UniPoly& a, int r);  // n = 2
std::optional<MultiPoly> closed_form_cubic_rank3(const UniPoly& a, int r);
std::optional<MultiPoly> closed_form_rank2(const UniPoly& a, int r);

}  // namespace drinfeld

#include <random>

#include "drinfeld/torsion.hpp"

namespace drinfeld {

/// One row of the det(rho_phi) = rho_psi comparison.
struct GaloisDetRow {
  std::uint64_t k = 0;
  AModMatrix matrix;
  UniPoly det;
  UniPoly psi_scalar;
};

/// Rows for k = 0 .. lcm(order on phi[a], order on psi[a]) - 1.
std::vector<GaloisDetRow> galois_det_table(const DrinfeldModule& phi, const DrinfeldModule& psi, const UniPoly& a,
                                           std::mt19937_64& rng, int cap = 64);

}  // namespace drinfeld
