#include "drinfeld/serialize.hpp"

#include <fstream>
#include <sstream>

namespace drinfeld {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) raise(ErrorKind::ParseError, std::string("missing key '") + key + "'");
  return j.at(key);
}

std::int64_t as_int(const Json& j) {
  if (!j.is_number_integer()) raise(ErrorKind::ParseError, "expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

std::vector<std::uint32_t> exps_from_json(const Json& j, int vars) {
  if (!j.is_array() || static_cast<int>(j.size()) != vars)
    raise(ErrorKind::ArityMismatch, "exponent tuple must have length " + std::to_string(vars));
  std::vector<std::uint32_t> e;
  for (const auto& v : j) {
    const auto x = as_int(v);
    if (x < 0) raise(ErrorKind::ParseError, "negative exponent");
    e.push_back(static_cast<std::uint32_t>(x));
  }
  return e;
}

int vars_from_json(const Json& j) {
  const auto v = as_int(member(j, "vars"));
  if (v < 1 || v > 64) raise(ErrorKind::ParseError, "vars out of range");
  return static_cast<int>(v);
}

}  // namespace

Json field_to_json(const Field& level) {
  std::vector<Field> chain;
  for (Field cur = level; cur->height() > 0; cur = cur->below()) chain.push_back(cur);
  Json tower = Json::array();
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const Field& L = *it;
    const Field& below = L->below();
    const int w = below->absolute_degree();
    Json mod = Json::array();
    for (int b = 0; b <= L->degree(); ++b) {
      std::vector<std::uint32_t> d(L->modulus().begin() + b * w, L->modulus().begin() + (b + 1) * w);
      mod.push_back(element_to_json(FieldElement(below, std::move(d))));
    }
    tower.push_back(Json{{"degree", L->degree()}, {"modulus", mod}});
  }
  return Json{{"p", level->characteristic()}, {"base", level->base_height()}, {"tower", tower}};
}

Field field_from_json(const Json& j) {
  const auto p = as_int(member(j, "p"));
  if (p < 2 || p > (1 << 20)) raise(p < 2 ? ErrorKind::NonPrimeCharacteristic : ErrorKind::InvalidArgument,
                                    "characteristic out of range");
  const Json empty = Json::array();
  const Json& tower = j.contains("tower") ? j.at("tower") : empty;
  if (!tower.is_array()) raise(ErrorKind::ParseError, "tower must be an array");
  const auto base = j.contains("base") ? as_int(j.at("base")) : (tower.empty() ? 0 : 1);
  if (base < 0 || base > static_cast<std::int64_t>(tower.size())) raise(ErrorKind::ParseError, "base out of range");
  Field L = make_field(static_cast<std::uint32_t>(p), 1);
  for (std::size_t h = 0; h < tower.size(); ++h) {
    const Json& entry = tower[h];
    const auto degree = as_int(member(entry, "degree"));
    std::optional<std::vector<FieldElement>> mod;
    if (entry.contains("modulus")) {
      const Json& m = entry.at("modulus");
      if (!m.is_array()) raise(ErrorKind::ParseError, "modulus must be an array");
      std::vector<FieldElement> c;
      for (const auto& x : m) c.push_back(element_from_json(x, L));
      mod = std::move(c);
    }
    const bool marks = static_cast<std::int64_t>(h + 1) == base;
    L = marks ? extend_as_fq(L, static_cast<int>(degree), mod) : extend(L, static_cast<int>(degree), mod).field;
  }
  return L;
}

Json element_to_json(const FieldElement& x) {
  if (x.level()->is_prime()) return x.digits()[0];
  Json a = Json::array();
  for (const auto& c : x.coeffs()) a.push_back(element_to_json(c));
  return a;
}

FieldElement element_from_json(const Json& j, const Field& level) {
  if (j.is_number_integer()) return FieldElement::from_int(level, j.get<std::int64_t>());
  if (!j.is_array()) raise(ErrorKind::ParseError, "element must be an integer or an array, got " + j.dump());
  if (level->is_prime()) raise(ErrorKind::WrongLength, "prime-field element given as an array");
  if (static_cast<int>(j.size()) != level->degree())
    raise(ErrorKind::WrongLength, "element needs " + std::to_string(level->degree()) + " coefficients");
  std::vector<std::uint32_t> digits;
  for (const auto& c : j) {
    const FieldElement e = element_from_json(c, level->below());
    digits.insert(digits.end(), e.digits().begin(), e.digits().end());
  }
  return FieldElement(level, std::move(digits));
}

Json unipoly_to_json(const UniPoly& f) {
  Json c = Json::array();
  for (const auto& x : f.coeffs()) c.push_back(element_to_json(x));
  return Json{{"level", field_to_json(f.level())}, {"coeffs", c}};
}

UniPoly unipoly_from_json(const Json& j, const Field& fallback) {
  const bool bare = j.is_array();
  const Field L = bare ? fallback : field_from_json(member(j, "level"));
  const Json& c = bare ? j : member(j, "coeffs");
  if (!c.is_array()) raise(ErrorKind::ParseError, "coeffs must be an array");
  std::vector<FieldElement> v;
  for (const auto& x : c) v.push_back(element_from_json(x, L));
  return UniPoly(L, std::move(v));
}

Json multipoly_to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"exps", e}, {"coeff", element_to_json(c)}});
  return Json{{"vars", p.vars()}, {"level", field_to_json(p.level())}, {"terms", terms}};
}

MultiPoly multipoly_from_json(const Json& j) {
  const int vars = vars_from_json(j);
  const Field L = field_from_json(member(j, "level"));
  MultiPoly p(vars, L);
  for (const auto& t : member(j, "terms")) p.add_term(exps_from_json(member(t, "exps"), vars), element_from_json(member(t, "coeff"), L));
  return p;
}

Json qpower_to_json(const QPowerPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"frob_exps", e}, {"coeff", element_to_json(c)}});
  return Json{{"vars", p.vars()}, {"level", field_to_json(p.level())}, {"terms", terms}};
}

QPowerPoly qpower_from_json(const Json& j) {
  const int vars = vars_from_json(j);
  const Field L = field_from_json(member(j, "level"));
  QPowerPoly p(vars, L);
  for (const auto& t : member(j, "terms"))
    p.add_term(exps_from_json(member(t, "frob_exps"), vars), element_from_json(member(t, "coeff"), L));
  return p;
}

Json fa_to_json(const FaPoly& f) {
  Json j = multipoly_to_json(f.poly);
  j["a"] = unipoly_to_json(f.a);
  j["r"] = f.rank;
  j["route"] = to_string(f.route);
  return j;
}

Json module_to_json(const DrinfeldModule& phi) {
  Json g = Json::array();
  for (const auto& c : phi.g()) g.push_back(element_to_json(c));
  return Json{{"K", field_to_json(phi.base())}, {"theta", element_to_json(phi.theta())}, {"g", g}};
}

DrinfeldModule module_from_json(const Json& j) {
  const Field K = field_from_json(member(j, "K"));
  const FieldElement theta = element_from_json(member(j, "theta"), K);
  const Json& g = member(j, "g");
  if (!g.is_array()) raise(ErrorKind::ParseError, "g must be an array");
  std::vector<FieldElement> coeffs;
  for (const auto& c : g) coeffs.push_back(element_from_json(c, K));
  return DrinfeldModule(K, theta, std::move(coeffs));
}

Json torsion_to_json(const TorsionModule& t) {
  Json basis = Json::array();
  for (const auto& b : t.fq_basis) basis.push_back(element_to_json(b));
  Json j{{"a", unipoly_to_json(t.a)},
         {"level", field_to_json(t.level)},
         {"extension_degree_over_K", t.extension_degree},
         {"fq_basis", basis}};
  if (t.a_basis) {
    Json ab = Json::array();
    for (const auto& b : *t.a_basis) ab.push_back(element_to_json(b));
    j["a_basis"] = ab;
  }
  return j;
}

TorsionModule torsion_from_json(const Json& j, const DrinfeldModule& phi) {
  const UniPoly a = restrict_to(unipoly_from_json(member(j, "a"), phi.fq()), phi.fq());
  const Field L = field_from_json(member(j, "level"));
  if (!is_sublevel(*phi.base(), *L)) raise(ErrorKind::LevelMismatch, "torsion level does not contain K");
  TorsionModule t{a, phi, L, static_cast<int>(as_int(member(j, "extension_degree_over_K"))), {}, std::nullopt};
  for (const auto& b : member(j, "fq_basis")) t.fq_basis.push_back(element_from_json(b, L));
  if (j.contains("a_basis")) {
    std::vector<FieldElement> ab;
    for (const auto& b : j.at("a_basis")) ab.push_back(element_from_json(b, L));
    t.a_basis = std::move(ab);
  }
  const SkewPoly fa = phi_image(phi, a);
  for (const auto& b : t.fq_basis)
    if (!skew_apply(fa, b).is_zero()) raise(ErrorKind::NotTorsionPoint, "serialized basis point is not in phi[a]");
  return t;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

Json load_json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json(arg);
  std::ifstream in(arg);
  if (!in) raise(ErrorKind::ParseError, "cannot open " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

}  // namespace drinfeld
