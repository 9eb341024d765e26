#include "drinfeld/multipoly.hpp"

#include <numeric>
#include <sstream>

namespace drinfeld {

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da > db;
  return a > b;
}

MultiPoly::MultiPoly(int vars, Field level) : vars_(vars), level_(std::move(level)) {
  if (vars < 1) raise(ErrorKind::ArityMismatch, "a multivariate polynomial needs at least one variable");
}

MultiPoly MultiPoly::constant(int vars, const FieldElement& c) {
  MultiPoly p(vars, c.level());
  p.add_term(Exponents(vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int vars, const Field& level, int index) {
  MultiPoly p(vars, level);
  Exponents e(vars, 0);
  e.at(index) = 1;
  p.add_term(e, FieldElement::one(level));
  return p;
}

MultiPoly MultiPoly::linear(int vars, int index, const FieldElement& c) {
  MultiPoly p = variable(vars, c.level(), index);
  p.add_term(Exponents(vars, 0), -c);
  return p;
}

MultiPoly MultiPoly::univariate(int vars, int index, const UniPoly& f) {
  MultiPoly p(vars, f.level());
  for (int i = 0; i <= f.degree(); ++i) {
    Exponents e(vars, 0);
    e.at(index) = static_cast<std::uint32_t>(i);
    p.add_term(e, f.coeffs()[i]);
  }
  return p;
}

FieldElement MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? FieldElement::zero(level_) : it->second;
}

void MultiPoly::promote(const Field& to) {
  if (to == level_ || same_level(*to, *level_)) return;
  if (!is_sublevel(*level_, *to)) raise(ErrorKind::LevelMismatch, "polynomials over incomparable levels");
  for (auto& [e, c] : terms_) c = embed(c, to);
  level_ = to;
}

void MultiPoly::add_term(const Exponents& e, const FieldElement& c) {
  if (static_cast<int>(e.size()) != vars_) raise(ErrorKind::ArityMismatch, "exponent tuple has the wrong length");
  if (c.is_zero()) return;
  if (!is_sublevel(*c.level(), *level_)) promote(c.level());
  auto [it, inserted] = terms_.try_emplace(e, c.level() == level_ ? c : embed(c, level_));
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int MultiPoly::degree_in(int index) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.at(index)));
  return d;
}

int MultiPoly::total_degree() const {
  return terms_.empty() ? -1 : static_cast<int>(std::accumulate(terms_.begin()->first.begin(), terms_.begin()->first.end(), 0u));
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  if (rhs.vars_ != vars_) raise(ErrorKind::ArityMismatch, "variable counts differ");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  if (!is_sublevel(*rhs.level_, *level_)) promote(rhs.level_);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  if (rhs.vars_ != vars_) raise(ErrorKind::ArityMismatch, "variable counts differ");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  if (!is_sublevel(*rhs.level_, *level_)) promote(rhs.level_);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ != b.vars_) raise(ErrorKind::ArityMismatch, "variable counts differ");
  Field L = is_sublevel(*a.level_, *b.level_) ? b.level_ : a.level_;
  if (!is_sublevel(*b.level_, *L)) raise(ErrorKind::LevelMismatch, "polynomials over incomparable levels");
  MultiPoly out(a.vars_, L);
  Exponents e(a.vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) { return *this = *this * rhs; }

MultiPoly& MultiPoly::operator*=(const FieldElement& c) {
  if (!is_sublevel(*c.level(), *level_)) promote(c.level());
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
  auto ib = b.terms_.begin();
  for (auto ia = a.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  return true;
}

MultiPoly normal_form(const MultiPoly& p, const IdealI& ideal) {
  if (ideal.vars != p.vars()) raise(ErrorKind::ArityMismatch, "ideal and polynomial disagree on variable count");
  const int n = ideal.a.degree();
  if (n < 1) raise(ErrorKind::InvalidDegree, "ideal generator must have positive degree");
  Field L = is_sublevel(*ideal.a.level(), *p.level()) ? p.level() : ideal.a.level();
  const UniPoly a = embed(ideal.a, L);

  // T^e mod a for every exponent that occurs.
  std::uint32_t max_e = 0;
  for (const auto& [e, c] : p.terms())
    for (auto x : e) max_e = std::max(max_e, x);
  std::vector<UniPoly> power_rem;
  power_rem.reserve(max_e + 1);
  const UniPoly t = UniPoly::monomial(FieldElement::one(L), 1);
  power_rem.push_back(UniPoly::constant(FieldElement::one(L)) % a);
  for (std::uint32_t k = 1; k <= max_e; ++k) power_rem.push_back((power_rem.back() * t) % a);

  MultiPoly out(p.vars(), L);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(p.vars(), c.level() == L ? c : embed(c, L));
    for (int j = 0; j < p.vars(); ++j) {
      if (e[j] < static_cast<std::uint32_t>(n)) {
        Exponents ej(p.vars(), 0);
        ej[j] = e[j];
        MultiPoly mono(p.vars(), L);
        mono.add_term(ej, FieldElement::one(L));
        term *= mono;
      } else {
        term *= MultiPoly::univariate(p.vars(), j, power_rem[e[j]]);
      }
    }
    out += term;
  }
  return out;
}

MultiPoly permute_vars(const MultiPoly& p, const std::vector<int>& sigma) {
  const int r = p.vars();
  if (static_cast<int>(sigma.size()) != r) raise(ErrorKind::ArityMismatch, "permutation size differs from variable count");
  std::vector<bool> seen(r, false);
  for (int s : sigma) {
    if (s < 0 || s >= r || seen[s]) raise(ErrorKind::InvalidArgument, "not a permutation");
    seen[s] = true;
  }
  MultiPoly out(r, p.level());
  Exponents f(r);
  for (const auto& [e, c] : p.terms()) {
    for (int i = 0; i < r; ++i) f[sigma[i]] = e[i];
    out.add_term(f, c);
  }
  return out;
}

MultiPoly widen(const MultiPoly& p, int vars) {
  if (vars < p.vars()) raise(ErrorKind::ArityMismatch, "cannot drop variables");
  MultiPoly out(vars, p.level());
  for (const auto& [e, c] : p.terms()) {
    Exponents f(e);
    f.resize(vars, 0);
    out.add_term(f, c);
  }
  return out;
}

MultiPoly embed(const MultiPoly& p, const Field& to) {
  MultiPoly out(p.vars(), to);
  for (const auto& [e, c] : p.terms()) out.add_term(e, embed(c, to));
  return out;
}

MultiPoly restrict_to(const MultiPoly& p, const Field& lower) {
  MultiPoly out(p.vars(), lower);
  for (const auto& [e, c] : p.terms()) out.add_term(e, restrict_to(c, lower));
  return out;
}

std::string to_string(const MultiPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::string f = var + std::to_string(i + 1);
      if (e[i] > 1) f += "^" + std::to_string(e[i]);
      factors.push_back(f);
    }
    std::string coeff = to_string(c);
    if (coeff.find(' ') != std::string::npos) coeff = "(" + coeff + ")";
    if (factors.empty()) {
      os << coeff;
      continue;
    }
    if (!c.is_one()) os << coeff << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
  }
  return os.str();
}

}  // namespace drinfeld
