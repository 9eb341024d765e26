#include "drinfeld/qpower.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "drinfeld/matrix.hpp"

namespace drinfeld {

QPowerPoly::QPowerPoly(int vars, Field level) : vars_(vars), level_(std::move(level)) {
  if (vars < 1) raise(ErrorKind::ArityMismatch, "a q-power polynomial needs at least one variable");
}

FieldElement QPowerPoly::coefficient(const Exponents& frob) const {
  auto it = terms_.find(frob);
  return it == terms_.end() ? FieldElement::zero(level_) : it->second;
}

void QPowerPoly::add_term(const Exponents& frob, const FieldElement& c) {
  if (static_cast<int>(frob.size()) != vars_) raise(ErrorKind::ArityMismatch, "exponent tuple of wrong length");
  if (c.is_zero()) return;
  if (!is_sublevel(*c.level(), *level_)) {
    if (!is_sublevel(*level_, *c.level())) raise(ErrorKind::LevelMismatch, "coefficient in an unrelated level");
    for (auto& [e, v] : terms_) v = embed(v, c.level());
    level_ = c.level();
  }
  auto [it, inserted] = terms_.try_emplace(frob, embed(c, level_));
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int QPowerPoly::max_frob(int var) const {
  int m = -1;
  for (const auto& [e, c] : terms_) m = std::max(m, static_cast<int>(e[var]));
  return m;
}

FieldElement QPowerPoly::eval(std::span<const FieldElement> x) const {
  if (static_cast<int>(x.size()) != vars_) raise(ErrorKind::ArityMismatch, "wrong number of arguments");
  Field L = level_;
  for (const auto& v : x)
    if (!is_sublevel(*v.level(), *L)) L = v.level();
  // powers[i][j] = x_i^(q^j), filled lazily up to the needed j
  std::vector<std::vector<FieldElement>> powers(vars_);
  for (int i = 0; i < vars_; ++i) powers[i].push_back(embed(x[i], L));
  FieldElement acc = FieldElement::zero(L);
  for (const auto& [e, c] : terms_) {
    FieldElement t = embed(c, L);
    for (int i = 0; i < vars_; ++i) {
      while (powers[i].size() <= e[i]) powers[i].push_back(frobenius_pow(powers[i].back(), 1));
      t *= powers[i][e[i]];
    }
    acc += t;
  }
  return acc;
}

QPowerPoly& QPowerPoly::operator+=(const QPowerPoly& rhs) {
  if (rhs.vars_ != vars_) raise(ErrorKind::ArityMismatch, "variable counts differ");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

QPowerPoly& QPowerPoly::operator*=(const FieldElement& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  QPowerPoly out(vars_, level_);
  for (const auto& [e, v] : terms_) out.add_term(e, v * c);
  *this = std::move(out);
  return *this;
}

bool operator==(const QPowerPoly& a, const QPowerPoly& b) {
  if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [e, c] : a.terms_) {
    if (it->first != e || !(it->second == c)) return false;
    ++it;
  }
  return true;
}

QPowerPoly moore_poly(int r, const Field& level) {
  QPowerPoly m(r, level);
  std::vector<std::uint32_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0u);
  do {
    int inversions = 0;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        if (perm[i] > perm[j]) ++inversions;
    const FieldElement one = FieldElement::one(level);
    m.add_term(perm, inversions % 2 ? -one : one);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return m;
}

FieldElement moore_eval(std::span<const FieldElement> beta) {
  if (beta.empty()) raise(ErrorKind::ArityMismatch, "Moore determinant of no arguments");
  Field L = beta.front().level();
  for (const auto& b : beta)
    if (!is_sublevel(*b.level(), *L)) L = b.level();
  const std::size_t r = beta.size();
  MatrixFq m(r, r, L);
  for (std::size_t i = 0; i < r; ++i) {
    FieldElement x = embed(beta[i], L);
    for (std::size_t j = 0; j < r; ++j) {
      m.set(i, j, x);
      if (j + 1 < r) x = frobenius_pow(x, 1);
    }
  }
  return determinant(m);
}

QPowerPoly coefficient_block(const QPowerPoly& p, int var, int frob) {
  if (p.vars() < 2) raise(ErrorKind::ArityMismatch, "block extraction needs two or more variables");
  QPowerPoly out(p.vars() - 1, p.level());
  for (const auto& [e, c] : p.terms()) {
    if (static_cast<int>(e[var]) != frob) continue;
    Exponents rest = e;
    rest.erase(rest.begin() + var);
    out.add_term(rest, c);
  }
  return out;
}

std::string to_string(const QPowerPoly& p) {
  if (p.is_zero()) return "0";
  const std::uint64_t q = p.level()->q();
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    std::string cs = to_string(c);
    if (!c.is_one()) os << (cs.find(' ') != std::string::npos ? "(" + cs + ")" : cs) << "*";
    for (int i = 0; i < p.vars(); ++i) {
      if (i) os << "*";
      os << "x" << i + 1;
      if (e[i] == 1) os << "^" << q;
      if (e[i] > 1) os << "^(" << q << "^" << e[i] << ")";
    }
  }
  return os.str();
}

}  // namespace drinfeld
