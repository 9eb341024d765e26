#include "drinfeld/skew.hpp"

#include <sstream>

namespace drinfeld {

SkewPoly::SkewPoly(Field level) : level_(std::move(level)) {}

SkewPoly::SkewPoly(Field level, std::vector<FieldElement> coeffs) : level_(std::move(level)), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_)
    if (c.level() != level_) c = embed(c, level_);
  trim();
}

SkewPoly SkewPoly::constant(const FieldElement& c) { return SkewPoly(c.level(), {c}); }

SkewPoly SkewPoly::monomial(const FieldElement& c, std::size_t i) {
  std::vector<FieldElement> v(i + 1, FieldElement::zero(c.level()));
  v[i] = c;
  return SkewPoly(c.level(), std::move(v));
}

void SkewPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement SkewPoly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : FieldElement::zero(level_);
}

FieldElement SkewPoly::lead() const { return coeffs_.empty() ? FieldElement::zero(level_) : coeffs_.back(); }

SkewPoly& SkewPoly::operator+=(const SkewPoly& rhs) {
  if (!same_level(*level_, *rhs.level_)) raise(ErrorKind::LevelMismatch, "skew polynomials over different levels");
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), FieldElement::zero(level_));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

SkewPoly& SkewPoly::operator-=(const SkewPoly& rhs) {
  if (!same_level(*level_, *rhs.level_)) raise(ErrorKind::LevelMismatch, "skew polynomials over different levels");
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), FieldElement::zero(level_));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

SkewPoly& SkewPoly::operator*=(const FieldElement& c) {
  for (auto& x : coeffs_) x = c * x;
  for (auto& x : coeffs_)
    if (x.level() != level_) x = restrict_to(x, level_);
  trim();
  return *this;
}

bool operator==(const SkewPoly& a, const SkewPoly& b) { return a.coeffs_ == b.coeffs_; }

SkewPoly skew_mul(const SkewPoly& f, const SkewPoly& g) {
  if (!same_level(*f.level(), *g.level())) raise(ErrorKind::LevelMismatch, "skew polynomials over different levels");
  const Field& L = f.level();
  if (f.is_zero() || g.is_zero()) return SkewPoly(L);
  std::vector<FieldElement> out(f.coeffs().size() + g.coeffs().size() - 1, FieldElement::zero(L));
  // twisted[i][j] = g_j^(q^i)
  std::vector<FieldElement> twisted = g.coeffs();
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i > 0)
      for (auto& x : twisted) x = frobenius_pow(x, 1);
    if (f.coeffs()[i].is_zero()) continue;
    for (std::size_t j = 0; j < twisted.size(); ++j) out[i + j] += f.coeffs()[i] * twisted[j];
  }
  return SkewPoly(L, std::move(out));
}

FieldElement skew_apply(const SkewPoly& f, const FieldElement& beta) {
  if (!is_sublevel(*f.level(), *beta.level()))
    raise(ErrorKind::LevelMismatch, "argument does not lie above the coefficient level");
  FieldElement acc = FieldElement::zero(beta.level());
  FieldElement power = beta;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i > 0) power = frobenius_pow(power, 1);
    if (!f.coeffs()[i].is_zero()) acc += f.coeffs()[i] * power;
  }
  return acc;
}

std::string to_string(const SkewPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    const FieldElement& c = f.coeffs()[i];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    std::string cs = to_string(c);
    if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
    const std::string mono = i == 1 ? "tau" : "tau^" + std::to_string(i);
    if (i == 0)
      os << cs;
    else if (c.is_one())
      os << mono;
    else
      os << cs << "*" << mono;
  }
  return os.str();
}

}  // namespace drinfeld
