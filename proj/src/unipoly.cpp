#include "drinfeld/unipoly.hpp"

#include <numeric>
#include <sstream>

namespace drinfeld {

namespace {

// Level that holds both operands, raising LevelMismatch otherwise.
Field join(const Field& a, const Field& b) {
  if (a == b || same_level(*a, *b)) return a;
  if (is_sublevel(*a, *b)) return b;
  if (is_sublevel(*b, *a)) return a;
  raise(ErrorKind::LevelMismatch, "polynomials over incomparable levels");
}

std::string coefficient_text(const FieldElement& c) {
  std::string s = to_string(c);
  return s.find(' ') != std::string::npos ? "(" + s + ")" : s;
}

}  // namespace

UniPoly::UniPoly(Field level) : level_(std::move(level)) {}

UniPoly::UniPoly(Field level, std::vector<FieldElement> coeffs) : level_(std::move(level)), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) {
    if (c.level() != level_) c = embed(c, level_);
  }
  trim();
}

UniPoly UniPoly::from_ints(const Field& level, const std::vector<std::int64_t>& coeffs) {
  std::vector<FieldElement> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(FieldElement::from_int(level, v));
  return UniPoly(level, std::move(c));
}

UniPoly UniPoly::constant(const FieldElement& c) { return UniPoly(c.level(), {c}); }

UniPoly UniPoly::monomial(const FieldElement& c, std::size_t degree) {
  std::vector<FieldElement> v(degree + 1, FieldElement::zero(c.level()));
  v[degree] = c;
  return UniPoly(c.level(), std::move(v));
}

UniPoly UniPoly::linear(const FieldElement& root) {
  return UniPoly(root.level(), {-root, FieldElement::one(root.level())});
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool UniPoly::is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back().is_one(); }

FieldElement UniPoly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : FieldElement::zero(level_);
}

FieldElement UniPoly::lead() const { return coeffs_.empty() ? FieldElement::zero(level_) : coeffs_.back(); }

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& rhs) {
  Field L = join(level_, rhs.level_);
  if (L != level_) *this = embed(*this, L);
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), FieldElement::zero(level_));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& rhs) {
  Field L = join(level_, rhs.level_);
  if (L != level_) *this = embed(*this, L);
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), FieldElement::zero(level_));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& rhs) {
  Field L = join(level_, rhs.level_);
  if (is_zero() || rhs.is_zero()) {
    *this = UniPoly(L);
    return *this;
  }
  std::vector<FieldElement> out(coeffs_.size() + rhs.coeffs_.size() - 1, FieldElement::zero(L));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  *this = UniPoly(L, std::move(out));
  return *this;
}

UniPoly& UniPoly::operator*=(const FieldElement& c) {
  Field L = join(level_, c.level());
  if (L != level_) *this = embed(*this, L);
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

bool operator==(const UniPoly& a, const UniPoly& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
  return true;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) raise(ErrorKind::DivisionByZero, "polynomial division by zero");
  const Field L = join(a.level(), b.level());
  UniPoly rem = embed(a, L);
  const UniPoly div = embed(b, L);
  const int db = div.degree();
  if (rem.degree() < db) return {UniPoly(L), rem};
  const FieldElement inv_lead = div.lead().inverse();
  std::vector<FieldElement> quot(rem.degree() - db + 1, FieldElement::zero(L));
  std::vector<FieldElement> r = rem.coeffs();
  for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
    if (r[k].is_zero()) continue;
    const FieldElement c = r[k] * inv_lead;
    quot[k - db] = c;
    for (int t = 0; t <= db; ++t) r[k - db + t] -= c * div.coeffs()[t];
  }
  r.resize(db);
  return {UniPoly(L, std::move(quot)), UniPoly(L, std::move(r))};
}

UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.is_zero() ? x : make_monic(x);
}

FieldElement eval(const UniPoly& f, const FieldElement& x) {
  const Field L = join(f.level(), x.level());
  FieldElement acc = FieldElement::zero(L);
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

UniPoly derivative(const UniPoly& f) {
  std::vector<FieldElement> d;
  for (int i = 1; i <= f.degree(); ++i) d.push_back(f.coeffs()[i] * FieldElement::from_int(f.level(), i));
  return UniPoly(f.level(), std::move(d));
}

UniPoly make_monic(const UniPoly& f) {
  if (f.is_zero()) raise(ErrorKind::DivisionByZero, "cannot normalise the zero polynomial");
  return f * f.lead().inverse();
}

UniPoly embed(const UniPoly& f, const Field& to) {
  std::vector<FieldElement> c;
  c.reserve(f.coeffs().size());
  for (const auto& x : f.coeffs()) c.push_back(embed(x, to));
  return UniPoly(to, std::move(c));
}

UniPoly restrict_to(const UniPoly& f, const Field& lower) {
  std::vector<FieldElement> c;
  for (const auto& x : f.coeffs()) c.push_back(restrict_to(x, lower));
  return UniPoly(lower, std::move(c));
}

UniPoly powmod(const UniPoly& base, std::uint64_t exponent, const UniPoly& modulus) {
  UniPoly result = UniPoly::constant(FieldElement::one(modulus.level())) % modulus;
  UniPoly b = base % modulus;
  while (exponent > 0) {
    if (exponent & 1u) result = (result * b) % modulus;
    exponent >>= 1;
    if (exponent > 0) b = (b * b) % modulus;
  }
  return result;
}

UniPoly frobenius_powmod(const UniPoly& g, int times, const UniPoly& modulus) {
  const int steps = times * modulus.level()->absolute_degree();
  const std::uint64_t p = modulus.level()->characteristic();
  UniPoly h = g % modulus;
  for (int i = 0; i < steps; ++i) h = powmod(h, p, modulus);
  return h;
}

bool is_irreducible(const UniPoly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const UniPoly x = UniPoly::monomial(FieldElement::one(f.level()), 1);
  UniPoly h = x;
  for (int i = 1; i <= n / 2; ++i) {
    h = frobenius_powmod(h, 1, f);
    if (gcd(f, h - x).degree() > 0) return false;
  }
  return true;
}

bool is_squarefree(const UniPoly& f) {
  if (f.degree() < 1) return true;
  return gcd(f, derivative(f)).degree() == 0;
}

std::vector<FieldElement> roots_in_field(const UniPoly& f, const Field& level) {
  if (f.is_zero()) raise(ErrorKind::InvalidArgument, "roots of the zero polynomial");
  UniPoly g = embed(f, join(f.level(), level));
  std::vector<FieldElement> roots;
  if (g.degree() < 1) return roots;
  if (level->cardinality() > (1ull << 22)) raise(ErrorKind::InvalidArgument, "level too large for exhaustive root search");
  const std::uint64_t n = level->cardinality();
  for (std::uint64_t i = 0; i < n && g.degree() >= 1; ++i) {
    const FieldElement x = element_from_index(level, i);
    while (g.degree() >= 1 && eval(g, x).is_zero()) {
      roots.push_back(x);
      g = divmod(g, UniPoly::linear(x)).first;
    }
  }
  return roots;
}

std::vector<int> factor_degrees(const UniPoly& f) {
  if (f.degree() < 1) return {};
  UniPoly rem = make_monic(f);
  const UniPoly x = UniPoly::monomial(FieldElement::one(f.level()), 1);
  UniPoly h = x % rem;
  std::vector<int> degrees;
  for (int i = 1; rem.degree() > 0 && i <= f.degree(); ++i) {
    h = frobenius_powmod(h, 1, rem);
    for (UniPoly g = gcd(rem, h - x); g.degree() > 0; g = gcd(rem, h - x)) {
      for (int k = 0; k < g.degree() / i; ++k) degrees.push_back(i);
      rem = divmod(rem, g).first;
      h = h % rem;
    }
  }
  return degrees;
}

Field splitting_level(const UniPoly& f) {
  if (f.degree() < 1) raise(ErrorKind::InvalidArgument, "splitting level of a constant");
  int d = 1;
  for (int k : factor_degrees(f)) d = std::lcm(d, k);
  return d == 1 ? f.level() : extend(f.level(), d).field;
}

std::string to_string(const UniPoly& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    const FieldElement& c = f.coeffs()[i];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (i == 0) {
      os << coefficient_text(c);
    } else if (c.is_one()) {
      os << mono;
    } else {
      os << coefficient_text(c) << "*" << mono;
    }
  }
  return os.str();
}

}  // namespace drinfeld
