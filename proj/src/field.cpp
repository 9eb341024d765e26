#include "drinfeld/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "drinfeld/unipoly.hpp"

namespace drinfeld {

Field make_prime_field(std::uint32_t p);
Field adjoin(const Field& below, std::vector<std::uint32_t> modulus, bool is_base);

namespace {

using Digit = std::uint32_t;

bool block_is_zero(const Digit* a, int width) {
  return std::all_of(a, a + width, [](Digit d) { return d == 0; });
}

// out = a * b at level L; all three are abs_degree(L) digits.
void mul_digits(const FieldCtx& L, const Digit* a, const Digit* b, Digit* out) {
  const std::uint64_t p = L.characteristic();
  if (L.is_prime()) {
    out[0] = static_cast<Digit>(static_cast<std::uint64_t>(a[0]) * b[0] % p);
    return;
  }
  const FieldCtx& B = *L.below();
  const int d = L.degree();
  const int w = B.absolute_degree();
  const auto& mod = L.modulus();

  if (w == 1) {
    std::vector<std::uint64_t> prod(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
    for (int k = 2 * d - 2; k >= d; --k) {
      const std::uint64_t c = prod[k] % p;
      if (c == 0) continue;
      for (int t = 0; t < d; ++t) {
        const std::uint64_t s = c * mod[t] % p;
        prod[k - d + t] = (prod[k - d + t] + p - s) % p;
      }
    }
    for (int i = 0; i < d; ++i) out[i] = static_cast<Digit>(prod[i] % p);
    return;
  }

  std::vector<Digit> prod(static_cast<std::size_t>(2 * d - 1) * w, 0);
  std::vector<Digit> tmp(w);
  auto add_block = [&](Digit* dst, const Digit* src) {
    for (int t = 0; t < w; ++t) dst[t] = static_cast<Digit>((dst[t] + src[t]) % p);
  };
  auto sub_block = [&](Digit* dst, const Digit* src) {
    for (int t = 0; t < w; ++t) dst[t] = static_cast<Digit>((dst[t] + p - src[t]) % p);
  };
  for (int i = 0; i < d; ++i) {
    if (block_is_zero(a + i * w, w)) continue;
    for (int j = 0; j < d; ++j) {
      if (block_is_zero(b + j * w, w)) continue;
      mul_digits(B, a + i * w, b + j * w, tmp.data());
      add_block(prod.data() + (i + j) * w, tmp.data());
    }
  }
  for (int k = 2 * d - 2; k >= d; --k) {
    const Digit* c = prod.data() + k * w;
    if (block_is_zero(c, w)) continue;
    std::vector<Digit> coef(c, c + w);
    for (int t = 0; t < d; ++t) {
      if (block_is_zero(mod.data() + t * w, w)) continue;
      mul_digits(B, coef.data(), mod.data() + t * w, tmp.data());
      sub_block(prod.data() + (k - d + t) * w, tmp.data());
    }
  }
  std::copy(prod.begin(), prod.begin() + d * w, out);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

// Brings both operands to one level; returns the chosen level.
Field join_levels(const FieldElement& a, const FieldElement& b) {
  if (!a.valid() || !b.valid()) raise(ErrorKind::InvalidArgument, "operation on an uninitialised field element");
  const Field& la = a.level();
  const Field& lb = b.level();
  if (la == lb || same_level(*la, *lb)) return la;
  if (is_sublevel(*la, *lb)) return lb;
  if (is_sublevel(*lb, *la)) return la;
  raise(ErrorKind::LevelMismatch, "operands live in incomparable tower levels");
}

UniPoly modulus_poly(const FieldCtx& L) {
  const Field& B = L.below();
  const int w = B->absolute_degree();
  std::vector<FieldElement> c;
  for (int i = 0; i <= L.degree(); ++i) {
    c.emplace_back(B, std::vector<Digit>(L.modulus().begin() + i * w, L.modulus().begin() + (i + 1) * w));
  }
  return UniPoly(B, std::move(c));
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldCtx

FieldCtx::FieldCtx(Key, std::uint32_t p) : p_(p), q_(p) { signature_ = {p, 0u}; }

FieldCtx::FieldCtx(Key, Field below, std::vector<std::uint32_t> modulus, bool is_base)
    : p_(below->p_), below_(std::move(below)), modulus_(std::move(modulus)) {
  const int w = below_->abs_degree_;
  degree_ = static_cast<int>(modulus_.size()) / w - 1;
  abs_degree_ = degree_ * w;
  height_ = below_->height_ + 1;
  if (is_base) {
    base_height_ = height_;
    q_ = 1;
    for (int i = 0; i < abs_degree_; ++i) q_ *= p_;
  } else {
    base_height_ = below_->base_height_;
    q_ = below_->q_;
  }
  signature_ = below_->signature_;
  signature_.push_back(static_cast<std::uint32_t>(degree_));
  signature_.push_back(static_cast<std::uint32_t>(base_height_));
  signature_.insert(signature_.end(), modulus_.begin(), modulus_.end());
}

bool FieldCtx::cardinality_fits() const noexcept {
  double bits = abs_degree_ * std::log2(static_cast<double>(p_));
  return bits < 63.0;
}

std::uint64_t FieldCtx::cardinality() const {
  if (!cardinality_fits()) raise(ErrorKind::InvalidArgument, "field too large to enumerate");
  std::uint64_t n = 1;
  for (int i = 0; i < abs_degree_; ++i) n *= p_;
  return n;
}

Field make_prime_field(std::uint32_t p) { return std::make_shared<const FieldCtx>(FieldCtx::Key{}, p); }

Field adjoin(const Field& below, std::vector<std::uint32_t> modulus, bool is_base) {
  return std::make_shared<const FieldCtx>(FieldCtx::Key{}, below, std::move(modulus), is_base);
}

bool same_level(const FieldCtx& a, const FieldCtx& b) noexcept {
  return &a == &b || a.signature() == b.signature();
}

bool is_sublevel(const FieldCtx& lower, const FieldCtx& upper) noexcept {
  const FieldCtx* cur = &upper;
  while (cur->height() > lower.height()) cur = cur->below().get();
  return cur->height() == lower.height() && same_level(*cur, lower);
}

Field level_at_height(const Field& level, int height) {
  if (height < 0 || height > level->height()) raise(ErrorKind::InvalidArgument, "no tower level at that height");
  Field cur = level;
  while (cur->height() > height) cur = cur->below();
  return cur;
}

Field base_field(const Field& level) { return level_at_height(level, level->base_height()); }

int degree_over(const FieldCtx& upper, const FieldCtx& lower) {
  if (!is_sublevel(lower, upper)) raise(ErrorKind::LevelMismatch, "not a sublevel");
  return upper.absolute_degree() / lower.absolute_degree();
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(Field level, std::vector<std::uint32_t> digits)
    : level_(std::move(level)), digits_(std::move(digits)) {
  if (!level_) raise(ErrorKind::InvalidArgument, "null level");
  if (static_cast<int>(digits_.size()) != level_->absolute_degree())
    raise(ErrorKind::WrongLength, "digit count does not match the level degree");
  const auto p = level_->characteristic();
  for (auto& d : digits_) d %= p;
}

FieldElement FieldElement::zero(const Field& level) {
  return FieldElement(level, std::vector<Digit>(level->absolute_degree(), 0));
}

FieldElement FieldElement::one(const Field& level) { return from_int(level, 1); }

FieldElement FieldElement::from_int(const Field& level, std::int64_t value) {
  std::vector<Digit> d(level->absolute_degree(), 0);
  const auto p = static_cast<std::int64_t>(level->characteristic());
  d[0] = static_cast<Digit>(((value % p) + p) % p);
  return FieldElement(level, std::move(d));
}

bool FieldElement::is_zero() const noexcept {
  return std::all_of(digits_.begin(), digits_.end(), [](Digit d) { return d == 0; });
}

bool FieldElement::is_one() const noexcept {
  return !digits_.empty() && digits_[0] == 1 &&
         std::all_of(digits_.begin() + 1, digits_.end(), [](Digit d) { return d == 0; });
}

std::vector<FieldElement> FieldElement::coeffs() const {
  if (level_->is_prime()) return {*this};
  const Field& B = level_->below();
  const int w = B->absolute_degree();
  std::vector<FieldElement> out;
  out.reserve(level_->degree());
  for (int i = 0; i < level_->degree(); ++i)
    out.emplace_back(B, std::vector<Digit>(digits_.begin() + i * w, digits_.begin() + (i + 1) * w));
  return out;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  const auto p = level_->characteristic();
  for (auto& d : r.digits_) d = d == 0 ? 0 : p - d;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  Field L = join_levels(*this, rhs);
  if (L != level_) *this = embed(*this, L);
  const auto p = level_->characteristic();
  const auto rd = rhs.digits();
  for (std::size_t i = 0; i < rd.size(); ++i) digits_[i] = (digits_[i] + rd[i]) % p;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  Field L = join_levels(*this, rhs);
  if (L != level_) *this = embed(*this, L);
  const auto p = level_->characteristic();
  const auto rd = rhs.digits();
  for (std::size_t i = 0; i < rd.size(); ++i) digits_[i] = (digits_[i] + p - rd[i]) % p;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  Field L = join_levels(*this, rhs);
  FieldElement b = rhs.level() == L || same_level(*rhs.level(), *L) ? rhs : embed(rhs, L);
  FieldElement a = level_ == L ? *this : embed(*this, L);
  std::vector<Digit> out(L->absolute_degree());
  mul_digits(*L, a.digits_.data(), b.digits_.data(), out.data());
  level_ = L;
  digits_ = std::move(out);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) { return *this *= rhs.inverse(); }

FieldElement FieldElement::inverse() const {
  if (is_zero()) raise(ErrorKind::DivisionByZero, "inverse of zero");
  if (level_->is_prime()) {
    return from_int(level_, static_cast<std::int64_t>(inverse_mod(digits_[0], level_->characteristic())));
  }
  // Extended Euclid in B[y] against the modulus.
  const Field& B = level_->below();
  UniPoly r0 = modulus_poly(*level_);
  UniPoly r1(B, coeffs());
  UniPoly s0(B);
  UniPoly s1 = UniPoly::constant(FieldElement::one(B));
  while (!r1.is_zero()) {
    auto [quot, rem] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    UniPoly next = s0 - quot * s1;
    s0 = std::move(s1);
    s1 = std::move(next);
  }
  // r0 is a nonzero constant because the modulus is irreducible.
  const FieldElement c_inv = r0.lead().inverse();
  std::vector<Digit> out(level_->absolute_degree(), 0);
  const int w = B->absolute_degree();
  for (int i = 0; i <= s0.degree(); ++i) {
    FieldElement c = s0.coeff(i) * c_inv;
    std::copy(c.digits().begin(), c.digits().end(), out.begin() + i * w);
  }
  return FieldElement(level_, std::move(out));
}

FieldElement FieldElement::pow(std::uint64_t exponent) const {
  FieldElement result = one(level_);
  FieldElement base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  if (a.level_ == b.level_ || same_level(*a.level_, *b.level_)) return a.digits_ == b.digits_;
  if (is_sublevel(*a.level_, *b.level_)) return embed(a, b.level_).digits_ == b.digits_;
  if (is_sublevel(*b.level_, *a.level_)) return a.digits_ == embed(b, a.level_).digits_;
  return false;
}

std::size_t FieldElementHash::operator()(const FieldElement& x) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto d : x.digits()) h = (h ^ d) * 1099511628211ull;
  return h;
}

FieldElement embed(const FieldElement& x, const Field& to) {
  if (x.level() == to || same_level(*x.level(), *to)) return FieldElement(to, {x.digits().begin(), x.digits().end()});
  if (!is_sublevel(*x.level(), *to)) raise(ErrorKind::LevelMismatch, "cannot embed into a level that does not contain it");
  std::vector<Digit> d(to->absolute_degree(), 0);
  std::copy(x.digits().begin(), x.digits().end(), d.begin());
  return FieldElement(to, std::move(d));
}

bool lies_in(const FieldElement& x, const FieldCtx& lower) {
  if (!is_sublevel(lower, *x.level())) return false;
  const auto d = x.digits();
  return std::all_of(d.begin() + lower.absolute_degree(), d.end(), [](Digit v) { return v == 0; });
}

FieldElement restrict_to(const FieldElement& x, const Field& lower) {
  if (!lies_in(x, *lower)) raise(ErrorKind::LevelMismatch, "element does not lie in the requested subfield");
  return FieldElement(lower, {x.digits().begin(), x.digits().begin() + lower->absolute_degree()});
}

FieldElement frobenius_pow(const FieldElement& x, std::uint64_t k) {
  const FieldCtx& L = *x.level();
  if (L.height() <= L.base_height()) return x;
  const std::uint64_t order = static_cast<std::uint64_t>(degree_over(L, *base_field(x.level())));
  k %= order;
  FieldElement r = x;
  for (std::uint64_t i = 0; i < k; ++i) r = r.pow(L.q());
  return r;
}

std::vector<FieldElement> as_vector(const FieldElement& x, const Field& over) {
  if (!is_sublevel(*over, *x.level())) raise(ErrorKind::LevelMismatch, "coordinates requested over a level that is not below");
  const int w = over->absolute_degree();
  const int n = x.level()->absolute_degree() / w;
  std::vector<FieldElement> out;
  out.reserve(n);
  const auto d = x.digits();
  for (int i = 0; i < n; ++i) out.emplace_back(over, std::vector<Digit>(d.begin() + i * w, d.begin() + (i + 1) * w));
  return out;
}

FieldElement from_vector(std::span<const FieldElement> coords, const Field& level) {
  if (coords.empty()) raise(ErrorKind::WrongLength, "empty coordinate vector");
  const Field& over = coords.front().level();
  if (!is_sublevel(*over, *level)) raise(ErrorKind::LevelMismatch, "coordinates do not lie below the target level");
  const int n = level->absolute_degree() / over->absolute_degree();
  if (static_cast<int>(coords.size()) != n) raise(ErrorKind::WrongLength, "coordinate vector has the wrong length");
  std::vector<Digit> d;
  d.reserve(level->absolute_degree());
  for (const auto& c : coords) {
    if (!same_level(*c.level(), *over)) raise(ErrorKind::LevelMismatch, "mixed coordinate levels");
    d.insert(d.end(), c.digits().begin(), c.digits().end());
  }
  return FieldElement(level, std::move(d));
}

std::uint64_t element_index(const FieldElement& x) {
  const std::uint64_t p = x.level()->characteristic();
  if (!x.level()->cardinality_fits()) raise(ErrorKind::InvalidArgument, "field too large to index");
  std::uint64_t idx = 0;
  const auto d = x.digits();
  for (auto it = d.rbegin(); it != d.rend(); ++it) idx = idx * p + *it;
  return idx;
}

FieldElement element_from_index(const Field& level, std::uint64_t index) {
  if (index >= level->cardinality()) raise(ErrorKind::InvalidArgument, "element index out of range");
  const std::uint64_t p = level->characteristic();
  std::vector<Digit> d(level->absolute_degree());
  for (auto& v : d) {
    v = static_cast<Digit>(index % p);
    index /= p;
  }
  return FieldElement(level, std::move(d));
}

std::vector<FieldElement> all_elements(const Field& level) {
  const std::uint64_t n = level->cardinality();
  std::vector<FieldElement> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(element_from_index(level, i));
  return out;
}

FieldElement random_element(const Field& level, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, level->characteristic() - 1);
  std::vector<Digit> d(level->absolute_degree());
  for (auto& v : d) v = dist(rng);
  return FieldElement(level, std::move(d));
}

std::string to_string(const FieldElement& x) {
  if (!x.valid()) return "<invalid>";
  if (x.level()->is_prime()) return std::to_string(x.digits()[0]);
  const auto cs = x.coeffs();
  const std::string gen = "y" + std::to_string(x.level()->height());
  std::vector<std::string> parts;
  for (int i = static_cast<int>(cs.size()) - 1; i >= 0; --i) {
    if (cs[i].is_zero()) continue;
    std::string c = to_string(cs[i]);
    const bool compound = !cs[i].level()->is_prime() && c.find(' ') != std::string::npos;
    std::string mono = i == 0 ? "" : (i == 1 ? gen : gen + "^" + std::to_string(i));
    if (i == 0) {
      parts.push_back(c);
    } else if (cs[i].is_one()) {
      parts.push_back(mono);
    } else {
      parts.push_back((compound ? "(" + c + ")" : c) + "*" + mono);
    }
  }
  if (parts.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " + " : "") << parts[i];
  return os.str();
}

// ---------------------------------------------------------------------------
// Construction

std::vector<FieldElement> first_irreducible(const Field& level, int m) {
  if (m < 1) raise(ErrorKind::InvalidDegree, "extension degree must be at least 1");
  const std::uint64_t Q = level->cardinality();
  std::vector<std::uint64_t> counter(m, 0);
  while (true) {
    std::vector<FieldElement> c;
    c.reserve(m + 1);
    for (int i = 0; i < m; ++i) c.push_back(element_from_index(level, counter[i]));
    c.push_back(FieldElement::one(level));
    UniPoly f(level, c);
    if ((m == 1 || !c[0].is_zero()) && is_irreducible(f)) return c;
    int i = 0;
    while (i < m && ++counter[i] == Q) counter[i++] = 0;
    if (i == m) raise(ErrorKind::SearchBudget, "no irreducible polynomial found");
  }
}

namespace {

std::vector<Digit> flatten(const std::vector<FieldElement>& coeffs) {
  std::vector<Digit> flat;
  for (const auto& c : coeffs) flat.insert(flat.end(), c.digits().begin(), c.digits().end());
  return flat;
}

std::vector<FieldElement> checked_modulus(const Field& level, int m, const std::vector<FieldElement>& modulus) {
  if (static_cast<int>(modulus.size()) != m + 1)
    raise(ErrorKind::InvalidModulus, "modulus degree differs from the extension degree");
  std::vector<FieldElement> c;
  c.reserve(modulus.size());
  for (const auto& x : modulus) c.push_back(embed(x, level));
  if (!c.back().is_one()) raise(ErrorKind::InvalidModulus, "modulus is not monic");
  if (!is_irreducible(UniPoly(level, c))) raise(ErrorKind::ReducibleModulus, "supplied modulus factors");
  return c;
}

}  // namespace

Field make_field(std::uint32_t p, int e, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) raise(ErrorKind::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  if (p > (1u << 20)) raise(ErrorKind::InvalidArgument, "characteristic too large");
  if (e < 1) raise(ErrorKind::InvalidDegree, "field degree must be at least 1");
  Field fp = make_prime_field(p);
  if (e == 1) {
    if (modulus && !(modulus->size() == 2 && (*modulus)[1] % p == 1))
      raise(ErrorKind::InvalidModulus, "modulus for a prime field must be monic linear");
    return fp;
  }
  std::vector<FieldElement> c;
  if (modulus) {
    std::vector<FieldElement> given;
    for (auto v : *modulus) given.push_back(FieldElement::from_int(fp, v));
    c = checked_modulus(fp, e, given);
  } else {
    c = first_irreducible(fp, e);
  }
  return adjoin(fp, flatten(c), /*is_base=*/true);
}

Extension extend(const Field& base, int m, std::optional<std::vector<FieldElement>> modulus) {
  if (m < 1) raise(ErrorKind::InvalidDegree, "extension degree must be at least 1");
  std::vector<FieldElement> c = modulus ? checked_modulus(base, m, *modulus) : first_irreducible(base, m);
  Field f = adjoin(base, flatten(c), /*is_base=*/false);
  return {f, Embedding{base, f}};
}

Field extend_as_fq(const Field& below, int m, std::optional<std::vector<FieldElement>> modulus) {
  if (m < 1) raise(ErrorKind::InvalidDegree, "extension degree must be at least 1");
  std::vector<FieldElement> c = modulus ? checked_modulus(below, m, *modulus) : first_irreducible(below, m);
  return adjoin(below, flatten(c), /*is_base=*/true);
}

}  // namespace drinfeld
