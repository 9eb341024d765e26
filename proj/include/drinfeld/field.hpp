#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "drinfeld/error.hpp"

namespace drinfeld {

class FieldCtx;
class FieldElement;

/// Shared handle to an immutable tower level.
using Field = std::shared_ptr<const FieldCtx>;

/// One level of a tower F_p = L_0 < L_1 < ... of finite fields.
///
/// Level h > 0 is L_{h-1}[y_h] / (m_h(y_h)) for a monic irreducible m_h.  One
/// level of every tower is distinguished as F_q, the field whose q-power
/// Frobenius plays the role of tau; it is the level returned by make_field.
/// Elements are stored flattened to F_p digits but the layout is nested: an
/// element of L_h is `degree()` consecutive blocks, each one an element of
/// L_{h-1}.
class FieldCtx {
  struct Key {
    explicit Key() = default;
  };

 public:
  FieldCtx(Key, std::uint32_t p);
  FieldCtx(Key, Field below, std::vector<std::uint32_t> modulus, bool is_base);

  std::uint32_t characteristic() const noexcept { return p_; }
  /// Degree over the level directly below (1 for the prime field).
  int degree() const noexcept { return degree_; }
  /// Degree over F_p; also the number of stored digits per element.
  int absolute_degree() const noexcept { return abs_degree_; }
  int height() const noexcept { return height_; }
  /// Height of the F_q level of this tower.
  int base_height() const noexcept { return base_height_; }
  std::uint64_t q() const noexcept { return q_; }
  bool is_prime() const noexcept { return height_ == 0; }
  const Field& below() const noexcept { return below_; }
  /// Monic modulus over the level below, flattened: (degree + 1) blocks.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  /// Structural fingerprint; two levels are the same field iff equal.
  const std::vector<std::uint32_t>& signature() const noexcept { return signature_; }

  /// Number of elements. Throws InvalidArgument if it does not fit in 63 bits.
  std::uint64_t cardinality() const;
  bool cardinality_fits() const noexcept;

  friend Field make_prime_field(std::uint32_t p);
  friend Field adjoin(const Field& below, std::vector<std::uint32_t> modulus, bool is_base);

 private:
  std::uint32_t p_;
  int degree_ = 1;
  int abs_degree_ = 1;
  int height_ = 0;
  int base_height_ = 0;
  std::uint64_t q_ = 0;
  Field below_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> signature_;
};

bool same_level(const FieldCtx& a, const FieldCtx& b) noexcept;
/// True if `lower` is `upper` or one of the levels beneath it.
bool is_sublevel(const FieldCtx& lower, const FieldCtx& upper) noexcept;
/// The level at `height` in the tower of `level` (height <= level->height()).
Field level_at_height(const Field& level, int height);
/// The F_q level of the tower containing `level`.
Field base_field(const Field& level);
/// [upper : lower]; throws LevelMismatch if lower is not a sublevel.
int degree_over(const FieldCtx& upper, const FieldCtx& lower);

bool is_prime(std::uint64_t n) noexcept;

/// An element of one tower level.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Field level, std::vector<std::uint32_t> digits);

  static FieldElement zero(const Field& level);
  static FieldElement one(const Field& level);
  /// The image of an integer under Z -> F_p -> level.
  static FieldElement from_int(const Field& level, std::int64_t value);

  const Field& level() const noexcept { return level_; }
  bool valid() const noexcept { return static_cast<bool>(level_); }
  std::span<const std::uint32_t> digits() const noexcept { return digits_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Coefficients over the level below (length degree()); for the prime field
  /// this is the element itself.
  std::vector<FieldElement> coeffs() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  FieldElement inverse() const;
  FieldElement pow(std::uint64_t exponent) const;

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  Field level_;
  std::vector<std::uint32_t> digits_;
};

struct FieldElementHash {
  std::size_t operator()(const FieldElement& x) const noexcept;
};

/// Canonical injection of `x` into the level `to` (which must lie above x's level).
FieldElement embed(const FieldElement& x, const Field& to);
bool lies_in(const FieldElement& x, const FieldCtx& lower);
/// Inverse of embed; throws LevelMismatch when x is not in `lower`.
FieldElement restrict_to(const FieldElement& x, const Field& lower);

/// x^(q^k), the k-th power of the q-Frobenius.
FieldElement frobenius_pow(const FieldElement& x, std::uint64_t k);

/// Coordinates of x over a lower level, little-endian in the generators.
std::vector<FieldElement> as_vector(const FieldElement& x, const Field& over);
FieldElement from_vector(std::span<const FieldElement> coords, const Field& level);

/// Index of an element read as little-endian base-p digits.
std::uint64_t element_index(const FieldElement& x);
FieldElement element_from_index(const Field& level, std::uint64_t index);
std::vector<FieldElement> all_elements(const Field& level);
FieldElement random_element(const Field& level, std::mt19937_64& rng);

std::string to_string(const FieldElement& x);

/// F_{p^e}; without a modulus the lexicographically first monic irreducible
/// of degree e is used (counting with c_0 as the fastest digit).
Field make_field(std::uint32_t p, int e,
                 std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

/// Injection of one tower level into a higher one.
struct Embedding {
  Field from;
  Field to;
  FieldElement operator()(const FieldElement& x) const { return embed(x, to); }
};

struct Extension {
  Field field;
  Embedding embedding;
};

/// Degree-m extension of `base`; the modulus, if given, is c_0..c_m over base.
Extension extend(const Field& base, int m,
                 std::optional<std::vector<FieldElement>> modulus = std::nullopt);

/// Like extend, but the new level becomes F_q for everything built on it.
/// Used to rebuild serialized towers whose F_q sits above height 1.
Field extend_as_fq(const Field& below, int m,
                   std::optional<std::vector<FieldElement>> modulus = std::nullopt);

/// Smallest monic irreducible of degree m over `level` in the deterministic order.
std::vector<FieldElement> first_irreducible(const Field& level, int m);

}  // namespace drinfeld
