#pragma once

#include <cstdint>
#include <vector>

#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/error.hpp"
#include "drinfeld/field.hpp"
#include "drinfeld/unipoly.hpp"

namespace testing_support {

using namespace drinfeld;

inline UniPoly poly(const Field& f, std::vector<std::int64_t> c) { return UniPoly::from_ints(f, c); }

inline FieldElement el(const Field& f, std::uint64_t index) { return element_from_index(f, index); }

inline FieldElement k(const Field& f, std::int64_t v) { return FieldElement::from_int(f, v); }

// F_q = F_p and the module theta + g_1 tau + ... over K = F_p.
inline DrinfeldModule prime_module(std::uint32_t p, std::int64_t theta, std::vector<std::int64_t> g) {
  const Field F = make_field(p, 1);
  std::vector<FieldElement> gs;
  for (auto v : g) gs.push_back(k(F, v));
  return make_drinfeld(F, k(F, theta), gs);
}

// K = F_4 over F_q = F_2 with modulus y^2 + y + 1, theta = y, g = [1, y].
inline DrinfeldModule f4_module() {
  const Field F2 = make_field(2, 1);
  const Field K = extend(F2, 2, std::vector<FieldElement>{k(F2, 1), k(F2, 1), k(F2, 1)}).field;
  const FieldElement y = el(K, 2);
  return make_drinfeld(K, y, {FieldElement::one(K), y});
}

template <class F>
bool throws_kind(F&& f, ErrorKind want) {
  try {
    f();
  } catch (const MathError& e) {
    return e.kind() == want;
  }
  return false;
}

}  // namespace testing_support
