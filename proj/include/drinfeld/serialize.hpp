#pragma once

#include <string>

#include <json.hpp>

#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/fa.hpp"
#include "drinfeld/multipoly.hpp"
#include "drinfeld/qpower.hpp"
#include "drinfeld/torsion.hpp"
#include "drinfeld/unipoly.hpp"

namespace drinfeld {

using Json = nlohmann::ordered_json;

/// {p, base, tower: [{degree, modulus}]}.  `base` counts the tower entries
/// making up F_q; when absent it is 1 if the tower is nonempty, else 0.
Json field_to_json(const Field& level);
Field field_from_json(const Json& j);

/// Integers at the prime level, nested arrays above.  A bare integer is also
/// accepted at any level and read through Z -> F_p.
Json element_to_json(const FieldElement& x);
FieldElement element_from_json(const Json& j, const Field& level);

/// {level, coeffs}; a bare coefficient array is read over `fallback`.
Json unipoly_to_json(const UniPoly& f);
UniPoly unipoly_from_json(const Json& j, const Field& fallback);

Json multipoly_to_json(const MultiPoly& p);
MultiPoly multipoly_from_json(const Json& j);

Json qpower_to_json(const QPowerPoly& p);
QPowerPoly qpower_from_json(const Json& j);

/// MultiPoly form plus {a, r, route}.
Json fa_to_json(const FaPoly& f);

/// {K, theta, g}.
Json module_to_json(const DrinfeldModule& phi);
DrinfeldModule module_from_json(const Json& j);

/// {a, level, extension_degree_over_K, fq_basis, a_basis?}.
Json torsion_to_json(const TorsionModule& t);
TorsionModule torsion_from_json(const Json& j, const DrinfeldModule& phi);

/// Parses text, mapping syntax errors to ParseError.
Json parse_json(const std::string& text);
/// Inline JSON if the argument starts with '{' or '[', otherwise a file path.
Json load_json_argument(const std::string& arg);

}  // namespace drinfeld
