#ifndef VIRASYM_SERIALIZE_HPP
#define VIRASYM_SERIALIZE_HPP

#include <virasym/maps.hpp>

#include <json.hpp>

#include <string>
#include <variant>

namespace virasym {

using Json = nlohmann::ordered_json;

// {"family": "L"|"H", "index": n} or {"family": "c"}
Json to_json(const BasisSymbol& s);
BasisSymbol symbol_from_json(const Json& j);

// [{"family", "index", "coeff": "p/q"}, ...] in canonical order. Parsing accepts any order.
Json to_json(const Element& x);
Element element_from_json(const Json& j);

// Map files:
// {"algebra", "window", "kind": "linear"|"bilinear", "entries": [{"arg", "value"}]}
// Bilinear files carry "value_radius" only when it differs from 2 * window.
Json to_json(const LinearMapWindow& phi);
Json to_json(const BilinearMapWindow& f);

/// {"checked", "failure_count", "failures": [{"identity", "args", "residual"}]}
Json to_json(const VerificationResult& r);

using AnyMap = std::variant<LinearMapWindow, BilinearMapWindow>;

/// Throws ParseError for malformed input, duplicate entries or gaps in the window.
AnyMap map_from_json(const Json& j);
AnyMap load_map_file(const std::string& path);

} // namespace virasym

#endif // VIRASYM_SERIALIZE_HPP
