#include <virasym/errors.hpp>
#include <virasym/serialize.hpp>

#include <fstream>

namespace virasym {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::int64_t int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + name + "' must be an integer");
  return v.get<std::int64_t>();
}

} // namespace

Json to_json(const BasisSymbol& s) {
  Json j;
  switch (s.family) {
    case Family::L: j["family"] = "L"; break;
    case Family::H: j["family"] = "H"; break;
    case Family::C: j["family"] = "c"; return j;
  }
  j["index"] = s.index;
  return j;
}

BasisSymbol symbol_from_json(const Json& j) {
  const Json& fam = field(j, "family");
  if (!fam.is_string()) throw ParseError("symbol family must be a string");
  const auto name = fam.get<std::string>();
  if (name == "c" || name == "C") return BasisSymbol::central();
  if (name == "L") return BasisSymbol::L(int_field(j, "index"));
  if (name == "H") return BasisSymbol::H(int_field(j, "index"));
  throw ParseError("unknown symbol family '" + name + "'");
}

Json to_json(const Element& x) {
  Json arr = Json::array();
  for (const auto& [s, q] : x.terms()) {
    Json t = to_json(s);
    t["coeff"] = to_fraction_string(q);
    arr.push_back(std::move(t));
  }
  return arr;
}

Element element_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("element must be an array of terms");
  Element x;
  for (const auto& t : j) {
    const Json& c = field(t, "coeff");
    if (!c.is_string()) throw ParseError("coefficient must be a string \"p/q\"");
    x.add_term(symbol_from_json(t), parse_rational(c.get<std::string>()));
  }
  return x;
}

Json to_json(const LinearMapWindow& phi) {
  Json j;
  j["algebra"] = algebra_name(phi.algebra());
  j["window"] = phi.radius();
  j["kind"] = "linear";
  Json entries = Json::array();
  for (const auto& [s, v] : phi.values()) entries.push_back({{"arg", to_json(s)}, {"value", to_json(v)}});
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const BilinearMapWindow& f) {
  Json j;
  j["algebra"] = algebra_name(f.algebra());
  j["window"] = f.radius();
  if (f.value_radius() != 2 * f.radius()) j["value_radius"] = f.value_radius();
  j["kind"] = "bilinear";
  Json entries = Json::array();
  for (const auto& [k, v] : f.values()) {
    entries.push_back({{"arg", Json::array({to_json(k.first), to_json(k.second)})}, {"value", to_json(v)}});
  }
  j["entries"] = std::move(entries);
  return j;
}

AnyMap map_from_json(const Json& j) {
  const Json& alg = field(j, "algebra");
  if (!alg.is_string()) throw ParseError("algebra must be a string");
  const AlgebraSpec a = parse_algebra(alg.get<std::string>());
  const std::int64_t radius = int_field(j, "window");
  if (radius < 0) throw ParseError("window must be non-negative");
  const Json& kind = field(j, "kind");
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) throw ParseError("entries must be an array");

  try {
    if (kind == "linear") {
      LinearMapWindow::Table t;
      for (const auto& e : entries) {
        const BasisSymbol s = symbol_from_json(field(e, "arg"));
        if (!t.emplace(s, element_from_json(field(e, "value"))).second)
          throw ParseError("duplicate entry for " + to_string(s));
      }
      return LinearMapWindow(a, radius, std::move(t));
    }
    if (kind == "bilinear") {
      const std::int64_t value_radius = j.contains("value_radius") ? int_field(j, "value_radius") : 2 * radius;
      BilinearMapWindow::Table t;
      for (const auto& e : entries) {
        const Json& arg = field(e, "arg");
        if (!arg.is_array() || arg.size() != 2) throw ParseError("bilinear arg must be a pair of symbols");
        BilinearMapWindow::Key k{symbol_from_json(arg[0]), symbol_from_json(arg[1])};
        if (!t.emplace(k, element_from_json(field(e, "value"))).second)
          throw ParseError("duplicate entry for (" + to_string(k.first) + ", " + to_string(k.second) + ")");
      }
      return BilinearMapWindow(a, radius, value_radius, std::move(t));
    }
  } catch (const MapConstructionError& e) {
    throw ParseError(e.what());
  } catch (const InvalidSymbol& e) {
    throw ParseError(e.what());
  }
  throw ParseError("kind must be \"linear\" or \"bilinear\"");
}

AnyMap load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open map file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return map_from_json(j);
}

} // namespace virasym
