#include <virasym/algebra.hpp>
#include <virasym/errors.hpp>
#include <virasym/linalg.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace virasym {

// ---------------------------------------------------------------- rationals

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_display_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return to_fraction_string(q);
}

Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  Integer p(n, 10);
  Integer q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- symbols, specs

std::string to_string(const BasisSymbol& s) {
  switch (s.family) {
    case Family::L: return "L(" + std::to_string(s.index) + ")";
    case Family::H: return "H(" + std::to_string(s.index) + ")";
    case Family::C: return "c";
  }
  return "?";
}

AlgebraSpec virasoro() { return {Variant::Virasoro}; }
AlgebraSpec witt() { return {Variant::Witt}; }
AlgebraSpec w22() { return {Variant::W22}; }
AlgebraSpec w22_centerless() { return {Variant::W22Centerless}; }

std::string algebra_name(const AlgebraSpec& a) {
  switch (a.variant) {
    case Variant::Virasoro: return "vir";
    case Variant::Witt: return "witt";
    case Variant::W22: return "w22";
    case Variant::W22Centerless: return "w22-centerless";
  }
  return "?";
}

AlgebraSpec parse_algebra(std::string_view name) {
  if (name == "vir" || name == "virasoro") return virasoro();
  if (name == "witt") return witt();
  if (name == "w22") return w22();
  if (name == "w22-centerless") return w22_centerless();
  throw ParseError("unknown algebra '" + std::string(name) + "'");
}

bool is_valid(const BasisSymbol& s, const AlgebraSpec& a) {
  switch (s.family) {
    case Family::L: return std::llabs(s.index) <= a.index_limit;
    case Family::H: return a.has_h() && std::llabs(s.index) <= a.index_limit;
    case Family::C: return a.has_center() && s.index == 0;
  }
  return false;
}

void validate(const BasisSymbol& s, const AlgebraSpec& a) {
  if (!is_valid(s, a))
    throw InvalidSymbol("symbol " + to_string(s) + " is not valid in algebra " + algebra_name(a));
}

// ---------------------------------------------------------------- elements

Element::Element(const BasisSymbol& s, const Rational& coeff) { add_term(s, coeff); }

Rational Element::coefficient(const BasisSymbol& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(const BasisSymbol& s, const Rational& coeff) {
  if (sgn(coeff) == 0) return;
  auto [it, fresh] = terms_.try_emplace(s, coeff);
  if (!fresh) {
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& other) {
  for (const auto& [s, q] : other.terms_) add_term(s, q);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  for (const auto& [s, q] : other.terms_) add_term(s, -q);
  return *this;
}

Element& Element::operator*=(const Rational& k) {
  if (sgn(k) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, q] : terms_) q *= k;
  return *this;
}

std::string to_string(const Element& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [s, q] : x.terms()) {
    Rational mag = abs(q);
    if (first) {
      if (sgn(q) < 0) out += "-";
    } else {
      out += sgn(q) < 0 ? " - " : " + ";
    }
    out += to_display_string(mag) + "·" + to_string(s);
    first = false;
  }
  return out;
}

void validate(const Element& x, const AlgebraSpec& a) {
  for (const auto& [s, q] : x.terms()) validate(s, a);
}

std::int64_t max_abs_degree(const Element& x) {
  std::int64_t d = 0;
  for (const auto& [s, q] : x.terms()) d = std::max<std::int64_t>(d, std::llabs(s.degree()));
  return d;
}

// ---------------------------------------------------------------- brackets

namespace {

// (m^3 - m) / 12, exact.
Rational central_coefficient(std::int64_t m) {
  Integer mm(static_cast<long>(m));
  Rational r(mm * mm * mm - mm, 12);
  r.canonicalize();
  return r;
}

std::int64_t checked_sum(std::int64_t m, std::int64_t n, const AlgebraSpec& a) {
  std::int64_t s = 0;
  if (__builtin_add_overflow(m, n, &s) || std::llabs(s) > a.index_limit)
    throw IndexOverflow("degree " + std::to_string(m) + " + " + std::to_string(n) +
                        " exceeds the index limit");
  return s;
}

} // namespace

Element bracket(const BasisSymbol& x, const BasisSymbol& y, const AlgebraSpec& a) {
  validate(x, a);
  validate(y, a);
  if (x.is_central() || y.is_central()) return {};
  if (x.family == Family::H && y.family == Family::H) return {};

  const std::int64_t m = x.index;
  const std::int64_t n = y.index;
  Element out;
  if (m != n) {
    const Family f = (x.family == Family::L && y.family == Family::L) ? Family::L : Family::H;
    Rational k = Rational(Integer(static_cast<long>(m))) - Rational(Integer(static_cast<long>(n)));
    out.add_term({f, checked_sum(m, n, a)}, k);
  }
  if (a.has_center() && m == -n) {
    // [H_m, L_n] = -[L_n, H_m] carries the central term of its L argument.
    Rational z = x.family == Family::L ? central_coefficient(m) : Rational(-central_coefficient(n));
    out.add_term(BasisSymbol::central(), z);
  }
  return out;
}

Element bracket(const Element& x, const Element& y, const AlgebraSpec& a) {
  validate(x, a);
  validate(y, a);
  Element out;
  for (const auto& [sx, qx] : x.terms()) {
    for (const auto& [sy, qy] : y.terms()) {
      Element b = bracket(sx, sy, a);
      if (!b.is_zero()) out += (qx * qy) * b;
    }
  }
  return out;
}

Element omega(const Element& x, const AlgebraSpec& a) {
  if (!a.has_h()) throw UnsupportedAlgebra("omega is only defined on the W(2,2) variants");
  validate(x, a);
  Element out;
  for (const auto& [s, q] : x.terms())
    if (s.family == Family::L) out.add_term(BasisSymbol::H(s.index), q);
  return out;
}

Element jacobi_residual(const Element& x, const Element& y, const Element& z, const AlgebraSpec& a) {
  return bracket(bracket(x, y, a), z, a) + bracket(bracket(y, z, a), x, a) + bracket(bracket(z, x, a), y, a);
}

std::vector<BasisSymbol> window_symbols(const AlgebraSpec& a, std::int64_t radius) {
  std::vector<BasisSymbol> out;
  for (std::int64_t n = -radius; n <= radius; ++n) out.push_back(BasisSymbol::L(n));
  if (a.has_h())
    for (std::int64_t n = -radius; n <= radius; ++n) out.push_back(BasisSymbol::H(n));
  if (a.has_center()) out.push_back(BasisSymbol::central());
  return out;
}

bool fits_window(const Element& x, std::int64_t radius) { return max_abs_degree(x) <= radius; }

namespace {

// Symbol <-> column mapping for small element-valued linear algebra.
struct SymbolIndex {
  std::vector<BasisSymbol> symbols; // sorted

  explicit SymbolIndex(std::vector<BasisSymbol> s) : symbols(std::move(s)) {
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  }
  std::uint32_t col(const BasisSymbol& s) const {
    return static_cast<std::uint32_t>(std::lower_bound(symbols.begin(), symbols.end(), s) - symbols.begin());
  }
  SparseVector to_vector(const Element& x) const {
    SparseVector v;
    for (const auto& [s, q] : x.terms()) v.push_back({col(s), q});
    return v;
  }
  Element to_element(const SparseVector& v) const {
    Element x;
    for (const auto& e : v) x.add_term(symbols[e.col], e.value);
    return x;
  }
};

} // namespace

std::vector<Element> center_basis(const AlgebraSpec& a, std::int64_t radius) {
  if (radius < 1) throw WindowTooSmall("center_basis needs a window radius >= 1");
  const SymbolIndex unknowns(window_symbols(a, radius));
  // One equation per window symbol e and output symbol of [z, e].
  std::vector<SparseVector> system;
  for (const auto& e : unknowns.symbols) {
    std::map<BasisSymbol, std::vector<SparseEntry>> by_output;
    for (std::uint32_t j = 0; j < unknowns.symbols.size(); ++j) {
      const Element b = bracket(unknowns.symbols[j], e, a);
      for (const auto& [s, q] : b.terms()) by_output[s].push_back({j, q});
    }
    for (auto& [s, entries] : by_output) {
      SparseVector row = canonicalize(std::move(entries));
      if (!row.empty()) system.push_back(std::move(row));
    }
  }
  std::vector<Element> out;
  for (const auto& v : nullspace_basis(system, unknowns.symbols.size())) out.push_back(unknowns.to_element(v));
  return out;
}

std::vector<Element> project_elements_to_core(const std::vector<Element>& basis, std::int64_t core) {
  std::vector<BasisSymbol> syms;
  std::vector<Element> restricted;
  for (const auto& x : basis) {
    Element r;
    for (const auto& [s, q] : x.terms()) {
      if (std::llabs(s.degree()) <= core) {
        r.add_term(s, q);
        syms.push_back(s);
      }
    }
    restricted.push_back(std::move(r));
  }
  const SymbolIndex index(std::move(syms));
  std::vector<SparseVector> vecs;
  for (const auto& x : restricted) vecs.push_back(index.to_vector(x));
  std::vector<Element> out;
  for (const auto& v : reduced_basis(vecs)) out.push_back(index.to_element(v));
  return out;
}

} // namespace virasym
