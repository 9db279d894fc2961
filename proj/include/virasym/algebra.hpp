#ifndef VIRASYM_ALGEBRA_HPP
#define VIRASYM_ALGEBRA_HPP

#include <virasym/rational.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace virasym {

// Family order is the canonical term order: L < H < C.
enum class Family : std::uint8_t { L = 0, H = 1, C = 2 };

/// A basis label L(n), H(n) or the central element c.
struct BasisSymbol {
  Family family = Family::L;
  std::int64_t index = 0; // always 0 for C

  static BasisSymbol L(std::int64_t n) { return {Family::L, n}; }
  static BasisSymbol H(std::int64_t n) { return {Family::H, n}; }
  static BasisSymbol central() { return {Family::C, 0}; }

  bool is_central() const { return family == Family::C; }
  std::int64_t degree() const { return is_central() ? 0 : index; }

  friend auto operator<=>(const BasisSymbol&, const BasisSymbol&) = default;
};

std::string to_string(const BasisSymbol& s);

enum class Variant : std::uint8_t { Virasoro, Witt, W22, W22Centerless };

/// Which algebra the brackets are computed in.
///
/// Witt and W22Centerless are the c = 0 variants: the central term of the
/// bracket is dropped and the symbol c is rejected.
struct AlgebraSpec {
  Variant variant = Variant::Virasoro;
  std::int64_t index_limit = 2147483647; // |index| bound for L(n), H(n)

  bool has_h() const { return variant == Variant::W22 || variant == Variant::W22Centerless; }
  bool has_center() const { return variant == Variant::Virasoro || variant == Variant::W22; }

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

AlgebraSpec virasoro();
AlgebraSpec witt();
AlgebraSpec w22();
AlgebraSpec w22_centerless();

/// Short names used on the command line and in files: vir, witt, w22, w22-centerless.
std::string algebra_name(const AlgebraSpec& a);
AlgebraSpec parse_algebra(std::string_view name);

/// Throws InvalidSymbol unless `s` belongs to `a`.
void validate(const BasisSymbol& s, const AlgebraSpec& a);
bool is_valid(const BasisSymbol& s, const AlgebraSpec& a);

/// Finite exact linear combination of basis symbols. No stored coefficient is zero.
class Element {
public:
  using Terms = std::map<BasisSymbol, Rational>;

  Element() = default;
  Element(const BasisSymbol& s) : Element(s, Rational(1)) {} // NOLINT: symbols read as elements
  Element(const BasisSymbol& s, const Rational& coeff);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const BasisSymbol& s) const;

  void add_term(const BasisSymbol& s, const Rational& coeff);

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Rational& k);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(const Rational& k, Element a) { return a *= k; }
  friend Element operator*(Element a, const Rational& k) { return a *= k; }
  friend bool operator==(const Element&, const Element&) = default;

private:
  Terms terms_;
};

/// Canonical text form, e.g. "4·L(0) + 1/2·c"; the zero element prints as "0".
std::string to_string(const Element& x);

/// Throws InvalidSymbol for any term not allowed under `a`.
void validate(const Element& x, const AlgebraSpec& a);

/// Largest |degree| over the non-central terms (0 for the zero element).
std::int64_t max_abs_degree(const Element& x);

Element bracket(const BasisSymbol& x, const BasisSymbol& y, const AlgebraSpec& a);
Element bracket(const Element& x, const Element& y, const AlgebraSpec& a);

/// ω(L_m) = H_m, ω(H_m) = ω(c) = 0. Only for the W(2,2) variants.
Element omega(const Element& x, const AlgebraSpec& a);

/// [[x,y],z] + [[y,z],x] + [[z,x],y]
Element jacobi_residual(const Element& x, const Element& y, const Element& z, const AlgebraSpec& a);

/// Basis symbols with |degree| <= radius in canonical order, followed by c when the
/// algebra has one.
std::vector<BasisSymbol> window_symbols(const AlgebraSpec& a, std::int64_t radius);

/// True when every term is a window symbol of radius `radius` (c is always inside).
bool fits_window(const Element& x, std::int64_t radius);

/// Canonical (reduced echelon) basis of the elements z supported on the window of
/// radius N for which [z, e] = 0 for every window symbol e.
std::vector<Element> center_basis(const AlgebraSpec& a, std::int64_t radius);

/// Restricts each element to degrees |d| <= core (c kept) and re-reduces.
std::vector<Element> project_elements_to_core(const std::vector<Element>& basis, std::int64_t core);

} // namespace virasym

#endif // VIRASYM_ALGEBRA_HPP
