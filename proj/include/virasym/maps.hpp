#ifndef VIRASYM_MAPS_HPP
#define VIRASYM_MAPS_HPP

#include <virasym/algebra.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace virasym {

/// A linear map given by its values on every symbol of a degree window.
class LinearMapWindow {
public:
  using Table = std::map<BasisSymbol, Element>;

  /// Throws MapConstructionError unless `values` covers the window exactly, and
  /// InvalidSymbol for values outside the algebra.
  LinearMapWindow(AlgebraSpec algebra, std::int64_t radius, Table values);

  static LinearMapWindow from_function(const AlgebraSpec& algebra, std::int64_t radius,
                                       const std::function<Element(const BasisSymbol&)>& fn);

  const AlgebraSpec& algebra() const { return algebra_; }
  std::int64_t radius() const { return radius_; }
  const Table& values() const { return values_; }

  /// Value on a window symbol; OutOfWindow otherwise.
  const Element& at(const BasisSymbol& s) const;

  friend bool operator==(const LinearMapWindow&, const LinearMapWindow&) = default;

private:
  AlgebraSpec algebra_;
  std::int64_t radius_;
  Table values_;
};

/// A bilinear map given by its values on every ordered pair of window symbols.
/// Values are supported on degrees |d| <= value_radius (2 * radius unless given) and c.
class BilinearMapWindow {
public:
  using Key = std::pair<BasisSymbol, BasisSymbol>;
  using Table = std::map<Key, Element>;

  BilinearMapWindow(AlgebraSpec algebra, std::int64_t radius, std::int64_t value_radius, Table values);
  BilinearMapWindow(AlgebraSpec algebra, std::int64_t radius, Table values)
      : BilinearMapWindow(algebra, radius, 2 * radius, std::move(values)) {}

  static BilinearMapWindow from_function(
      const AlgebraSpec& algebra, std::int64_t radius,
      const std::function<Element(const BasisSymbol&, const BasisSymbol&)>& fn);

  const AlgebraSpec& algebra() const { return algebra_; }
  std::int64_t radius() const { return radius_; }
  std::int64_t value_radius() const { return value_radius_; }
  const Table& values() const { return values_; }

  const Element& at(const BasisSymbol& x, const BasisSymbol& y) const;

  friend bool operator==(const BilinearMapWindow&, const BilinearMapWindow&) = default;

private:
  AlgebraSpec algebra_;
  std::int64_t radius_;
  std::int64_t value_radius_;
  Table values_;
};

Element apply_linear(const LinearMapWindow& phi, const Element& x);
Element apply_bilinear(const BilinearMapWindow& f, const Element& x, const Element& y);

// Named maps.
LinearMapWindow identity_map(const AlgebraSpec& a, std::int64_t radius);
LinearMapWindow omega_table(const AlgebraSpec& a, std::int64_t radius);
LinearMapWindow inner_derivation(const Element& x, const AlgebraSpec& a, std::int64_t radius);
/// The out-derivation of W(2,2): L_m -> 0, H_m -> H_m, c -> 0.
LinearMapWindow standard_D(const AlgebraSpec& a, std::int64_t radius);

BilinearMapWindow zero_bilinear(const AlgebraSpec& a, std::int64_t radius);
/// (x, y) -> lambda [x, y]
BilinearMapWindow inner_biderivation(const Rational& lambda, const AlgebraSpec& a, std::int64_t radius);
/// (x, y) -> mu [omega(x), y]
BilinearMapWindow omega_biderivation(const Rational& mu, const AlgebraSpec& a, std::int64_t radius);

// Residuals. Each returns left minus right of the identity and throws OutOfWindow when
// an argument of the map falls outside its window.

/// phi([x,y]) - [phi(x),y] - [x,phi(y)]
Element derivation_residual(const LinearMapWindow& phi, const Element& x, const Element& y);

/// f([x,y],z) - [x,f(y,z)] - [f(x,z),y]
Element biderivation_first_residual(const BilinearMapWindow& f, const Element& x, const Element& y,
                                    const Element& z);
/// f(x,[y,z]) - [f(x,y),z] - [y,f(x,z)]
Element biderivation_second_residual(const BilinearMapWindow& f, const Element& x, const Element& y,
                                     const Element& z);
std::pair<Element, Element> biderivation_residuals(const BilinearMapWindow& f, const Element& x,
                                                   const Element& y, const Element& z);

/// [phi(x),y] + [phi(y),x]; the polarized form of [phi(x),x] = 0.
Element commuting_residual(const LinearMapWindow& phi, const Element& x, const Element& y);

/// Post-Lie residuals of the product x.y = f(x,y):
///   symmetry  x.y - y.x
///   [x,y].z - x.(y.z) + y.(x.z)
///   x.[y,z] - [x.y,z] - [y,x.z]
std::array<Element, 3> postlie_residuals(const BilinearMapWindow& f, const Element& x, const Element& y,
                                         const Element& z);

// Exhaustive checks over the window: every basis tuple for which the identity can be
// evaluated inside the window is tested.

struct ResidualFailure {
  std::string identity;
  std::vector<BasisSymbol> args;
  Element residual;
};

struct VerificationResult {
  std::size_t checked = 0;
  std::size_t failure_count = 0;
  std::vector<ResidualFailure> failures; // the first `limit` failures in tuple order

  bool passed() const { return failure_count == 0; }
};

VerificationResult verify_derivation(const LinearMapWindow& phi, std::size_t limit = 10);
VerificationResult verify_commuting(const LinearMapWindow& phi, std::size_t limit = 10);
VerificationResult verify_biderivation(const BilinearMapWindow& f, std::size_t limit = 10);
/// Biderivation axioms plus f(x,y) = f(y,x).
VerificationResult verify_symmetric_biderivation(const BilinearMapWindow& f, std::size_t limit = 10);
/// The three post-Lie residuals; nested products are checked only where they stay in the window.
VerificationResult verify_postlie(const BilinearMapWindow& f, std::size_t limit = 10);

} // namespace virasym

#endif // VIRASYM_MAPS_HPP
