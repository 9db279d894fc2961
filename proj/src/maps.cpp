#include <virasym/errors.hpp>
#include <virasym/maps.hpp>

#include <cstdlib>

namespace virasym {

namespace {

bool in_window(const BasisSymbol& s, std::int64_t radius) { return std::llabs(s.degree()) <= radius; }

void require_in_window(const BasisSymbol& s, const AlgebraSpec& a, std::int64_t radius) {
  validate(s, a);
  if (!in_window(s, radius))
    throw OutOfWindow("symbol " + to_string(s) + " is outside the window of radius " + std::to_string(radius));
}

} // namespace

// ---------------------------------------------------------------- LinearMapWindow

LinearMapWindow::LinearMapWindow(AlgebraSpec algebra, std::int64_t radius, Table values)
    : algebra_(algebra), radius_(radius), values_(std::move(values)) {
  if (radius_ < 0) throw MapConstructionError("window radius must be non-negative");
  const auto window = window_symbols(algebra_, radius_);
  for (const auto& s : window)
    if (!values_.contains(s)) throw MapConstructionError("missing entry for " + to_string(s));
  if (values_.size() != window.size()) {
    for (const auto& [s, v] : values_) {
      if (!is_valid(s, algebra_) || !in_window(s, radius_))
        throw MapConstructionError("entry " + to_string(s) + " is not a window symbol");
    }
  }
  for (const auto& [s, v] : values_) validate(v, algebra_);
}

LinearMapWindow LinearMapWindow::from_function(const AlgebraSpec& algebra, std::int64_t radius,
                                               const std::function<Element(const BasisSymbol&)>& fn) {
  Table t;
  for (const auto& s : window_symbols(algebra, radius)) t.emplace(s, fn(s));
  return {algebra, radius, std::move(t)};
}

const Element& LinearMapWindow::at(const BasisSymbol& s) const {
  require_in_window(s, algebra_, radius_);
  return values_.at(s);
}

// ---------------------------------------------------------------- BilinearMapWindow

BilinearMapWindow::BilinearMapWindow(AlgebraSpec algebra, std::int64_t radius, std::int64_t value_radius,
                                     Table values)
    : algebra_(algebra), radius_(radius), value_radius_(value_radius), values_(std::move(values)) {
  if (radius_ < 0 || value_radius_ < 0) throw MapConstructionError("window radii must be non-negative");
  const auto window = window_symbols(algebra_, radius_);
  for (const auto& x : window)
    for (const auto& y : window)
      if (!values_.contains({x, y}))
        throw MapConstructionError("missing entry for (" + to_string(x) + ", " + to_string(y) + ")");
  if (values_.size() != window.size() * window.size()) {
    for (const auto& [k, v] : values_) {
      for (const auto& s : {k.first, k.second})
        if (!is_valid(s, algebra_) || !in_window(s, radius_))
          throw MapConstructionError("entry argument " + to_string(s) + " is not a window symbol");
    }
  }
  for (const auto& [k, v] : values_) {
    validate(v, algebra_);
    if (!fits_window(v, value_radius_))
      throw MapConstructionError("value at (" + to_string(k.first) + ", " + to_string(k.second) +
                                 ") exceeds the value radius " + std::to_string(value_radius_));
  }
}

BilinearMapWindow BilinearMapWindow::from_function(
    const AlgebraSpec& algebra, std::int64_t radius,
    const std::function<Element(const BasisSymbol&, const BasisSymbol&)>& fn) {
  Table t;
  const auto window = window_symbols(algebra, radius);
  for (const auto& x : window)
    for (const auto& y : window) t.emplace(Key{x, y}, fn(x, y));
  return {algebra, radius, std::move(t)};
}

const Element& BilinearMapWindow::at(const BasisSymbol& x, const BasisSymbol& y) const {
  require_in_window(x, algebra_, radius_);
  require_in_window(y, algebra_, radius_);
  return values_.at({x, y});
}

// ---------------------------------------------------------------- application

Element apply_linear(const LinearMapWindow& phi, const Element& x) {
  Element out;
  for (const auto& [s, q] : x.terms()) out += q * phi.at(s);
  return out;
}

Element apply_bilinear(const BilinearMapWindow& f, const Element& x, const Element& y) {
  // check supports first so that a zero coefficient elsewhere cannot hide an error
  for (const auto& [s, q] : x.terms()) require_in_window(s, f.algebra(), f.radius());
  for (const auto& [s, q] : y.terms()) require_in_window(s, f.algebra(), f.radius());
  Element out;
  for (const auto& [sx, qx] : x.terms())
    for (const auto& [sy, qy] : y.terms()) out += (qx * qy) * f.at(sx, sy);
  return out;
}

// ---------------------------------------------------------------- named maps

LinearMapWindow identity_map(const AlgebraSpec& a, std::int64_t radius) {
  return LinearMapWindow::from_function(a, radius, [](const BasisSymbol& s) { return Element(s); });
}

LinearMapWindow omega_table(const AlgebraSpec& a, std::int64_t radius) {
  if (!a.has_h()) throw UnsupportedAlgebra("omega is only defined on the W(2,2) variants");
  return LinearMapWindow::from_function(a, radius, [&](const BasisSymbol& s) { return omega(s, a); });
}

LinearMapWindow inner_derivation(const Element& x, const AlgebraSpec& a, std::int64_t radius) {
  validate(x, a);
  return LinearMapWindow::from_function(a, radius, [&](const BasisSymbol& s) { return bracket(x, s, a); });
}

LinearMapWindow standard_D(const AlgebraSpec& a, std::int64_t radius) {
  if (!a.has_h()) throw UnsupportedAlgebra("the out-derivation D is only defined on the W(2,2) variants");
  // D(c) = 0: any D(c) = d c is forced to d = 0 by c = 2[L_2,L_-2] - 8 L_0.
  return LinearMapWindow::from_function(a, radius, [](const BasisSymbol& s) {
    return s.family == Family::H ? Element(s) : Element();
  });
}

BilinearMapWindow zero_bilinear(const AlgebraSpec& a, std::int64_t radius) {
  return BilinearMapWindow::from_function(a, radius,
                                          [](const BasisSymbol&, const BasisSymbol&) { return Element(); });
}

BilinearMapWindow inner_biderivation(const Rational& lambda, const AlgebraSpec& a, std::int64_t radius) {
  return BilinearMapWindow::from_function(
      a, radius, [&](const BasisSymbol& x, const BasisSymbol& y) { return lambda * bracket(x, y, a); });
}

BilinearMapWindow omega_biderivation(const Rational& mu, const AlgebraSpec& a, std::int64_t radius) {
  if (!a.has_h()) throw UnsupportedAlgebra("omega biderivations are only defined on the W(2,2) variants");
  return BilinearMapWindow::from_function(a, radius, [&](const BasisSymbol& x, const BasisSymbol& y) {
    return mu * bracket(omega(x, a), y, a);
  });
}

// ---------------------------------------------------------------- residuals

Element derivation_residual(const LinearMapWindow& phi, const Element& x, const Element& y) {
  const auto& a = phi.algebra();
  return apply_linear(phi, bracket(x, y, a)) - bracket(apply_linear(phi, x), y, a) -
         bracket(x, apply_linear(phi, y), a);
}

Element biderivation_first_residual(const BilinearMapWindow& f, const Element& x, const Element& y,
                                    const Element& z) {
  const auto& a = f.algebra();
  return apply_bilinear(f, bracket(x, y, a), z) - bracket(x, apply_bilinear(f, y, z), a) -
         bracket(apply_bilinear(f, x, z), y, a);
}

Element biderivation_second_residual(const BilinearMapWindow& f, const Element& x, const Element& y,
                                     const Element& z) {
  const auto& a = f.algebra();
  return apply_bilinear(f, x, bracket(y, z, a)) - bracket(apply_bilinear(f, x, y), z, a) -
         bracket(y, apply_bilinear(f, x, z), a);
}

std::pair<Element, Element> biderivation_residuals(const BilinearMapWindow& f, const Element& x,
                                                   const Element& y, const Element& z) {
  return {biderivation_first_residual(f, x, y, z), biderivation_second_residual(f, x, y, z)};
}

Element commuting_residual(const LinearMapWindow& phi, const Element& x, const Element& y) {
  const auto& a = phi.algebra();
  return bracket(apply_linear(phi, x), y, a) + bracket(apply_linear(phi, y), x, a);
}

std::array<Element, 3> postlie_residuals(const BilinearMapWindow& f, const Element& x, const Element& y,
                                         const Element& z) {
  const auto& a = f.algebra();
  Element symmetry = apply_bilinear(f, x, y) - apply_bilinear(f, y, x);
  Element assoc = apply_bilinear(f, bracket(x, y, a), z) - apply_bilinear(f, x, apply_bilinear(f, y, z)) +
                  apply_bilinear(f, y, apply_bilinear(f, x, z));
  Element leibniz = apply_bilinear(f, x, bracket(y, z, a)) - bracket(apply_bilinear(f, x, y), z, a) -
                    bracket(y, apply_bilinear(f, x, z), a);
  return {std::move(symmetry), std::move(assoc), std::move(leibniz)};
}

} // namespace virasym

// ---------------------------------------------------------------- exhaustive verification

namespace virasym {

namespace {

class Collector {
public:
  explicit Collector(std::size_t limit) : limit_(limit) {}

  void check(const char* identity, std::vector<BasisSymbol> args, Element residual) {
    ++result_.checked;
    if (residual.is_zero()) return;
    ++result_.failure_count;
    if (result_.failures.size() < limit_)
      result_.failures.push_back({identity, std::move(args), std::move(residual)});
  }

  VerificationResult take() { return std::move(result_); }

private:
  std::size_t limit_;
  VerificationResult result_;
};

void check_biderivation_axioms(const BilinearMapWindow& f, const std::vector<BasisSymbol>& w, Collector& out) {
  const auto& a = f.algebra();
  const std::int64_t n = f.radius();
  for (const auto& x : w)
    for (const auto& y : w)
      for (const auto& z : w) {
        if (fits_window(bracket(x, y, a), n))
          out.check("biderivation-1", {x, y, z}, biderivation_first_residual(f, x, y, z));
        if (fits_window(bracket(y, z, a), n))
          out.check("biderivation-2", {x, y, z}, biderivation_second_residual(f, x, y, z));
      }
}

} // namespace

VerificationResult verify_derivation(const LinearMapWindow& phi, std::size_t limit) {
  Collector out(limit);
  const auto w = window_symbols(phi.algebra(), phi.radius());
  for (const auto& x : w)
    for (const auto& y : w)
      if (fits_window(bracket(x, y, phi.algebra()), phi.radius()))
        out.check("derivation", {x, y}, derivation_residual(phi, x, y));
  return out.take();
}

VerificationResult verify_commuting(const LinearMapWindow& phi, std::size_t limit) {
  Collector out(limit);
  const auto w = window_symbols(phi.algebra(), phi.radius());
  for (const auto& x : w)
    for (const auto& y : w) out.check("commuting", {x, y}, commuting_residual(phi, x, y));
  return out.take();
}

VerificationResult verify_biderivation(const BilinearMapWindow& f, std::size_t limit) {
  Collector out(limit);
  check_biderivation_axioms(f, window_symbols(f.algebra(), f.radius()), out);
  return out.take();
}

VerificationResult verify_symmetric_biderivation(const BilinearMapWindow& f, std::size_t limit) {
  Collector out(limit);
  const auto w = window_symbols(f.algebra(), f.radius());
  for (const auto& x : w)
    for (const auto& y : w) out.check("symmetry", {x, y}, f.at(x, y) - f.at(y, x));
  check_biderivation_axioms(f, w, out);
  return out.take();
}

VerificationResult verify_postlie(const BilinearMapWindow& f, std::size_t limit) {
  Collector out(limit);
  const auto& a = f.algebra();
  const std::int64_t n = f.radius();
  const auto w = window_symbols(a, n);
  for (const auto& x : w)
    for (const auto& y : w) out.check("symmetry", {x, y}, f.at(x, y) - f.at(y, x));
  for (const auto& x : w)
    for (const auto& y : w)
      for (const auto& z : w) {
        if (fits_window(bracket(x, y, a), n) && fits_window(f.at(y, z), n) && fits_window(f.at(x, z), n)) {
          Element r = apply_bilinear(f, bracket(x, y, a), z) - apply_bilinear(f, x, f.at(y, z)) +
                      apply_bilinear(f, y, f.at(x, z));
          out.check("postlie-associator", {x, y, z}, std::move(r));
        }
        if (fits_window(bracket(y, z, a), n)) {
          Element r = apply_bilinear(f, x, bracket(y, z, a)) - bracket(f.at(x, y), z, a) -
                      bracket(y, f.at(x, z), a);
          out.check("postlie-leibniz", {x, y, z}, std::move(r));
        }
      }
  return out.take();
}

} // namespace virasym
