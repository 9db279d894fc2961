#ifndef VIRASYM_SOLVER_HPP
#define VIRASYM_SOLVER_HPP

#include <virasym/errors.hpp>
#include <virasym/linalg.hpp>
#include <virasym/maps.hpp>
#include <virasym/serialize.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace virasym {

enum class Problem { Biderivation, Derivation, Commuting, SymmetricBiderivation };

std::string problem_name(Problem p);
Problem parse_problem(std::string_view name);
bool is_bilinear(Problem p);

/// One unknown coefficient: the coefficient of `out` in f(arg1, arg2) (bilinear problems)
/// or in phi(arg1) (linear problems, arg2 empty). Ordered lexicographically, which fixes
/// the column order of every system.
struct UnknownIndex {
  BasisSymbol arg1;
  std::optional<BasisSymbol> arg2;
  BasisSymbol out;

  friend auto operator<=>(const UnknownIndex&, const UnknownIndex&) = default;
};

std::string to_string(const UnknownIndex& u);

/// Which identity instance produced a row.
struct RowTag {
  std::string identity;           // "biderivation-1", "biderivation-2", "symmetry", "derivation", "commuting"
  std::vector<BasisSymbol> args;  // the basis tuple
  BasisSymbol output;             // compared output coefficient
};

/// Homogeneous sparse system over the unknown map coefficients of a window.
struct ConstraintSystem {
  AlgebraSpec algebra;
  Problem problem = Problem::Biderivation;
  std::int64_t radius = 0;       // argument window N
  std::int64_t value_radius = 0; // output support M (plus c)
  std::shared_ptr<const std::vector<UnknownIndex>> columns;
  std::vector<SparseVector> rows;
  std::vector<RowTag> provenance;

  std::size_t column_count() const { return columns->size(); }
};

/// Canonical reduced echelon basis of a solution space over a column list.
struct SolutionSpace {
  AlgebraSpec algebra;
  Problem problem = Problem::Biderivation;
  std::int64_t radius = 0;
  std::int64_t value_radius = 0;
  std::shared_ptr<const std::vector<UnknownIndex>> columns;
  std::vector<SparseVector> basis;

  std::size_t dimension() const { return basis.size(); }
};

struct SolverOptions {
  unsigned threads = 1; // never changes any output
};

// Assembly. Every function requires 1 <= radius and value_radius >= 2 * radius, and
// throws WindowTooSmall otherwise or when no identity instance is admissible.
ConstraintSystem assemble_biderivation_system(const AlgebraSpec& a, std::int64_t radius,
                                              std::int64_t value_radius);
ConstraintSystem assemble_derivation_system(const AlgebraSpec& a, std::int64_t radius,
                                            std::int64_t value_radius);
ConstraintSystem assemble_commuting_system(const AlgebraSpec& a, std::int64_t radius,
                                           std::int64_t value_radius);
ConstraintSystem assemble_symmetric_biderivation_system(const AlgebraSpec& a, std::int64_t radius,
                                                        std::int64_t value_radius);
ConstraintSystem assemble_system(Problem p, const AlgebraSpec& a, std::int64_t radius,
                                 std::int64_t value_radius);

SolutionSpace nullspace(const ConstraintSystem& s, const SolverOptions& opts = {});

/// Keeps the unknowns whose argument symbols have |degree| <= core (c always kept) and
/// re-reduces. Throws InvalidCore when core > radius or core < 0.
SolutionSpace project_to_core(const SolutionSpace& sol, std::int64_t core);

// Conversions between solution vectors and map tables over the space's window.
BilinearMapWindow to_bilinear_map(const SolutionSpace& sol, const SparseVector& v);
LinearMapWindow to_linear_map(const SolutionSpace& sol, const SparseVector& v);
/// Throws OutOfWindow when a value has an output symbol that is not a column.
SparseVector to_vector(const SolutionSpace& sol, const BilinearMapWindow& f);
SparseVector to_vector(const SolutionSpace& sol, const LinearMapWindow& phi);

/// A core solution that is not of the classified form.
class NotInClassifiedFamily : public Error {
public:
  NotInClassifiedFamily(std::vector<BasisSymbol> args, Element residual, const std::string& what);
  const std::vector<BasisSymbol>& args() const { return args_; }
  const Element& residual() const { return residual_; }

private:
  std::vector<BasisSymbol> args_;
  Element residual_;
};

struct Parameters {
  Rational lambda;
  Rational mu;
  friend bool operator==(const Parameters&, const Parameters&) = default;
};

/// Reads lambda and mu off f(L_1, L_-1) and checks f = lambda [.,.] + mu [omega(.),.] on every
/// core pair. mu is 0 on Virasoro and Witt.
Parameters extract_parameters(const BilinearMapWindow& core);

/// Reads lambda and mu off phi(L_1) and checks that phi - lambda id - mu omega takes values
/// in the span of c on every core symbol.
Parameters extract_commuting_parameters(const LinearMapWindow& core);

struct ClassificationReport {
  AlgebraSpec algebra;
  Problem problem = Problem::Biderivation;
  std::int64_t radius = 0;
  std::int64_t value_radius = 0;
  std::int64_t core = 0;
  std::size_t raw_dimension = 0;
  std::size_t core_dimension = 0;
  std::vector<Json> core_basis;
  std::vector<Parameters> parameters;
  /// Derivations: dimension modulo inner derivations. Commuting maps: modulo c-valued maps.
  std::optional<std::size_t> quotient_dimension;
  std::optional<VerificationResult> residual_failure; // empty when every check passed
  std::vector<std::pair<std::string, double>> timings_ms;

  bool residuals_pass() const { return !residual_failure.has_value(); }
};

/// assemble -> nullspace -> project_to_core -> parameter extraction -> residual re-check.
/// Throws NotInClassifiedFamily when a core vector is not of the classified form.
ClassificationReport classify(Problem p, const AlgebraSpec& a, std::int64_t radius, std::int64_t value_radius,
                              std::int64_t core, const SolverOptions& opts = {});

Json to_json(const ClassificationReport& r, bool include_timings = true);

/// Core-restricted inner derivations ad(e) for every e whose values on the core fit the
/// value radius, as vectors over the columns of `core_space`.
std::vector<SparseVector> core_inner_derivations(const SolutionSpace& core_space);

/// Core maps e -> c (all other values 0), one per core symbol; empty without a center.
std::vector<SparseVector> core_central_maps(const SolutionSpace& core_space);

} // namespace virasym

#endif // VIRASYM_SOLVER_HPP
