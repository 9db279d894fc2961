#include <doctest.h>

#include <virasym/errors.hpp>
#include <virasym/solver.hpp>

#include "oracle.hpp"

#include <set>

using namespace virasym;

namespace {

const AlgebraSpec kAll[] = {virasoro(), witt(), w22(), w22_centerless()};

SolutionSpace empty_space(const ConstraintSystem& s) {
  return SolutionSpace{s.algebra, s.problem, s.radius, s.value_radius, s.columns, {}};
}

bool satisfies(const ConstraintSystem& s, const SparseVector& v) {
  for (const auto& r : s.rows)
    if (dot(r, v) != 0) return false;
  return true;
}

bool in_span(const std::vector<SparseVector>& basis, const SparseVector& v) {
  auto ext = basis;
  ext.push_back(v);
  return rank(ext) == rank(basis);
}

BilinearMapWindow combine(const BilinearMapWindow& f, const Rational& a, const BilinearMapWindow& g, const Rational& b) {
  return BilinearMapWindow::from_function(f.algebra(), f.radius(), [&](const BasisSymbol& x, const BasisSymbol& y) {
    return a * f.at(x, y) + b * g.at(x, y);
  });
}

} // namespace

TEST_CASE("biderivation system layout") {
  const auto s = assemble_biderivation_system(virasoro(), 2, 4);
  CHECK(s.column_count() == 360);
  CHECK(s.rows.size() == s.provenance.size());
  CHECK(std::is_sorted(s.columns->begin(), s.columns->end()));
  std::set<std::string> ids;
  for (const auto& t : s.provenance) ids.insert(t.identity);
  CHECK(ids == std::set<std::string>{"biderivation-1", "biderivation-2"});
  for (const auto& u : *s.columns) CHECK(u.arg2.has_value());
}

TEST_CASE("window checks") {
  CHECK_THROWS_AS(assemble_biderivation_system(virasoro(), 0, 4), WindowTooSmall);
  CHECK_THROWS_AS(assemble_derivation_system(virasoro(), 3, 5), WindowTooSmall);
  CHECK_THROWS_AS(assemble_commuting_system(w22(), 2, 3), WindowTooSmall);
  const auto sol = nullspace(assemble_derivation_system(witt(), 3, 6));
  CHECK_THROWS_AS(project_to_core(sol, 4), InvalidCore);
  CHECK_THROWS_AS(project_to_core(sol, -1), InvalidCore);
}

TEST_CASE("known maps satisfy the assembled rows") {
  for (const auto& a : kAll) {
    const auto bid = assemble_biderivation_system(a, 3, 6);
    CHECK(satisfies(bid, to_vector(empty_space(bid), inner_biderivation(Rational(2, 3), a, 3))));
    if (a.has_h()) CHECK(satisfies(bid, to_vector(empty_space(bid), omega_biderivation(-4, a, 3))));

    const auto sym = assemble_symmetric_biderivation_system(a, 3, 6);
    CHECK_FALSE(satisfies(sym, to_vector(empty_space(sym), inner_biderivation(1, a, 3))));

    const auto der = assemble_derivation_system(a, 3, 6);
    CHECK(satisfies(der, to_vector(empty_space(der), inner_derivation(Element(BasisSymbol::L(1)), a, 3))));
    CHECK(satisfies(der, to_vector(empty_space(der), inner_derivation(Element(BasisSymbol::L(-3)), a, 3))));

    const auto com = assemble_commuting_system(a, 3, 6);
    CHECK(satisfies(com, to_vector(empty_space(com), identity_map(a, 3))));
    if (a.has_h()) {
      CHECK(satisfies(com, to_vector(empty_space(com), omega_table(a, 3))));
      CHECK_FALSE(satisfies(com, to_vector(empty_space(com), standard_D(a, 3))));
      CHECK_FALSE(satisfies(der, to_vector(empty_space(der), omega_table(a, 3))));
    }
  }
  const auto der = assemble_derivation_system(w22_centerless(), 3, 6);
  CHECK(satisfies(der, to_vector(empty_space(der), standard_D(w22_centerless(), 3))));
}

TEST_CASE("to_vector rejects values outside the columns") {
  const auto s = assemble_derivation_system(witt(), 1, 2);
  const auto phi = LinearMapWindow::from_function(witt(), 1, [](const BasisSymbol& x) {
    return Element(BasisSymbol::L(x.index + 2));
  });
  CHECK_THROWS_AS(to_vector(empty_space(s), phi), OutOfWindow);
}

TEST_CASE("nullspace contains the inner biderivation") {
  const auto s = assemble_biderivation_system(virasoro(), 3, 6);
  const auto sol = nullspace(s);
  CHECK(in_span(sol.basis, to_vector(sol, inner_biderivation(1, virasoro(), 3))));
}

TEST_CASE("raw solutions are sound") {
  for (const auto& a : kAll) {
    for (const auto p : {Problem::Biderivation, Problem::Derivation, Problem::Commuting}) {
      const auto s = assemble_system(p, a, 3, 6);
      const auto sol = nullspace(s);
      CHECK(sol.dimension() > 0);
      for (const auto& v : sol.basis) {
        CHECK(satisfies(s, v));
        if (p == Problem::Biderivation) CHECK(verify_biderivation(to_bilinear_map(sol, v)).passed());
        if (p == Problem::Derivation) CHECK(verify_derivation(to_linear_map(sol, v)).passed());
        if (p == Problem::Commuting) CHECK(verify_commuting(to_linear_map(sol, v)).passed());
      }
    }
  }
}

TEST_CASE("map conversions round trip") {
  const auto s = assemble_biderivation_system(w22(), 2, 4);
  const auto f = omega_biderivation(Rational(3, 5), w22(), 2);
  const SolutionSpace sp = empty_space(s);
  CHECK(to_bilinear_map(sp, to_vector(sp, f)) == f);
}

TEST_CASE("project_to_core") {
  const auto s = assemble_biderivation_system(virasoro(), 3, 6);
  SolutionSpace zero = empty_space(s);
  CHECK(project_to_core(zero, 1).dimension() == 0);

  // two solutions that agree away from the boundary pair (L3, L-3)
  const auto f = inner_biderivation(1, virasoro(), 3);
  auto table = f.values();
  table[{BasisSymbol::L(3), BasisSymbol::L(-3)}] += Element(BasisSymbol::L(0), Rational(7));
  const BilinearMapWindow g(virasoro(), 3, table);
  SolutionSpace two = zero;
  two.basis = reduced_basis({to_vector(zero, f), to_vector(zero, g)});
  REQUIRE(two.dimension() == 2);
  CHECK(project_to_core(two, 2).dimension() == 1);

  CHECK(project_to_core(nullspace(assemble_biderivation_system(virasoro(), 5, 10)), 2).dimension() == 1);
}

TEST_CASE("extract_parameters") {
  const auto f = combine(inner_biderivation(1, w22(), 2), 3, omega_biderivation(1, w22(), 2), 5);
  CHECK(f.at(BasisSymbol::L(1), BasisSymbol::L(-1)) ==
        Element(BasisSymbol::L(0), Rational(6)) + Element(BasisSymbol::H(0), Rational(10)));
  CHECK(extract_parameters(f) == Parameters{3, 5});
  CHECK(extract_parameters(zero_bilinear(w22(), 2)) == Parameters{0, 0});
  CHECK(extract_parameters(inner_biderivation(1, virasoro(), 2)) == Parameters{1, 0});

  auto table = inner_biderivation(1, virasoro(), 2).values();
  table[{BasisSymbol::L(2), BasisSymbol::L(1)}] += Element(BasisSymbol::L(3));
  try {
    extract_parameters(BilinearMapWindow(virasoro(), 2, table));
    FAIL("expected NotInClassifiedFamily");
  } catch (const NotInClassifiedFamily& e) {
    CHECK(e.args() == std::vector<BasisSymbol>{BasisSymbol::L(2), BasisSymbol::L(1)});
    CHECK(e.residual() == Element(BasisSymbol::L(3)));
  }
}

TEST_CASE("extract_commuting_parameters") {
  const auto phi = LinearMapWindow::from_function(w22(), 2, [](const BasisSymbol& x) {
    Element v = Rational(2) * Element(x) + Rational(-3) * omega(x, w22());
    if (!x.is_central()) v.add_term(BasisSymbol::central(), Rational(x.index));
    return v;
  });
  CHECK(extract_commuting_parameters(phi) == Parameters{2, -3});
  CHECK_THROWS_AS(extract_commuting_parameters(standard_D(w22(), 2)), NotInClassifiedFamily);
}

TEST_CASE("classification of small cases") {
  const auto r = classify(Problem::Biderivation, virasoro(), 5, 10, 2);
  CHECK(r.core_dimension == 1);
  CHECK(r.residuals_pass());
  REQUIRE(r.parameters.size() == 1);
  CHECK(r.parameters[0].lambda != 0);
  CHECK(r.parameters[0].mu == 0);

  const auto d = classify(Problem::Derivation, virasoro(), 4, 8, 2);
  CHECK(d.quotient_dimension == std::optional<std::size_t>(0));

  const auto dc = classify(Problem::Derivation, w22_centerless(), 4, 8, 2);
  CHECK(dc.quotient_dimension == std::optional<std::size_t>(1));

  for (const auto& a : {virasoro(), witt()}) {
    const auto s = classify(Problem::SymmetricBiderivation, a, 4, 8, 2);
    CHECK(s.core_dimension == 0);
  }
}

TEST_CASE("commuting core dimension matches the dense oracle") {
  // oracle values, frozen: full core dimension including c-valued maps at N = 3, K = 1
  const std::size_t frozen[] = {5, 1, 9, 2};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& a = kAll[i];
    const std::size_t expected = oracle::commuting_core_dimension(a, 3, 1);
    CHECK(expected == frozen[i]);
    const auto r = classify(Problem::Commuting, a, 3, 6, 1);
    CHECK(r.core_dimension == expected);
    CHECK(r.quotient_dimension == std::optional<std::size_t>(a.has_h() ? 2 : 1));
  }
}

TEST_CASE("core helper spaces") {
  const auto sol = project_to_core(nullspace(assemble_commuting_system(virasoro(), 3, 6)), 1);
  // core symbols L(-1), L(0), L(1), c
  CHECK(core_central_maps(sol).size() == 4);
  const auto wsol = project_to_core(nullspace(assemble_commuting_system(witt(), 3, 6)), 1);
  CHECK(core_central_maps(wsol).empty());
  const auto dsol = project_to_core(nullspace(assemble_derivation_system(virasoro(), 3, 6)), 1);
  const auto inner = core_inner_derivations(dsol);
  CHECK(!inner.empty());
  for (const auto& v : dsol.basis) CHECK(in_span(inner, v));
}

TEST_CASE("classification does not depend on scaling or threads") {
  for (const auto p : {Problem::Biderivation, Problem::Derivation, Problem::Commuting}) {
    const auto one = classify(p, w22(), 3, 6, 1, SolverOptions{1});
    const auto four = classify(p, w22(), 3, 6, 1, SolverOptions{4});
    CHECK(to_json(one, false).dump() == to_json(four, false).dump());
  }
  // a rescaled known solution lands on the same canonical basis
  const auto s = assemble_biderivation_system(witt(), 3, 6);
  const auto sol = nullspace(s);
  REQUIRE(sol.dimension() >= 1);
  SolutionSpace scaled = sol;
  for (auto& v : scaled.basis)
    for (auto& e : v) e.value *= Rational(-7, 3);
  CHECK(reduced_basis(scaled.basis) == sol.basis);
}

TEST_CASE("report JSON") {
  const auto r = classify(Problem::Commuting, witt(), 3, 6, 1);
  const Json j = to_json(r, false);
  CHECK(j.at("algebra") == "witt");
  CHECK(j.at("problem") == "commuting");
  CHECK(j.at("N") == 3);
  CHECK(j.at("M") == 6);
  CHECK(j.at("K") == 1);
  CHECK(j.at("residual_check") == "pass");
  CHECK_FALSE(j.contains("timings_ms"));
  CHECK(to_json(r, true).contains("timings_ms"));
  CHECK(j.at("core_basis").size() == r.core_dimension);
}
