#include <virasym/solver.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>

namespace virasym {

std::string problem_name(Problem p) {
  switch (p) {
    case Problem::Biderivation: return "biderivation";
    case Problem::Derivation: return "derivation";
    case Problem::Commuting: return "commuting";
    case Problem::SymmetricBiderivation: return "symmetric-biderivation";
  }
  return "?";
}

Problem parse_problem(std::string_view name) {
  if (name == "biderivation") return Problem::Biderivation;
  if (name == "derivation") return Problem::Derivation;
  if (name == "commuting") return Problem::Commuting;
  if (name == "symmetric-biderivation") return Problem::SymmetricBiderivation;
  throw ParseError("unknown problem '" + std::string(name) + "'");
}

bool is_bilinear(Problem p) { return p == Problem::Biderivation || p == Problem::SymmetricBiderivation; }

std::string to_string(const UnknownIndex& u) {
  std::string s = u.arg2 ? "f(" + to_string(u.arg1) + ", " + to_string(*u.arg2) + ")"
                         : "phi(" + to_string(u.arg1) + ")";
  return s + "[" + to_string(u.out) + "]";
}

NotInClassifiedFamily::NotInClassifiedFamily(std::vector<BasisSymbol> args, Element residual,
                                             const std::string& what)
    : Error(what), args_(std::move(args)), residual_(std::move(residual)) {}

// ---------------------------------------------------------------- assembly

namespace {

// Column layout and bracket tables shared by every assembler.
class Layout {
public:
  Layout(const AlgebraSpec& a, std::int64_t radius, std::int64_t value_radius, bool bilinear)
      : args(window_symbols(a, radius)), outs(window_symbols(a, value_radius)), bilinear_(bilinear) {
    for (std::uint32_t i = 0; i < args.size(); ++i) arg_pos_.emplace(args[i], i);
    arg_out.resize(args.size());
    out_arg.resize(outs.size());
    for (std::uint32_t i = 0; i < args.size(); ++i)
      for (const auto& o : outs) arg_out[i].push_back(bracket(args[i], o, a));
    for (std::uint32_t o = 0; o < outs.size(); ++o)
      for (const auto& x : args) out_arg[o].push_back(bracket(outs[o], x, a));
    arg_arg.resize(args.size());
    for (const auto& x : args)
      for (std::uint32_t j = 0; j < args.size(); ++j) arg_arg[arg_pos_.at(x)].push_back(bracket(x, args[j], a));
    radius_ = radius;
  }

  std::uint32_t pos(const BasisSymbol& s) const { return arg_pos_.at(s); }
  bool fits(const Element& x) const { return fits_window(x, radius_); }

  std::uint32_t col(std::uint32_t i, std::uint32_t j, std::uint32_t o) const {
    return static_cast<std::uint32_t>((i * args.size() + j) * outs.size() + o);
  }
  std::uint32_t col(std::uint32_t i, std::uint32_t o) const {
    return static_cast<std::uint32_t>(i * outs.size() + o);
  }

  std::shared_ptr<const std::vector<UnknownIndex>> columns() const {
    auto cols = std::make_shared<std::vector<UnknownIndex>>();
    if (bilinear_) {
      cols->reserve(args.size() * args.size() * outs.size());
      for (const auto& x : args)
        for (const auto& y : args)
          for (const auto& o : outs) cols->push_back({x, y, o});
    } else {
      for (const auto& x : args)
        for (const auto& o : outs) cols->push_back({x, std::nullopt, o});
    }
    return cols;
  }

  std::vector<BasisSymbol> args;
  std::vector<BasisSymbol> outs;
  std::vector<std::vector<Element>> arg_out; // [args[i], outs[o]]
  std::vector<std::vector<Element>> out_arg; // [outs[o], args[i]]
  std::vector<std::vector<Element>> arg_arg; // [args[i], args[j]]

private:
  std::map<BasisSymbol, std::uint32_t> arg_pos_;
  std::int64_t radius_ = 0;
  bool bilinear_;
};

// Coefficients of one identity instance, collected per output symbol.
class RowGroup {
public:
  void add(const BasisSymbol& out, std::uint32_t col, const Rational& k) { by_output_[out].push_back({col, k}); }

  void flush(ConstraintSystem& sys, const char* identity, std::vector<BasisSymbol> args) {
    for (auto& [out, entries] : by_output_) {
      SparseVector row = canonicalize(std::move(entries));
      if (row.empty()) continue;
      sys.rows.push_back(std::move(row));
      sys.provenance.push_back({identity, args, out});
    }
    by_output_.clear();
  }

private:
  std::map<BasisSymbol, std::vector<SparseEntry>> by_output_;
};

void check_window(std::int64_t radius, std::int64_t value_radius) {
  if (radius < 1) throw WindowTooSmall("window radius must be at least 1");
  if (value_radius < 2 * radius) throw WindowTooSmall("value radius must be at least twice the window radius");
}

ConstraintSystem empty_system(Problem p, const AlgebraSpec& a, std::int64_t radius, std::int64_t value_radius,
                              const Layout& layout) {
  ConstraintSystem sys;
  sys.algebra = a;
  sys.problem = p;
  sys.radius = radius;
  sys.value_radius = value_radius;
  sys.columns = layout.columns();
  return sys;
}

// Both biderivation axioms on every admissible triple.
void add_biderivation_rows(ConstraintSystem& sys, const Layout& L) {
  const auto n = static_cast<std::uint32_t>(L.args.size());
  const auto nout = static_cast<std::uint32_t>(L.outs.size());
  RowGroup g;
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      for (std::uint32_t z = 0; z < n; ++z) {
        // f([x,y],z) - [x,f(y,z)] - [f(x,z),y]
        if (L.fits(L.arg_arg[x][y])) {
          for (const auto& [s, q] : L.arg_arg[x][y].terms()) {
            const std::uint32_t p = L.pos(s);
            for (std::uint32_t o = 0; o < nout; ++o) g.add(L.outs[o], L.col(p, z, o), q);
          }
          for (std::uint32_t o = 0; o < nout; ++o) {
            for (const auto& [s, q] : L.arg_out[x][o].terms()) g.add(s, L.col(y, z, o), -q);
            for (const auto& [s, q] : L.out_arg[o][y].terms()) g.add(s, L.col(x, z, o), -q);
          }
          g.flush(sys, "biderivation-1", {L.args[x], L.args[y], L.args[z]});
        }
        // f(x,[y,z]) - [f(x,y),z] - [y,f(x,z)]
        if (L.fits(L.arg_arg[y][z])) {
          for (const auto& [s, q] : L.arg_arg[y][z].terms()) {
            const std::uint32_t p = L.pos(s);
            for (std::uint32_t o = 0; o < nout; ++o) g.add(L.outs[o], L.col(x, p, o), q);
          }
          for (std::uint32_t o = 0; o < nout; ++o) {
            for (const auto& [s, q] : L.out_arg[o][z].terms()) g.add(s, L.col(x, y, o), -q);
            for (const auto& [s, q] : L.arg_out[y][o].terms()) g.add(s, L.col(x, z, o), -q);
          }
          g.flush(sys, "biderivation-2", {L.args[x], L.args[y], L.args[z]});
        }
      }
}

} // namespace

ConstraintSystem assemble_biderivation_system(const AlgebraSpec& a, std::int64_t radius,
                                              std::int64_t value_radius) {
  check_window(radius, value_radius);
  const Layout layout(a, radius, value_radius, true);
  ConstraintSystem sys = empty_system(Problem::Biderivation, a, radius, value_radius, layout);
  add_biderivation_rows(sys, layout);
  if (sys.rows.empty()) throw WindowTooSmall("no admissible biderivation triple in the window");
  return sys;
}

ConstraintSystem assemble_symmetric_biderivation_system(const AlgebraSpec& a, std::int64_t radius,
                                                        std::int64_t value_radius) {
  check_window(radius, value_radius);
  const Layout L(a, radius, value_radius, true);
  ConstraintSystem sys = empty_system(Problem::SymmetricBiderivation, a, radius, value_radius, L);
  add_biderivation_rows(sys, L);
  const auto n = static_cast<std::uint32_t>(L.args.size());
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = x + 1; y < n; ++y)
      for (std::uint32_t o = 0; o < L.outs.size(); ++o) {
        sys.rows.push_back({{L.col(x, y, o), Rational(1)}, {L.col(y, x, o), Rational(-1)}});
        sys.provenance.push_back({"symmetry", {L.args[x], L.args[y]}, L.outs[o]});
      }
  if (sys.rows.empty()) throw WindowTooSmall("no admissible biderivation triple in the window");
  return sys;
}

ConstraintSystem assemble_derivation_system(const AlgebraSpec& a, std::int64_t radius,
                                            std::int64_t value_radius) {
  check_window(radius, value_radius);
  const Layout L(a, radius, value_radius, false);
  ConstraintSystem sys = empty_system(Problem::Derivation, a, radius, value_radius, L);
  const auto n = static_cast<std::uint32_t>(L.args.size());
  const auto nout = static_cast<std::uint32_t>(L.outs.size());
  RowGroup g;
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      // phi([x,y]) - [phi(x),y] - [x,phi(y)]
      if (!L.fits(L.arg_arg[x][y])) continue;
      for (const auto& [s, q] : L.arg_arg[x][y].terms()) {
        const std::uint32_t p = L.pos(s);
        for (std::uint32_t o = 0; o < nout; ++o) g.add(L.outs[o], L.col(p, o), q);
      }
      for (std::uint32_t o = 0; o < nout; ++o) {
        for (const auto& [s, q] : L.out_arg[o][y].terms()) g.add(s, L.col(x, o), -q);
        for (const auto& [s, q] : L.arg_out[x][o].terms()) g.add(s, L.col(y, o), -q);
      }
      g.flush(sys, "derivation", {L.args[x], L.args[y]});
    }
  if (sys.rows.empty()) throw WindowTooSmall("no admissible derivation pair in the window");
  return sys;
}

ConstraintSystem assemble_commuting_system(const AlgebraSpec& a, std::int64_t radius,
                                           std::int64_t value_radius) {
  check_window(radius, value_radius);
  const Layout L(a, radius, value_radius, false);
  ConstraintSystem sys = empty_system(Problem::Commuting, a, radius, value_radius, L);
  const auto n = static_cast<std::uint32_t>(L.args.size());
  const auto nout = static_cast<std::uint32_t>(L.outs.size());
  RowGroup g;
  // symmetric in (x, y), so unordered pairs suffice
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = x; y < n; ++y) {
      // [phi(x),y] + [phi(y),x]
      for (std::uint32_t o = 0; o < nout; ++o) {
        for (const auto& [s, q] : L.out_arg[o][y].terms()) g.add(s, L.col(x, o), q);
        for (const auto& [s, q] : L.out_arg[o][x].terms()) g.add(s, L.col(y, o), q);
      }
      g.flush(sys, "commuting", {L.args[x], L.args[y]});
    }
  if (sys.rows.empty()) throw WindowTooSmall("no commuting constraint in the window");
  return sys;
}

ConstraintSystem assemble_system(Problem p, const AlgebraSpec& a, std::int64_t radius,
                                 std::int64_t value_radius) {
  switch (p) {
    case Problem::Biderivation: return assemble_biderivation_system(a, radius, value_radius);
    case Problem::Derivation: return assemble_derivation_system(a, radius, value_radius);
    case Problem::Commuting: return assemble_commuting_system(a, radius, value_radius);
    case Problem::SymmetricBiderivation: return assemble_symmetric_biderivation_system(a, radius, value_radius);
  }
  throw Error("unknown problem");
}

// ---------------------------------------------------------------- solution spaces

SolutionSpace nullspace(const ConstraintSystem& s, const SolverOptions& opts) {
  SolutionSpace sol;
  sol.algebra = s.algebra;
  sol.problem = s.problem;
  sol.radius = s.radius;
  sol.value_radius = s.value_radius;
  sol.columns = s.columns;
  sol.basis = nullspace_basis(s.rows, s.column_count(), LinalgOptions{opts.threads});
  return sol;
}

SolutionSpace project_to_core(const SolutionSpace& sol, std::int64_t core) {
  if (core < 0 || core > sol.radius)
    throw InvalidCore("core radius " + std::to_string(core) + " must lie in [0, " + std::to_string(sol.radius) + "]");
  auto in_core = [core](const BasisSymbol& s) { return std::llabs(s.degree()) <= core; };

  auto cols = std::make_shared<std::vector<UnknownIndex>>();
  std::vector<std::int64_t> remap(sol.columns->size(), -1);
  for (std::size_t c = 0; c < sol.columns->size(); ++c) {
    const auto& u = (*sol.columns)[c];
    if (in_core(u.arg1) && (!u.arg2 || in_core(*u.arg2))) {
      remap[c] = static_cast<std::int64_t>(cols->size());
      cols->push_back(u);
    }
  }
  std::vector<SparseVector> restricted;
  restricted.reserve(sol.basis.size());
  for (const auto& v : sol.basis) {
    SparseVector r;
    for (const auto& e : v)
      if (remap[e.col] >= 0) r.push_back({static_cast<std::uint32_t>(remap[e.col]), e.value});
    if (!r.empty()) restricted.push_back(std::move(r));
  }

  SolutionSpace out = sol;
  out.radius = core;
  out.columns = std::move(cols);
  out.basis = reduced_basis(restricted);
  return out;
}

BilinearMapWindow to_bilinear_map(const SolutionSpace& sol, const SparseVector& v) {
  BilinearMapWindow::Table t;
  const auto w = window_symbols(sol.algebra, sol.radius);
  for (const auto& x : w)
    for (const auto& y : w) t.emplace(BilinearMapWindow::Key{x, y}, Element());
  for (const auto& e : v) {
    const auto& u = (*sol.columns)[e.col];
    t.at({u.arg1, *u.arg2}).add_term(u.out, e.value);
  }
  return {sol.algebra, sol.radius, sol.value_radius, std::move(t)};
}

LinearMapWindow to_linear_map(const SolutionSpace& sol, const SparseVector& v) {
  LinearMapWindow::Table t;
  for (const auto& x : window_symbols(sol.algebra, sol.radius)) t.emplace(x, Element());
  for (const auto& e : v) {
    const auto& u = (*sol.columns)[e.col];
    t.at(u.arg1).add_term(u.out, e.value);
  }
  return {sol.algebra, sol.radius, std::move(t)};
}

namespace {

std::uint32_t column_of(const SolutionSpace& sol, const UnknownIndex& u) {
  const auto& cols = *sol.columns;
  auto it = std::lower_bound(cols.begin(), cols.end(), u);
  if (it == cols.end() || *it != u) throw OutOfWindow("no unknown " + to_string(u) + " in this solution space");
  return static_cast<std::uint32_t>(it - cols.begin());
}

} // namespace

SparseVector to_vector(const SolutionSpace& sol, const BilinearMapWindow& f) {
  std::vector<SparseEntry> entries;
  for (const auto& [k, v] : f.values())
    for (const auto& [s, q] : v.terms()) entries.push_back({column_of(sol, {k.first, k.second, s}), q});
  return canonicalize(std::move(entries));
}

SparseVector to_vector(const SolutionSpace& sol, const LinearMapWindow& phi) {
  std::vector<SparseEntry> entries;
  for (const auto& [x, v] : phi.values())
    for (const auto& [s, q] : v.terms()) entries.push_back({column_of(sol, {x, std::nullopt, s}), q});
  return canonicalize(std::move(entries));
}

std::vector<SparseVector> core_inner_derivations(const SolutionSpace& core_space) {
  std::vector<SparseVector> out;
  const std::int64_t reach = core_space.value_radius - core_space.radius;
  for (const auto& e : window_symbols(core_space.algebra, reach)) {
    if (e.is_central()) continue; // ad(c) = 0
    out.push_back(to_vector(core_space, inner_derivation(e, core_space.algebra, core_space.radius)));
  }
  return out;
}

std::vector<SparseVector> core_central_maps(const SolutionSpace& core_space) {
  std::vector<SparseVector> out;
  if (!core_space.algebra.has_center()) return out;
  for (const auto& e : window_symbols(core_space.algebra, core_space.radius)) {
    LinearMapWindow m = LinearMapWindow::from_function(
        core_space.algebra, core_space.radius,
        [&](const BasisSymbol& s) { return s == e ? Element(BasisSymbol::central()) : Element(); });
    out.push_back(to_vector(core_space, m));
  }
  return out;
}

// ---------------------------------------------------------------- parameters

Parameters extract_parameters(const BilinearMapWindow& core) {
  if (core.radius() < 1) throw InvalidCore("parameter extraction needs a core radius >= 1");
  const auto& a = core.algebra();
  const Element& probe = core.at(BasisSymbol::L(1), BasisSymbol::L(-1));
  Parameters p{probe.coefficient(BasisSymbol::L(0)) / 2,
               a.has_h() ? Rational(probe.coefficient(BasisSymbol::H(0)) / 2) : Rational(0)};
  for (const auto& [k, v] : core.values()) {
    Element expected = p.lambda * bracket(k.first, k.second, a);
    if (a.has_h()) expected += p.mu * bracket(omega(k.first, a), k.second, a);
    Element diff = v - expected;
    if (!diff.is_zero()) {
      throw NotInClassifiedFamily({k.first, k.second}, diff,
                                  "f(" + to_string(k.first) + ", " + to_string(k.second) +
                                      ") differs from lambda[x,y] + mu[omega(x),y] by " + to_string(diff));
    }
  }
  return p;
}

Parameters extract_commuting_parameters(const LinearMapWindow& core) {
  if (core.radius() < 1) throw InvalidCore("parameter extraction needs a core radius >= 1");
  const auto& a = core.algebra();
  const Element& probe = core.at(BasisSymbol::L(1));
  Parameters p{probe.coefficient(BasisSymbol::L(1)),
               a.has_h() ? probe.coefficient(BasisSymbol::H(1)) : Rational(0)};
  for (const auto& [x, v] : core.values()) {
    Element diff = v - p.lambda * Element(x);
    if (a.has_h()) diff -= p.mu * omega(x, a);
    Element noncentral = diff;
    noncentral.add_term(BasisSymbol::central(), -diff.coefficient(BasisSymbol::central()));
    if (!noncentral.is_zero()) {
      throw NotInClassifiedFamily({x}, noncentral,
                                  "phi(" + to_string(x) + ") differs from lambda x + mu omega(x) + sigma c by " +
                                      to_string(noncentral));
    }
  }
  return p;
}

// ---------------------------------------------------------------- classification

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<SparseVector> concat(std::vector<SparseVector> a, const std::vector<SparseVector>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

} // namespace

ClassificationReport classify(Problem p, const AlgebraSpec& a, std::int64_t radius, std::int64_t value_radius,
                              std::int64_t core, const SolverOptions& opts) {
  ClassificationReport rep;
  rep.algebra = a;
  rep.problem = p;
  rep.radius = radius;
  rep.value_radius = value_radius;
  rep.core = core;
  if (core > radius) throw InvalidCore("core radius exceeds the window radius");

  auto t = Clock::now();
  const ConstraintSystem sys = assemble_system(p, a, radius, value_radius);
  rep.timings_ms.emplace_back("assemble", ms_since(t));

  t = Clock::now();
  const SolutionSpace raw = nullspace(sys, opts);
  rep.raw_dimension = raw.dimension();
  rep.timings_ms.emplace_back("nullspace", ms_since(t));

  t = Clock::now();
  const SolutionSpace cs = project_to_core(raw, core);
  rep.core_dimension = cs.dimension();
  rep.timings_ms.emplace_back("project", ms_since(t));

  t = Clock::now();
  auto note_failure = [&](VerificationResult r) {
    if (!r.passed() && !rep.residual_failure) rep.residual_failure = std::move(r);
  };
  for (const auto& v : cs.basis) {
    if (is_bilinear(p)) {
      const BilinearMapWindow f = to_bilinear_map(cs, v);
      rep.core_basis.push_back(to_json(f));
      rep.parameters.push_back(extract_parameters(f));
      note_failure(p == Problem::Biderivation ? verify_biderivation(f) : verify_symmetric_biderivation(f));
    } else {
      const LinearMapWindow phi = to_linear_map(cs, v);
      rep.core_basis.push_back(to_json(phi));
      if (p == Problem::Commuting) {
        rep.parameters.push_back(extract_commuting_parameters(phi));
        note_failure(verify_commuting(phi));
      } else {
        note_failure(verify_derivation(phi));
      }
    }
  }

  if (p == Problem::Derivation) {
    const auto inner = core_inner_derivations(cs);
    auto known = inner;
    if (a.has_h()) known.push_back(to_vector(cs, standard_D(a, core)));
    const std::size_t known_rank = rank(known);
    for (std::size_t i = 0; i < cs.basis.size(); ++i) {
      if (rank(concat(known, {cs.basis[i]})) != known_rank) {
        throw NotInClassifiedFamily({}, to_linear_map(cs, cs.basis[i]).at(BasisSymbol::L(0)),
                                    "core derivation " + std::to_string(i) +
                                        " is outside the span of inner derivations" +
                                        (a.has_h() ? " and D" : ""));
      }
    }
    rep.quotient_dimension = rank(concat(inner, cs.basis)) - rank(inner);
  } else if (p == Problem::Commuting) {
    const auto central = core_central_maps(cs);
    rep.quotient_dimension = rank(concat(central, cs.basis)) - rank(central);
  }
  rep.timings_ms.emplace_back("check", ms_since(t));
  return rep;
}

} // namespace virasym
