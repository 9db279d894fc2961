// Test-only reference implementations. Nothing here calls into the library's bracket or
// elimination code, so tests can compare the two routes.
#ifndef VIRASYM_TESTS_ORACLE_HPP
#define VIRASYM_TESTS_ORACLE_HPP

#include <virasym/algebra.hpp>
#include <virasym/linalg.hpp>

#include <map>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using virasym::Rational;

// Symbols as (family char, index): 'L', 'H', 'c'.
using Sym = std::pair<char, long>;
using Vec = std::map<Sym, Rational>;

inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline void add(Vec& v, const Sym& s, const Rational& q) {
  v[s] += q;
  if (v[s] == 0) v.erase(s);
}

// Structure constants straight from the defining brackets; [H_m, L_n] is obtained by
// antisymmetry from [L_n, H_m].
inline Vec bracket(const Sym& x, const Sym& y, bool with_h, bool with_c) {
  (void)with_h;
  Vec out;
  if (x.first == 'c' || y.first == 'c') return out;
  if (x.first == 'H' && y.first == 'H') return out;
  if (x.first == 'H' && y.first == 'L') {
    for (const auto& [s, q] : bracket(y, x, with_h, with_c)) add(out, s, -q);
    return out;
  }
  const long m = x.second;
  const long n = y.second;
  const char fam = (x.first == 'L' && y.first == 'L') ? 'L' : 'H';
  add(out, {fam, m + n}, Rational(m - n));
  if (with_c && m + n == 0) add(out, {'c', 0}, frac(m * m * m - m, 12));
  return out;
}

inline std::vector<Sym> window(bool with_h, bool with_c, long n) {
  std::vector<Sym> w;
  for (long i = -n; i <= n; ++i) w.push_back({'L', i});
  if (with_h)
    for (long i = -n; i <= n; ++i) w.push_back({'H', i});
  if (with_c) w.push_back({'c', 0});
  return w;
}

inline bool has_h(const virasym::AlgebraSpec& a) { return a.has_h(); }
inline bool has_c(const virasym::AlgebraSpec& a) { return a.has_center(); }

using Matrix = std::vector<std::vector<Rational>>;

// Gauss-Jordan with pivots taken in column order. Returns the nonzero rows.
inline Matrix rref(Matrix m, std::size_t ncols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational k = m[i][c];
      for (std::size_t j = 0; j < ncols; ++j) m[i][j] -= k * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

inline Matrix nullspace(const Matrix& a, std::size_t ncols) {
  const Matrix r = rref(a, ncols);
  std::vector<long> pivot_of_col(ncols, -1);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t c = 0; c < ncols; ++c)
      if (r[i][c] != 0) {
        pivot_of_col[c] = static_cast<long>(i);
        break;
      }
  Matrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[f] = 1;
    for (std::size_t c = 0; c < ncols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -r[pivot_of_col[c]][f];
    basis.push_back(std::move(v));
  }
  return rref(basis, ncols);
}

inline std::size_t rank(const Matrix& a, std::size_t ncols) { return rref(a, ncols).size(); }

inline std::vector<Rational> densify(const virasym::SparseVector& v, std::size_t ncols) {
  std::vector<Rational> d(ncols, Rational(0));
  for (const auto& e : v) d[e.col] = e.value;
  return d;
}

// Full dimension of the space of commuting maps restricted to core symbols, computed densely
// on the window of radius n with values of radius 2n.
inline std::size_t commuting_core_dimension(const virasym::AlgebraSpec& a, long n, long core) {
  const bool h = has_h(a);
  const bool c = has_c(a);
  const auto args = window(h, c, n);
  const auto outs = window(h, c, 2 * n);
  const std::size_t ncols = args.size() * outs.size();
  Matrix rows;
  for (std::size_t x = 0; x < args.size(); ++x)
    for (std::size_t y = 0; y < args.size(); ++y) {
      // [phi(x), y] + [phi(y), x] per output symbol
      std::map<Sym, std::vector<Rational>> eq;
      auto term = [&](std::size_t arg, std::size_t other) {
        for (std::size_t o = 0; o < outs.size(); ++o)
          for (const auto& [s, q] : bracket(outs[o], args[other], h, c)) {
            auto& row = eq.try_emplace(s, std::vector<Rational>(ncols, Rational(0))).first->second;
            row[arg * outs.size() + o] += q;
          }
      };
      term(x, y);
      term(y, x);
      for (auto& [s, row] : eq) rows.push_back(std::move(row));
    }
  const Matrix kernel = nullspace(rows, ncols);
  Matrix projected;
  for (const auto& v : kernel) {
    std::vector<Rational> p(ncols, Rational(0));
    for (std::size_t x = 0; x < args.size(); ++x) {
      if (args[x].first != 'c' && std::labs(args[x].second) > core) continue;
      for (std::size_t o = 0; o < outs.size(); ++o) p[x * outs.size() + o] = v[x * outs.size() + o];
    }
    projected.push_back(std::move(p));
  }
  return rank(projected, ncols);
}

// Dimension of the core projection of the window center, computed densely.
inline std::size_t center_core_dimension(const virasym::AlgebraSpec& a, long n, long core, bool* core_is_c) {
  const bool h = has_h(a);
  const bool c = has_c(a);
  const auto syms = window(h, c, n);
  Matrix rows;
  for (const auto& e : syms) {
    std::map<Sym, std::vector<Rational>> eq;
    for (std::size_t j = 0; j < syms.size(); ++j)
      for (const auto& [s, q] : bracket(syms[j], e, h, c)) {
        auto& row = eq.try_emplace(s, std::vector<Rational>(syms.size(), Rational(0))).first->second;
        row[j] += q;
      }
    for (auto& [s, row] : eq) rows.push_back(std::move(row));
  }
  const Matrix kernel = nullspace(rows, syms.size());
  Matrix projected;
  for (const auto& v : kernel) {
    std::vector<Rational> p(syms.size(), Rational(0));
    for (std::size_t j = 0; j < syms.size(); ++j)
      if (syms[j].first == 'c' || std::labs(syms[j].second) <= core) p[j] = v[j];
    projected.push_back(std::move(p));
  }
  const Matrix r = rref(projected, syms.size());
  if (core_is_c != nullptr) {
    *core_is_c = true;
    for (const auto& row : r)
      for (std::size_t j = 0; j < syms.size(); ++j)
        if (row[j] != 0 && syms[j].first != 'c') *core_is_c = false;
  }
  return r.size();
}

// Random sparse rational element on a window, for property tests.
inline virasym::Element random_element(std::mt19937& rng, const virasym::AlgebraSpec& a, long radius,
                                       int max_terms = 4) {
  const auto w = virasym::window_symbols(a, radius);
  std::uniform_int_distribution<std::size_t> pick(0, w.size() - 1);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> count(0, max_terms);
  virasym::Element x;
  for (int i = count(rng); i > 0; --i) {
    x.add_term(w[pick(rng)], frac(num(rng), den(rng)));
  }
  return x;
}

} // namespace oracle

#endif // VIRASYM_TESTS_ORACLE_HPP
