#include <doctest.h>

#include <virasym/linalg.hpp>

#include "oracle.hpp"

#include <random>

using namespace virasym;

namespace {

oracle::Matrix dense(const std::vector<SparseVector>& vs, std::size_t ncols) {
  oracle::Matrix m;
  for (const auto& v : vs) m.push_back(oracle::densify(v, ncols));
  return m;
}

// Sparse rational system; low row density leaves several independent column blocks.
std::vector<SparseVector> random_system(std::mt19937& rng, std::size_t nrows, std::size_t ncols, int per_row) {
  std::uniform_int_distribution<std::uint32_t> col(0, static_cast<std::uint32_t>(ncols - 1));
  std::uniform_int_distribution<int> val(-4, 4);
  std::vector<SparseVector> rows;
  for (std::size_t i = 0; i < nrows; ++i) {
    std::vector<SparseEntry> e;
    for (int k = 0; k < per_row; ++k) e.push_back({col(rng), oracle::frac(val(rng), 1 + (k % 3))});
    rows.push_back(canonicalize(std::move(e)));
  }
  return rows;
}

} // namespace

TEST_CASE("nullspace examples") {
  std::vector<SparseVector> id = {{{0, 1}}, {{1, 1}}, {{2, 1}}};
  CHECK(nullspace_basis(id, 3).empty());

  const auto k = nullspace_basis({{{0, 1}, {1, 1}}}, 2);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == SparseVector{{0, 1}, {1, -1}});

  CHECK(nullspace_basis({}, 2).size() == 2);
}

TEST_CASE("canonicalize merges and drops zeros") {
  const SparseVector v = canonicalize({{3, 2}, {1, 1}, {3, -2}, {0, 0}, {1, Rational(1, 2)}});
  CHECK(v == SparseVector{{1, Rational(3, 2)}});
}

TEST_CASE("nullspace matches dense elimination on random systems") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 40; ++t) {
    const std::size_t ncols = 6 + t % 17;
    const std::size_t nrows = 2 + (t * 7) % 19;
    const auto rows = random_system(rng, nrows, ncols, 1 + t % 4);
    const auto got = nullspace_basis(rows, ncols);
    CHECK(dense(got, ncols) == oracle::nullspace(dense(rows, ncols), ncols));
    for (const auto& v : got)
      for (const auto& r : rows) CHECK(dot(r, v) == 0);

    LinalgOptions par;
    par.threads = 4;
    CHECK(nullspace_basis(rows, ncols, par) == got);
  }
}

TEST_CASE("reduced basis is canonical") {
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    const std::size_t ncols = 5 + t % 9;
    const auto vs = random_system(rng, 1 + t % 7, ncols, 3);
    const auto r = reduced_basis(vs);
    CHECK(dense(r, ncols) == oracle::rref(dense(vs, ncols), ncols));
    CHECK(rank(vs) == r.size());

    // any invertible recombination of the input gives the same basis
    std::vector<SparseVector> mixed;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      std::vector<SparseEntry> e;
      for (const auto& x : vs[i]) e.push_back({x.col, x.value * 3});
      if (i + 1 < vs.size())
        for (const auto& x : vs[i + 1]) e.push_back({x.col, x.value});
      mixed.push_back(canonicalize(std::move(e)));
    }
    CHECK(reduced_basis(mixed) == r);
  }
}

TEST_CASE("dot") {
  CHECK(dot({{0, 2}, {3, 1}}, {{3, Rational(1, 2)}, {4, 9}}) == Rational(1, 2));
  CHECK(dot({}, {{1, 1}}) == 0);
}
