#include <virasym/linalg.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

namespace virasym {

namespace {

// Sparse row over the integers, used by the fraction-free forward phase.
using IntEntry = std::pair<std::uint32_t, Integer>;
using IntRow = std::vector<IntEntry>;

// a += k * b
void axpy(SparseVector& a, const Rational& k, const SparseVector& b) {
  SparseVector out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->col < ib->col)) {
      out.push_back(std::move(*ia++));
    } else if (ia == a.end() || ib->col < ia->col) {
      out.push_back({ib->col, k * ib->value});
      ++ib;
    } else {
      Rational v = ia->value + k * ib->value;
      if (sgn(v) != 0) out.push_back({ia->col, std::move(v)});
      ++ia;
      ++ib;
    }
  }
  a = std::move(out);
}

const Rational* find_col(const SparseVector& v, std::uint32_t col) {
  auto it = std::lower_bound(v.begin(), v.end(), col,
                             [](const SparseEntry& e, std::uint32_t c) { return e.col < c; });
  return (it != v.end() && it->col == col) ? &it->value : nullptr;
}

const Integer* find_col(const IntRow& v, std::uint32_t col) {
  auto it = std::lower_bound(v.begin(), v.end(), col,
                             [](const IntEntry& e, std::uint32_t c) { return e.first < c; });
  return (it != v.end() && it->first == col) ? &it->second : nullptr;
}

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    g = gcd(g, v);
    if (g == 1) return;
  }
  for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// Clears denominators so that the row has coprime integer entries.
IntRow to_integer_row(const SparseVector& v) {
  Integer l = 1;
  for (const auto& e : v) l = lcm(l, Integer(e.value.get_den()));
  IntRow row;
  row.reserve(v.size());
  for (const auto& e : v) {
    Integer n = e.value.get_num() * (l / e.value.get_den());
    row.emplace_back(e.col, std::move(n));
  }
  make_primitive(row);
  return row;
}

// (p * a - q * b), dropping cancelled entries.
IntRow combine(const Integer& p, const IntRow& a, const Integer& q, const IntRow& b) {
  IntRow out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.emplace_back(ia->first, p * ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, -(q * ib->second));
      ++ib;
    } else {
      Integer v = p * ia->second - q * ib->second;
      if (sgn(v) != 0) out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  return out;
}

// Incremental reduced row echelon form over one block of columns.
class EchelonBuilder {
public:
  void insert(SparseVector v) {
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (const auto& e : v) {
      auto it = pivot_row_.find(e.col);
      if (it != pivot_row_.end()) hits.emplace_back(it->second, e.value);
    }
    for (const auto& [r, k] : hits) axpy(v, -k, rows_[r]);
    if (v.empty()) return;

    const std::uint32_t lead = v.front().col;
    const Rational inv = 1 / v.front().value;
    for (auto& e : v) e.value *= inv;
    for (auto& row : rows_) {
      if (const Rational* x = find_col(row, lead)) {
        Rational k = -*x;
        axpy(row, k, v);
      }
    }
    pivot_row_.emplace(lead, rows_.size());
    rows_.push_back(std::move(v));
  }

  std::vector<SparseVector> take_sorted() {
    std::vector<SparseVector> out;
    out.reserve(rows_.size());
    for (const auto& [lead, r] : pivot_row_) out.push_back(std::move(rows_[r]));
    rows_.clear();
    pivot_row_.clear();
    return out;
  }

private:
  std::vector<SparseVector> rows_;
  std::map<std::uint32_t, std::size_t> pivot_row_;
};

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a; // root is always the smallest column of the block
  }
  std::vector<std::uint32_t> parent;
};

struct Block {
  std::vector<std::uint32_t> cols;     // sorted global columns
  std::vector<std::size_t> members;    // indices into the input vectors
};

// Groups input vectors (and optionally all columns) into blocks with disjoint supports.
std::vector<Block> split_blocks(const std::vector<SparseVector>& vectors, std::size_t ncols,
                                bool include_untouched) {
  UnionFind uf(ncols);
  std::vector<bool> touched(ncols, false);
  for (const auto& v : vectors) {
    for (const auto& e : v) {
      touched[e.col] = true;
      uf.unite(v.front().col, e.col);
    }
  }
  std::map<std::uint32_t, std::size_t> block_of_root;
  std::vector<Block> blocks;
  for (std::uint32_t c = 0; c < ncols; ++c) {
    if (!touched[c] && !include_untouched) continue;
    std::uint32_t root = uf.find(c);
    auto [it, fresh] = block_of_root.emplace(root, blocks.size());
    if (fresh) blocks.emplace_back();
    blocks[it->second].cols.push_back(c);
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].empty()) continue;
    blocks[block_of_root.at(uf.find(vectors[i].front().col))].members.push_back(i);
  }
  return blocks;
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results are written by index,
// so the caller sees the same output regardless of scheduling.
void for_each_index(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

SparseVector localize(const SparseVector& v, const std::vector<std::uint32_t>& cols) {
  SparseVector out;
  out.reserve(v.size());
  for (const auto& e : v) {
    auto it = std::lower_bound(cols.begin(), cols.end(), e.col);
    out.push_back({static_cast<std::uint32_t>(it - cols.begin()), e.value});
  }
  return out;
}

SparseVector globalize(SparseVector v, const std::vector<std::uint32_t>& cols) {
  for (auto& e : v) e.col = cols[e.col];
  return v;
}

// Merges per-block reduced bases into a single list ordered by leading column.
std::vector<SparseVector> merge_by_lead(std::vector<std::vector<SparseVector>> parts) {
  std::vector<SparseVector> out;
  for (auto& p : parts)
    for (auto& v : p) out.push_back(std::move(v));
  std::sort(out.begin(), out.end(),
            [](const SparseVector& a, const SparseVector& b) { return a.front().col < b.front().col; });
  return out;
}

std::vector<SparseVector> reduce_block(std::vector<SparseVector> vectors) {
  EchelonBuilder builder;
  for (auto& v : vectors) builder.insert(std::move(v));
  return builder.take_sorted();
}

// Primitive integer rows with a positive leading entry, sorted and without repeats.
std::vector<IntRow> normalized_rows(const std::vector<SparseVector>& local_rows) {
  std::vector<IntRow> rows;
  rows.reserve(local_rows.size());
  for (const auto& r : local_rows) {
    if (r.empty()) continue;
    IntRow row = to_integer_row(r);
    if (sgn(row.front().second) < 0)
      for (auto& e : row) e.second = -e.second;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

// Nullspace of one block; rows and columns are block-local.
std::vector<SparseVector> block_nullspace(const std::vector<SparseVector>& local_rows,
                                          std::size_t ncols) {
  std::vector<IntRow> rows = normalized_rows(local_rows);
  std::vector<std::size_t> colcount(ncols, 0);
  std::vector<std::vector<std::uint32_t>> col_rows(ncols); // may hold stale row ids
  std::set<std::pair<std::size_t, std::uint32_t>> queue;   // (length, row) of active rows
  for (std::uint32_t r = 0; r < rows.size(); ++r) {
    for (const auto& e : rows[r]) {
      ++colcount[e.first];
      col_rows[e.first].push_back(r);
    }
    queue.emplace(rows[r].size(), r);
  }

  // Forward phase. Markowitz-style choice: the shortest active row, and within it the
  // column with the fewest active entries; ties go to the lower row and column.
  std::vector<std::pair<std::size_t, std::uint32_t>> pivots;
  while (!queue.empty()) {
    const std::uint32_t pr = queue.begin()->second;
    queue.erase(queue.begin());
    std::uint32_t pc = rows[pr].front().first;
    for (const auto& e : rows[pr])
      if (colcount[e.first] < colcount[pc]) pc = e.first;
    for (const auto& e : rows[pr]) --colcount[e.first];
    pivots.emplace_back(pr, pc);
    const Integer p = *find_col(rows[pr], pc);

    std::vector<std::uint32_t> targets;
    targets.swap(col_rows[pc]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::uint32_t i : targets) {
      if (i == pr || !queue.contains({rows[i].size(), i})) continue;
      const Integer* a = find_col(rows[i], pc);
      if (a == nullptr) continue;
      const Integer g = gcd(p, *a);
      const Integer ps = p / g;
      const Integer as = *a / g;
      queue.erase({rows[i].size(), i});
      for (const auto& e : rows[i]) --colcount[e.first];
      IntRow next = combine(ps, rows[i], as, rows[pr]);
      make_primitive(next);
      for (const auto& e : next) {
        ++colcount[e.first];
        if (!find_col(rows[i], e.first)) col_rows[e.first].push_back(i);
      }
      rows[i] = std::move(next);
      if (!rows[i].empty()) queue.emplace(rows[i].size(), i);
    }
  }

  // Back substitution in rationals, pivot coefficient normalized to 1.
  std::vector<SparseVector> reduced(pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    const auto& [r, c] = pivots[k];
    const Integer& p = *find_col(rows[r], c);
    SparseVector v;
    v.reserve(rows[r].size());
    for (const auto& [col, x] : rows[r]) {
      Rational q(x, p);
      q.canonicalize();
      v.push_back({col, std::move(q)});
    }
    reduced[k] = std::move(v);
  }
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const std::uint32_t c = pivots[k].second;
    for (std::size_t j = 0; j < k; ++j) {
      if (const Rational* x = find_col(reduced[j], c)) {
        Rational m = -*x;
        axpy(reduced[j], m, reduced[k]);
      }
    }
  }

  std::vector<bool> is_pivot(ncols, false);
  for (const auto& [r, c] : pivots) is_pivot[c] = true;
  std::vector<std::vector<SparseEntry>> kernel(ncols);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    const std::uint32_t c = pivots[k].second;
    for (const auto& e : reduced[k]) {
      if (e.col != c) kernel[e.col].push_back({c, -e.value});
    }
  }
  std::vector<SparseVector> basis;
  for (std::uint32_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    kernel[f].push_back({f, Rational(1)});
    basis.push_back(canonicalize(std::move(kernel[f])));
  }
  return reduce_block(std::move(basis));
}

} // namespace

SparseVector canonicalize(std::vector<SparseEntry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  SparseVector out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.empty() && out.back().col == e.col) {
      out.back().value += e.value;
    } else {
      if (!out.empty() && sgn(out.back().value) == 0) out.pop_back();
      out.push_back(std::move(e));
    }
  }
  if (!out.empty() && sgn(out.back().value) == 0) out.pop_back();
  return out;
}

std::vector<SparseVector> reduced_basis(const std::vector<SparseVector>& vectors,
                                        const LinalgOptions& opts) {
  std::uint32_t ncols = 0;
  for (const auto& v : vectors)
    if (!v.empty()) ncols = std::max(ncols, v.back().col + 1);
  const auto blocks = split_blocks(vectors, ncols, false);
  std::vector<std::vector<SparseVector>> parts(blocks.size());
  for_each_index(blocks.size(), opts.threads, [&](std::size_t b) {
    std::vector<SparseVector> local;
    local.reserve(blocks[b].members.size());
    for (std::size_t i : blocks[b].members) local.push_back(localize(vectors[i], blocks[b].cols));
    auto reduced = reduce_block(std::move(local));
    for (auto& v : reduced) v = globalize(std::move(v), blocks[b].cols);
    parts[b] = std::move(reduced);
  });
  return merge_by_lead(std::move(parts));
}

std::size_t rank(const std::vector<SparseVector>& vectors) { return reduced_basis(vectors).size(); }

std::vector<SparseVector> nullspace_basis(const std::vector<SparseVector>& rows, std::size_t ncols,
                                          const LinalgOptions& opts) {
  const auto blocks = split_blocks(rows, ncols, true);
  std::vector<std::vector<SparseVector>> parts(blocks.size());
  for_each_index(blocks.size(), opts.threads, [&](std::size_t b) {
    const Block& blk = blocks[b];
    std::vector<SparseVector> local;
    local.reserve(blk.members.size());
    for (std::size_t i : blk.members) local.push_back(localize(rows[i], blk.cols));
    auto kernel = block_nullspace(local, blk.cols.size());
    for (auto& v : kernel) v = globalize(std::move(v), blk.cols);
    parts[b] = std::move(kernel);
  });
  return merge_by_lead(std::move(parts));
}

Rational dot(const SparseVector& a, const SparseVector& b) {
  Rational s = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->col < ib->col) {
      ++ia;
    } else if (ib->col < ia->col) {
      ++ib;
    } else {
      s += ia->value * ib->value;
      ++ia;
      ++ib;
    }
  }
  return s;
}

} // namespace virasym
