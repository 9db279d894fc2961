#ifndef VIRASYM_LINALG_HPP
#define VIRASYM_LINALG_HPP

#include <virasym/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace virasym {

struct SparseEntry {
  std::uint32_t col;
  Rational value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Entries sorted by column, no explicit zeros.
using SparseVector = std::vector<SparseEntry>;

struct LinalgOptions {
  /// Worker threads for independent blocks; 0 or 1 means sequential. Never changes output.
  unsigned threads = 1;
};

/// Sorts by column, merges duplicates and drops zeros.
SparseVector canonicalize(std::vector<SparseEntry> entries);

/// Canonical reduced row echelon basis of span(vectors): rows ordered by leading
/// column, leading coefficient 1, every leading column zero in all other rows.
std::vector<SparseVector> reduced_basis(const std::vector<SparseVector>& vectors,
                                        const LinalgOptions& opts = {});

std::size_t rank(const std::vector<SparseVector>& vectors);

/// Canonical basis (in the sense of reduced_basis) of {v : row . v = 0 for all rows}
/// over `ncols` unknowns.
///
/// The system is split into blocks of columns connected through shared rows.
/// Each block is eliminated fraction-free over the integers with Markowitz pivot
/// selection, then back-substituted. The final reduction makes the result
/// independent of the pivot order.
std::vector<SparseVector> nullspace_basis(const std::vector<SparseVector>& rows, std::size_t ncols,
                                          const LinalgOptions& opts = {});

/// Rational dot product of two sparse vectors.
Rational dot(const SparseVector& a, const SparseVector& b);

} // namespace virasym

#endif // VIRASYM_LINALG_HPP
