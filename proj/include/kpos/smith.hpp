#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kpos/laurent.hpp"

namespace kpos {

// Row-major sparse integer matrix; each row holds (column, value) pairs sorted by column.
struct SparseIntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, std::int64_t>>> entries;

  SparseIntMatrix() = default;
  SparseIntMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r)) {}

  // Adds v to entry (r, c). Rows must be filled with nondecreasing columns.
  void add(int r, int c, std::int64_t v);
};

struct SmithInvariants {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next
};

// Rank and nontrivial invariant factors, computed exactly. Unit pivots are
// eliminated first (sparse Gaussian elimination); whatever is left is reduced
// densely. Arithmetic runs in checked 64-bit and restarts with big integers on overflow.
SmithInvariants smith_invariants(const SparseIntMatrix& m);

// Turns the diagonal of any diagonal form into invariant factors d1 | d2 | ...
// (entries of absolute value 1 and 0 are dropped).
std::vector<BigInt> invariant_factors(std::vector<BigInt> diagonal);

}  // namespace kpos
