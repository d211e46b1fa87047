#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "latticecalc/rational.hpp"

namespace latticecalc::linalg {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

// Sparse row: (column, value) pairs with strictly increasing columns.
using SparseIntegerRow = std::vector<std::pair<std::size_t, Integer>>;

/*
 * Incremental fraction-free Gauss-Jordan elimination.
 *
 * Rows are kept as primitive integer vectors (content 1, positive leading
 * entry). Every stored row is zero in every other row's pivot column, so the
 * stored system is a row-scaled reduced echelon form and reducing a new row
 * takes a single pass over its pivot columns. The pivot of a new row is its
 * smallest nonzero column after reduction. Since the reduced echelon form of
 * a row space is unique, rank(), rref() and nullspace() do not depend on the
 * order in which rows are added.
 */
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t columns);

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return rows_.size(); }

  // Returns true when the row was independent of the rows added so far.
  bool add_row(const RationalVector& row);
  bool add_row(const std::vector<std::pair<std::size_t, Rational>>& row);
  bool add_row(SparseIntegerRow row);

  // Reduced row echelon basis of the row space, rows ordered by pivot column.
  RationalMatrix rref() const;

  // Canonical nullspace basis: one vector per free column (ascending), with a
  // 1 in that column and 0 in every other free column.
  RationalMatrix nullspace() const;

  std::vector<std::size_t> pivot_columns() const;

 private:
  struct PivotRow {
    std::size_t pivot;
    SparseIntegerRow entries;
  };

  std::size_t columns_;
  std::vector<PivotRow> rows_;            // sorted by pivot column
  std::vector<std::ptrdiff_t> row_of_;    // column -> index into rows_, or -1
};

std::size_t rank(const RationalMatrix& matrix, std::size_t columns);
RationalMatrix nullspace(const RationalMatrix& matrix, std::size_t columns);
RationalMatrix rref(const RationalMatrix& matrix, std::size_t columns);

}  // namespace latticecalc::linalg
