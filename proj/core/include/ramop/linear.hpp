#pragma once

// Exact sparse linear algebra over Q.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ramop::linear {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (GMP canonicalizes after every arithmetic operation).
using Rational = mpq_class;
using Index = std::uint32_t;

struct Entry {
  Index col;
  Rational value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse vector: entries sorted by strictly increasing column, no zeros.
using SparseVector = std::vector<Entry>;

struct SparseMatrix {
  std::vector<SparseVector> rows;
  Index ncols = 0;

  static SparseMatrix identity(Index n);
  static SparseMatrix from_dense(const std::vector<std::vector<long>>& dense);
  SparseMatrix transpose() const;
};

/// Sorts by column, merges duplicates and drops zeros.
SparseVector canonical(std::vector<Entry> entries);

/// a + factor * b
SparseVector axpy(const SparseVector& a, const Rational& factor, const SparseVector& b);
SparseVector scaled(const SparseVector& v, const Rational& factor);
bool is_zero(const SparseVector& v);
std::string to_string(const SparseVector& v);

/// Reduced row-echelon form. rows[i] has pivot pivots[i] with entry 1 and no
/// support on any other pivot column; pivots strictly increase.
struct Echelon {
  std::vector<SparseVector> rows;
  std::vector<Index> pivots;
  Index ncols = 0;

  std::size_t rank() const { return pivots.size(); }
  /// Position of the row whose pivot is `col`, if any.
  std::optional<std::size_t> row_of_pivot(Index col) const;
};

/// Incremental elimination. Rows are kept in semi-echelon form while
/// accumulating; finish() back-substitutes into RREF.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(Index ncols);

  /// Reduces v against the rows so far; returns true if it enlarged the span.
  bool add(const SparseVector& v);
  std::size_t rank() const { return rows_.size(); }
  Index ncols() const { return ncols_; }
  bool full() const { return rows_.size() == ncols_; }
  SparseVector reduce(SparseVector v) const;
  Echelon finish() &&;

 private:
  Index ncols_;
  std::vector<SparseVector> rows_;
  std::vector<std::int64_t> pivot_row_;  // column -> row, or -1
};

Echelon rref(const SparseMatrix& m);
std::size_t rank(const SparseMatrix& m);

/// RREF of rows that each live inside one block of columns (block[c] is the
/// block of column c). Blocks are eliminated concurrently and merged.
/// Throws std::logic_error on a row touching two blocks.
Echelon rref_blockwise(Index ncols, const std::vector<std::size_t>& block,
                       const std::vector<SparseVector>& rows);

/// Result has no support on pivot columns and v - result lies in the row
/// space of `reducer`.
SparseVector reduce(const SparseVector& v, const Echelon& reducer);

/// Basis of ambient/span: non-pivot columns, plus the coordinate map.
struct QuotientBasis {
  std::vector<Index> basis;         // ambient columns not hit by a pivot
  std::vector<std::int64_t> coord;  // ambient column -> basis position, or -1
  Echelon reducer;

  /// Reduces v and rewrites it on basis positions.
  SparseVector coordinates(const SparseVector& v) const;
};

QuotientBasis quotient_basis(const SparseMatrix& span);
QuotientBasis quotient_basis(Echelon reducer);

}  // namespace ramop::linear
