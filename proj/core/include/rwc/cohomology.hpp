#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rwc/complex.hpp"

namespace rwc {

/// Coboundary matrix from (d-1)-cochains to d-cochains: one row per
/// d-simplex, one column per (d-1)-simplex, entry (-1)^i when the column is
/// the row simplex with its i-th vertex deleted.
class CoboundaryMatrix {
 public:
  CoboundaryMatrix(std::size_t rows, std::size_t cols);

  /// Requires explicit faces in the view.
  static CoboundaryMatrix from_view(const SubComplexView& view);
  /// As above, reusing an indexer for (view.n, view.d).
  static CoboundaryMatrix from_view(const SubComplexView& view, const SimplexIndexer& idx);
  static CoboundaryMatrix from_local(const LocalComplex& local);
  /// All present d-simplices against the full (d-1)-skeleton.
  static CoboundaryMatrix from_complex(const WeightedComplex& x);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, int v);

  friend bool operator==(const CoboundaryMatrix&, const CoboundaryMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int8_t> entries_;
};

/// Dense text dump: header `rows cols`, then one line of space-separated
/// entries per row.
void write_matrix(std::ostream& os, const CoboundaryMatrix& m);
CoboundaryMatrix read_matrix(std::istream& is);

/// Rank over Q, computed by elimination over GF(2^31 - 1).
std::size_t rank_pm1(const CoboundaryMatrix& m);
/// Rank over Q by fraction-free (Bareiss) elimination in exact integers.
std::size_t rank_fraction_free(const CoboundaryMatrix& m);

/// dim Z^{d-1} = f_{d-1} - rank of the coboundary.
std::size_t cocycle_dim(const SubComplexView& view);
std::size_t cocycle_dim(const SubComplexView& view, const SimplexIndexer& idx);
std::size_t cocycle_dim(const LocalComplex& local);
std::size_t cocycle_dim(const WeightedComplex& x);

}  // namespace rwc
