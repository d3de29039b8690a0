#pragma once

#include <span>
#include <vector>

#include "rbamg/linalg/dense.hpp"

namespace rbamg {

/// Compressed row storage. Column indices are strictly increasing within a
/// row and no explicit zeros are stored.
class SparseMatrix {
 public:
  struct Triplet {
    Index row;
    Index col;
    Scalar value;
  };

  SparseMatrix() : row_offsets_{0} {}
  SparseMatrix(Index rows, Index cols)
      : rows_(rows), cols_(cols), row_offsets_(rows + 1, 0) {}

  /// Duplicates are summed; entries that end up exactly zero are dropped.
  static SparseMatrix from_triplets(Index rows, Index cols,
                                    std::vector<Triplet> triplets);
  static SparseMatrix from_dense(const DenseMatrix& m);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Index nnz() const noexcept { return values_.size(); }

  std::span<const Index> row_offsets() const noexcept { return row_offsets_; }
  std::span<const Index> col_indices() const noexcept { return col_indices_; }
  std::span<const Scalar> values() const noexcept { return values_; }

  /// Stored value or zero.
  Scalar at(Index i, Index j) const;

  DenseMatrix to_dense() const;
  std::vector<Triplet> triplets() const;
  bool is_symmetric() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> row_offsets_;
  std::vector<Index> col_indices_;
  std::vector<Scalar> values_;
};

Vector operator*(const SparseMatrix& a, const Vector& x);

}  // namespace rbamg
