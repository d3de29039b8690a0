#include "rbamg/linalg/sparse.hpp"

#include <algorithm>

#include "rbamg/linalg/kernels.hpp"

namespace rbamg {

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols,
                                         std::vector<Triplet> triplets) {
  for (const auto& t : triplets)
    if (t.row >= rows || t.col >= cols)
      throw DimensionError("triplet (" + std::to_string(t.row) + "," +
                           std::to_string(t.col) + ") outside " +
                           std::to_string(rows) + "x" + std::to_string(cols));

  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });

  SparseMatrix m(rows, cols);
  for (Index p = 0; p < triplets.size();) {
    const Index r = triplets[p].row;
    const Index c = triplets[p].col;
    Scalar sum{};
    for (; p < triplets.size() && triplets[p].row == r && triplets[p].col == c;
         ++p)
      sum += triplets[p].value;
    if (sum == Scalar{}) continue;
    m.col_indices_.push_back(c);
    m.values_.push_back(sum);
    ++m.row_offsets_[r + 1];
  }
  for (Index i = 0; i < rows; ++i) m.row_offsets_[i + 1] += m.row_offsets_[i];
  return m;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& d) {
  std::vector<Triplet> t;
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j)
      if (d(i, j) != Scalar{}) t.push_back({i, j, d(i, j)});
  return from_triplets(d.rows(), d.cols(), std::move(t));
}

Scalar SparseMatrix::at(Index i, Index j) const {
  const auto first = col_indices_.begin() + row_offsets_[i];
  const auto last = col_indices_.begin() + row_offsets_[i + 1];
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return {};
  return values_[it - col_indices_.begin()];
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (Index i = 0; i < rows_; ++i)
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
      d(i, col_indices_[p]) = values_[p];
  return d;
}

std::vector<SparseMatrix::Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (Index i = 0; i < rows_; ++i)
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
      t.push_back({i, col_indices_[p], values_[p]});
  return t;
}

bool SparseMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (Index i = 0; i < rows_; ++i)
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
      if (at(col_indices_[p], i) != values_[p]) return false;
  return true;
}

Vector operator*(const SparseMatrix& a, const Vector& x) {
  if (a.cols() != x.size())
    throw DimensionError("spmv: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " * vector of length " +
                         std::to_string(x.size()));
  Vector y(a.rows());
  kernels::csr_spmv(a.row_offsets(), a.col_indices(), a.values(), x.values(),
                    y.values());
  return y;
}

}  // namespace rbamg
