#include "rbamg/linalg/dense.hpp"

#include <algorithm>
#include <cmath>

#include "rbamg/linalg/kernels.hpp"

namespace rbamg {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_of(a) +
                         " vs " + shape_of(b));
}

void require_same_size(const Vector& a, const Vector& b, const char* op) {
  if (a.size() != b.size())
    throw DimensionError(std::string(op) + ": length mismatch " +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
}

bool finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

// ---------------------------------------------------------------- Vector

Vector Vector::from_real(std::span<const double> values) {
  Vector v(values.size());
  std::copy(values.begin(), values.end(), v.data_.begin());
  return v;
}

double Vector::norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double Vector::norm_inf() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool Vector::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), finite);
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_size(*this, other, "vector +");
  for (Index i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_size(*this, other, "vector -");
  for (Index i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vector& Vector::operator*=(Scalar alpha) {
  for (auto& z : data_) z *= alpha;
  return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator-(Vector v) { return v *= -1.0; }
Vector operator*(Scalar alpha, Vector v) { return v *= alpha; }

Scalar dot(const Vector& a, const Vector& b) {
  require_same_size(a, b, "dot");
  Scalar s{};
  for (Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ----------------------------------------------------------- DenseMatrix

DenseMatrix::DenseMatrix(
    std::initializer_list<std::initializer_list<Scalar>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_)
      throw DimensionError("ragged initializer list for DenseMatrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(Index n) {
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(const Vector& d) {
  DenseMatrix m(d.size(), d.size());
  for (Index i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::from_columns(std::span<const Vector> columns,
                                      Index rows) {
  DenseMatrix m(rows, columns.size());
  for (Index j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Vector DenseMatrix::column(Index j) const {
  Vector v(rows_);
  for (Index i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void DenseMatrix::set_column(Index j, const Vector& v) {
  if (v.size() != rows_)
    throw DimensionError("set_column: length " + std::to_string(v.size()) +
                         " into " + shape_of(*this));
  for (Index i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vector DenseMatrix::row_vector(Index i) const {
  auto r = row(i);
  return Vector(std::vector<Scalar>(r.begin(), r.end()));
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix t(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

DenseMatrix DenseMatrix::block(Index r0, Index c0, Index nr, Index nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw DimensionError("block out of range of " + shape_of(*this));
  DenseMatrix b(nr, nc);
  for (Index i = 0; i < nr; ++i)
    for (Index j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void DenseMatrix::set_block(Index r0, Index c0, const DenseMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
    throw DimensionError("set_block: " + shape_of(b) + " does not fit in " +
                         shape_of(*this));
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

DenseMatrix DenseMatrix::rows_at(std::span<const Index> idx) const {
  DenseMatrix out(idx.size(), cols_);
  for (Index i = 0; i < idx.size(); ++i) {
    if (idx[i] >= rows_) throw DimensionError("rows_at: index out of range");
    auto src = row(idx[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

DenseMatrix DenseMatrix::cols_at(std::span<const Index> idx) const {
  DenseMatrix out(rows_, idx.size());
  for (Index j = 0; j < idx.size(); ++j) {
    if (idx[j] >= cols_) throw DimensionError("cols_at: index out of range");
    for (Index i = 0; i < rows_; ++i) out(i, j) = (*this)(i, idx[j]);
  }
  return out;
}

DenseMatrix DenseMatrix::submatrix(std::span<const Index> row_idx,
                                   std::span<const Index> col_idx) const {
  return rows_at(row_idx).cols_at(col_idx);
}

double DenseMatrix::norm_fro() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool DenseMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), finite);
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  require_same_shape(*this, other, "matrix +");
  for (Index i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  require_same_shape(*this, other, "matrix -");
  for (Index i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(Scalar alpha) {
  for (auto& z : data_) z *= alpha;
  return *this;
}

std::string shape_of(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) {
  return lhs += rhs;
}
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) {
  return lhs -= rhs;
}
DenseMatrix operator-(DenseMatrix m) { return m *= -1.0; }
DenseMatrix operator*(Scalar alpha, DenseMatrix m) { return m *= alpha; }

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions disagree, " + shape_of(a) +
                         " * " + shape_of(b));
  DenseMatrix c(a.rows(), b.cols());
  kernels::gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

Vector matvec(const DenseMatrix& a, const Vector& x) {
  if (a.cols() != x.size())
    throw DimensionError("matvec: " + shape_of(a) + " * vector of length " +
                         std::to_string(x.size()));
  Vector y(a.rows());
  kernels::gemv(a.data(), x.values(), y.values(), a.rows(), a.cols());
  return y;
}

DenseMatrix power(const DenseMatrix& a, unsigned k) {
  if (!a.is_square()) throw DimensionError("power of non-square " + shape_of(a));
  DenseMatrix result = DenseMatrix::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) result = a * result;
  return result;
}

DenseMatrix as_column(const Vector& v) {
  DenseMatrix m(v.size(), 1);
  for (Index i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

DenseMatrix hstack(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows())
    throw DimensionError("hstack: " + shape_of(a) + " | " + shape_of(b));
  DenseMatrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols())
    throw DimensionError("vstack: " + shape_of(a) + " / " + shape_of(b));
  DenseMatrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

DenseMatrix from_real(Index rows, Index cols, std::span<const double> values) {
  if (values.size() != rows * cols)
    throw DimensionError("from_real: " + std::to_string(values.size()) +
                         " values for " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  DenseMatrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.data().begin());
  return m;
}

}  // namespace rbamg
