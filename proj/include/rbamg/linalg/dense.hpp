#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "rbamg/linalg/types.hpp"

namespace rbamg {

class Vector {
 public:
  Vector() = default;
  explicit Vector(Index n, Scalar fill = {}) : data_(n, fill) {}
  Vector(std::initializer_list<Scalar> values) : data_(values) {}
  explicit Vector(std::vector<Scalar> values) : data_(std::move(values)) {}

  static Vector from_real(std::span<const double> values);

  Index size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  Scalar& operator[](Index i) { return data_[i]; }
  const Scalar& operator[](Index i) const { return data_[i]; }

  std::span<Scalar> values() noexcept { return data_; }
  std::span<const Scalar> values() const noexcept { return data_; }

  double norm() const;
  double norm_inf() const;
  bool all_finite() const;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(Scalar alpha);

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<Scalar> data_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator-(Vector v);
Vector operator*(Scalar alpha, Vector v);
Scalar dot(const Vector& a, const Vector& b);  // unconjugated a^T b

/// Dense row-major matrix. Sized at construction; element access is
/// unchecked, shape-mixing operations throw DimensionError.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols, Scalar fill = {})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static DenseMatrix identity(Index n);
  static DenseMatrix zeros(Index rows, Index cols) { return {rows, cols}; }
  static DenseMatrix diagonal(const Vector& d);
  static DenseMatrix from_columns(std::span<const Vector> columns, Index rows);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Scalar& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(Index i, Index j) const {
    return data_[i * cols_ + j];
  }

  std::span<Scalar> data() noexcept { return data_; }
  std::span<const Scalar> data() const noexcept { return data_; }
  std::span<Scalar> row(Index i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Scalar> row(Index i) const {
    return {data_.data() + i * cols_, cols_};
  }

  Vector column(Index j) const;
  void set_column(Index j, const Vector& v);
  Vector row_vector(Index i) const;

  DenseMatrix transpose() const;
  DenseMatrix adjoint() const;
  DenseMatrix block(Index r0, Index c0, Index nr, Index nc) const;
  void set_block(Index r0, Index c0, const DenseMatrix& b);
  DenseMatrix rows_at(std::span<const Index> idx) const;
  DenseMatrix cols_at(std::span<const Index> idx) const;
  DenseMatrix submatrix(std::span<const Index> row_idx,
                        std::span<const Index> col_idx) const;

  double norm_fro() const;
  double max_abs() const;
  bool all_finite() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(Scalar alpha);

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Scalar> data_;
};

std::string shape_of(const DenseMatrix& m);

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix m);
DenseMatrix operator*(Scalar alpha, DenseMatrix m);

/// Product through the OpenMP kernel; throws DimensionError naming both
/// shapes when the inner dimensions differ.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
Vector matvec(const DenseMatrix& a, const Vector& x);

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  return matmul(a, b);
}
inline Vector operator*(const DenseMatrix& a, const Vector& x) {
  return matvec(a, x);
}

/// a^k by repeated multiplication (a^0 = I).
DenseMatrix power(const DenseMatrix& a, unsigned k);

/// Column-vector <-> n x 1 matrix.
DenseMatrix as_column(const Vector& v);

/// Horizontal concatenation [a b].
DenseMatrix hstack(const DenseMatrix& a, const DenseMatrix& b);
/// Vertical concatenation [a; b].
DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b);

/// Promote a real row-major array.
DenseMatrix from_real(Index rows, Index cols, std::span<const double> values);

}  // namespace rbamg
