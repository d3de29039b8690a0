#pragma once

// Dense oracles and small fixtures shared by the unit and acceptance tests.

#include <cmath>

#include "rbamg/linalg/decomp.hpp"
#include "rbamg/linalg/dense.hpp"
#include "rbamg/problems.hpp"
#include "rbamg/relaxation.hpp"

namespace rbamg::test {

inline DenseMatrix dense(const ProblemSpec& spec) { return generate(spec).to_dense(); }

inline RelaxationSetup jacobi(const ProblemSpec& spec, double omega = 2.0 / 3.0) {
  return build_setup(dense(spec), SmootherSpec{SmootherKind::jacobi, omega});
}

inline RelaxationSetup jacobi(const DenseMatrix& A, double omega = 2.0 / 3.0) {
  return build_setup(A, SmootherSpec{SmootherKind::jacobi, omega});
}

/// T^k v by explicit repeated multiplication.
inline Vector apply_power(const DenseMatrix& T, Vector v, Index k) {
  for (Index i = 0; i < k; ++i) v = T * v;
  return v;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  return (a - b).max_abs();
}

inline double rel_diff(const Vector& a, const Vector& b) {
  const double den = b.norm();
  return den > 0 ? (a - b).norm() / den : (a - b).norm();
}

/// Periodic 1D stencil [-1, d, -1] (a ring graph).
inline DenseMatrix ring(Index n, double diagonal = 2.5) {
  DenseMatrix A(n, n);
  for (Index i = 0; i < n; ++i) {
    A(i, i) = diagonal;
    A(i, (i + 1) % n) = -1.0;
    A(i, (i + n - 1) % n) = -1.0;
  }
  return A;
}

}  // namespace rbamg::test
