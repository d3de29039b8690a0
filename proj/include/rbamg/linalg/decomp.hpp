#pragma once

#include <vector>

#include "rbamg/linalg/dense.hpp"

namespace rbamg {

/// Relative pivot threshold: a pivot with |u_jj| < kSingularPivotTol * ||A||_F
/// marks A as singular.
inline constexpr double kSingularPivotTol = 1e-14;
/// Tolerance for eigenvector reconstruction and biorthogonality.
inline constexpr double kEigenTol = 1e-8;

/// LU factorization with partial pivoting, kept so one factorization can
/// serve several right-hand sides.
class LUFactorization {
 public:
  /// Throws SingularError naming the (0-based) elimination step whose pivot
  /// fell below the threshold.
  explicit LUFactorization(const DenseMatrix& a);

  Index size() const noexcept { return lu_.rows(); }
  DenseMatrix solve(const DenseMatrix& b) const;
  Vector solve(const Vector& b) const;

 private:
  DenseMatrix lu_;
  std::vector<Index> perm_;
};

DenseMatrix solve_dense(const DenseMatrix& a, const DenseMatrix& b);
Vector solve_dense(const DenseMatrix& a, const Vector& b);
DenseMatrix inverse(const DenseMatrix& a);

/// Eigenpairs sorted by decreasing |lambda|; equal magnitudes (to 1e-10
/// relative) are ordered by decreasing real, then imaginary part. Right
/// eigenvector columns have unit 2-norm with their largest entry real
/// positive; left eigenvectors are the rows of V_R^{-1}, so V_L V_R = I.
struct EigenDecomposition {
  std::vector<Scalar> values;
  DenseMatrix right;  // V_R, columns
  DenseMatrix left;   // V_L, rows
};

/// Throws ConvergenceError if A is defective to tolerance.
EigenDecomposition eig_dense(const DenseMatrix& a);

/// Eigenvalues only, same ordering as eig_dense; works for defective input.
std::vector<Scalar> eigenvalues(const DenseMatrix& a);
double spectral_radius(const DenseMatrix& a);

/// Singular values in decreasing order.
std::vector<double> singular_values(const DenseMatrix& a);
/// Largest singular value.
double norm2(const DenseMatrix& a);
/// sigma_max / sigma_min (infinity if rank deficient).
double condition_number(const DenseMatrix& a);
/// Numerical rank with singular values above rel_tol * sigma_max.
Index numerical_rank(const DenseMatrix& a, double rel_tol);

/// Orthonormal basis (as columns) of ker(A), from the SVD.
DenseMatrix null_space(const DenseMatrix& a, double rel_tol = 1e-12);

}  // namespace rbamg
