#include "rbamg/linalg/decomp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rbamg {

namespace {

Eigen::MatrixXcd to_eigen(const DenseMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

DenseMatrix from_eigen(const Eigen::MatrixXcd& m) {
  DenseMatrix a(m.rows(), m.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

void require_square(const DenseMatrix& a, const char* op) {
  if (!a.is_square())
    throw DimensionError(std::string(op) + ": matrix " + shape_of(a) +
                         " is not square");
}

// Permutation sorting eigenvalues by decreasing magnitude, with ties
// (relative 1e-10) broken by decreasing real part, then imaginary part.
std::vector<Index> spectral_order(const Eigen::VectorXcd& values) {
  const Index n = values.size();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(values[a]) > std::abs(values[b]);
  });
  if (n == 0) return order;

  const double scale = std::max(1.0, std::abs(values[order[0]]));
  const double tie = 1e-10 * scale;
  for (Index start = 0; start < n;) {
    Index stop = start + 1;
    while (stop < n && std::abs(values[order[start]]) -
                               std::abs(values[order[stop]]) <= tie)
      ++stop;
    std::stable_sort(order.begin() + start, order.begin() + stop,
                     [&](Index a, Index b) {
                       const Scalar va = values[a], vb = values[b];
                       if (std::abs(va.real() - vb.real()) > tie)
                         return va.real() > vb.real();
                       return va.imag() > vb.imag();
                     });
    start = stop;
  }
  return order;
}

}  // namespace

// ------------------------------------------------------------------- LU

LUFactorization::LUFactorization(const DenseMatrix& a) : lu_(a), perm_(a.rows()) {
  require_square(a, "LU");
  const Index n = a.rows();
  std::iota(perm_.begin(), perm_.end(), Index{0});
  const double threshold = kSingularPivotTol * a.norm_fro();

  for (Index k = 0; k < n; ++k) {
    Index piv = k;
    double best = std::abs(lu_(k, k));
    for (Index i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        piv = i;
      }
    if (best <= threshold || best == 0.0)
      throw SingularError("matrix is singular to tolerance: pivot " +
                              std::to_string(k) + " has magnitude " +
                              std::to_string(best),
                          k);
    if (piv != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(),
                       lu_.row(piv).begin());
      std::swap(perm_[k], perm_[piv]);
    }
    const Scalar inv_pivot = 1.0 / lu_(k, k);
    for (Index i = k + 1; i < n; ++i) {
      const Scalar l = lu_(i, k) * inv_pivot;
      lu_(i, k) = l;
      if (l == Scalar{}) continue;
      for (Index j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

DenseMatrix LUFactorization::solve(const DenseMatrix& b) const {
  const Index n = lu_.rows();
  if (b.rows() != n)
    throw DimensionError("solve: system " + shape_of(lu_) + " with rhs " +
                         shape_of(b));
  const Index m = b.cols();
  DenseMatrix x = b.rows_at(perm_);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < i; ++k) {
      const Scalar l = lu_(i, k);
      if (l == Scalar{}) continue;
      for (Index j = 0; j < m; ++j) x(i, j) -= l * x(k, j);
    }
  for (Index ii = n; ii-- > 0;) {
    for (Index k = ii + 1; k < n; ++k) {
      const Scalar u = lu_(ii, k);
      if (u == Scalar{}) continue;
      for (Index j = 0; j < m; ++j) x(ii, j) -= u * x(k, j);
    }
    const Scalar inv = 1.0 / lu_(ii, ii);
    for (Index j = 0; j < m; ++j) x(ii, j) *= inv;
  }
  return x;
}

Vector LUFactorization::solve(const Vector& b) const {
  return solve(as_column(b)).column(0);
}

DenseMatrix solve_dense(const DenseMatrix& a, const DenseMatrix& b) {
  return LUFactorization(a).solve(b);
}

Vector solve_dense(const DenseMatrix& a, const Vector& b) {
  return LUFactorization(a).solve(b);
}

DenseMatrix inverse(const DenseMatrix& a) {
  return solve_dense(a, DenseMatrix::identity(a.rows()));
}

// ---------------------------------------------------------------- eigen

EigenDecomposition eig_dense(const DenseMatrix& a) {
  require_square(a, "eig_dense");
  const Index n = a.rows();
  EigenDecomposition out;
  if (n == 0) return out;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a), true);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eig_dense: QR iteration did not converge");

  const auto order = spectral_order(solver.eigenvalues());
  out.values.resize(n);
  out.right = DenseMatrix(n, n);
  for (Index c = 0; c < n; ++c) {
    const Index src = order[c];
    out.values[c] = solver.eigenvalues()[src];
    Eigen::VectorXcd v = solver.eigenvectors().col(src);
    v.normalize();
    Index big = 0;
    for (Index i = 1; i < n; ++i)
      if (std::abs(v[i]) > std::abs(v[big]) + 1e-14) big = i;
    v *= std::conj(v[big]) / std::abs(v[big]);
    v[big] = std::abs(v[big]);
    for (Index i = 0; i < n; ++i) out.right(i, c) = v[i];
  }

  if (condition_number(out.right) > 1.0 / kEigenTol)
    throw ConvergenceError(
        "eig_dense: eigenvector matrix is numerically singular; the input is "
        "defective to tolerance and admits no biorthogonal normalization");
  try {
    out.left = inverse(out.right);
  } catch (const SingularError&) {
    throw ConvergenceError("eig_dense: matrix is defective to tolerance");
  }

  const double scale = std::max(a.norm_fro(), 1.0);
  DenseMatrix lambda(n, n);
  for (Index i = 0; i < n; ++i) lambda(i, i) = out.values[i];
  const double recon = (a * out.right - out.right * lambda).norm_fro();
  const double biorth =
      (out.left * out.right - DenseMatrix::identity(n)).norm_fro();
  if (recon > kEigenTol * scale || biorth > kEigenTol)
    throw ConvergenceError("eig_dense: reconstruction residual " +
                           std::to_string(recon) + ", biorthogonality " +
                           std::to_string(biorth) + " exceed tolerance");
  return out;
}

std::vector<Scalar> eigenvalues(const DenseMatrix& a) {
  require_square(a, "eigenvalues");
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a), false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eigenvalues: QR iteration did not converge");
  const auto order = spectral_order(solver.eigenvalues());
  std::vector<Scalar> values(a.rows());
  for (Index i = 0; i < a.rows(); ++i) values[i] = solver.eigenvalues()[order[i]];
  return values;
}

double spectral_radius(const DenseMatrix& a) {
  const auto values = eigenvalues(a);
  return values.empty() ? 0.0 : std::abs(values.front());
}

// ------------------------------------------------------------------ SVD

std::vector<double> singular_values(const DenseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double norm2(const DenseMatrix& a) {
  const auto s = singular_values(a);
  return s.empty() ? 0.0 : s.front();
}

double condition_number(const DenseMatrix& a) {
  const auto s = singular_values(a);
  if (s.empty()) return 1.0;
  if (s.back() == 0.0 || s.size() < std::min(a.rows(), a.cols()))
    return std::numeric_limits<double>::infinity();
  return s.front() / s.back();
}

Index numerical_rank(const DenseMatrix& a, double rel_tol) {
  const auto s = singular_values(a);
  if (s.empty() || s.front() == 0.0) return 0;
  return static_cast<Index>(std::count_if(
      s.begin(), s.end(), [&](double v) { return v > rel_tol * s.front(); }));
}

DenseMatrix null_space(const DenseMatrix& a, double rel_tol) {
  const Index n = a.cols();
  if (a.rows() == 0) return DenseMatrix::identity(n);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Index rank = 0;
  const double smax = s.size() ? s[0] : 0.0;
  for (Index i = 0; i < static_cast<Index>(s.size()); ++i)
    if (s[i] > rel_tol * smax && smax > 0.0) ++rank;
  const Eigen::MatrixXcd v = svd.matrixV();
  return from_eigen(v.rightCols(n - rank));
}

}  // namespace rbamg
