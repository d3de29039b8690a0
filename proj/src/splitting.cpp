#include "rbamg/splitting.hpp"

#include <algorithm>
#include <cmath>

#include "rbamg/linalg/decomp.hpp"

namespace rbamg {

CFSplit::CFSplit(Index n, std::vector<Index> coarse)
    : n_(n), coarse_(std::move(coarse)), is_coarse_(n, false) {
  std::sort(coarse_.begin(), coarse_.end());
  for (Index c : coarse_) {
    if (c >= n_)
      throw PreconditionError("coarse index " + std::to_string(c) +
                              " out of range for n=" + std::to_string(n_));
    if (is_coarse_[c])
      throw PreconditionError("coarse index " + std::to_string(c) +
                              " listed twice");
    is_coarse_[c] = true;
  }
  for (Index i = 0; i < n_; ++i)
    if (!is_coarse_[i]) fine_.push_back(i);
  if (coarse_.empty() || fine_.empty())
    throw PreconditionError("split needs nonempty coarse and fine sets (n=" +
                            std::to_string(n_) + ", n_c=" +
                            std::to_string(coarse_.size()) + ")");
}

CFSplit stride_split(Index n, Index stride, Index offset) {
  if (stride == 0) throw PreconditionError("stride must be positive");
  std::vector<Index> coarse;
  for (Index i = offset; i < n; i += stride) coarse.push_back(i);
  return {n, std::move(coarse)};
}

CFSplit every_other_split(Index n) { return stride_split(n, 2, 1); }

CFSplit red_black_split(Index nx, Index ny) {
  std::vector<Index> coarse;
  for (Index j = 0; j < ny; ++j)
    for (Index i = 0; i < nx; ++i)
      if ((i + j) % 2 == 0) coarse.push_back(j * nx + i);
  return {nx * ny, std::move(coarse)};
}

double BasisResiduals::worst() const {
  return std::max({p_normalization, q_normalization, q_dual_p, p_dual_q,
                   completeness});
}

BasisResiduals basis_residuals(const TransferBasis& b) {
  BasisResiduals r;
  r.p_normalization =
      (b.P_dual * b.P - DenseMatrix::identity(b.n_coarse())).norm_fro();
  r.q_normalization =
      (b.Q_dual * b.Q - DenseMatrix::identity(b.n_fine())).norm_fro();
  r.q_dual_p = (b.Q_dual * b.P).norm_fro();
  r.p_dual_q = (b.P_dual * b.Q).norm_fro();
  r.completeness = (b.P * b.P_dual + b.Q * b.Q_dual -
                    DenseMatrix::identity(b.size()))
                       .norm_fro();
  return r;
}

TransferBasis canonical_basis(const CFSplit& split) {
  const DenseMatrix I = DenseMatrix::identity(split.size());
  TransferBasis b;
  b.P = I.cols_at(split.coarse());
  b.Q = I.cols_at(split.fine());
  b.P_dual = b.P.transpose();
  b.Q_dual = b.Q.transpose();
  return b;
}

namespace {

// Orthonormal basis of range(proj) by Gram-Schmidt over the columns of
// proj, always taking the longest remaining column (lowest index on ties).
// Selected vectors are returned in pivot-index order.
DenseMatrix greedy_orthonormal_range(const DenseMatrix& proj, Index dim) {
  const Index n = proj.rows();
  std::vector<Vector> cand;
  cand.reserve(n);
  for (Index j = 0; j < n; ++j) cand.push_back(proj.column(j));
  std::vector<bool> used(n, false);
  std::vector<std::pair<Index, Vector>> picked;

  for (Index step = 0; step < dim; ++step) {
    Index best = n;
    double best_norm = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double nj = cand[j].norm();
      if (best == n || nj > best_norm * (1.0 + 1e-12)) {
        best = j;
        best_norm = nj;
      }
    }
    if (best == n || best_norm < 1e-8)
      throw PreconditionError(
          "basis completion failed: kernel of P_dual has deficient rank");
    used[best] = true;
    Vector q = (1.0 / best_norm) * cand[best];
    for (Index j = 0; j < n; ++j) {
      if (used[j]) continue;
      Scalar proj_coeff{};
      for (Index i = 0; i < n; ++i) proj_coeff += std::conj(q[i]) * cand[j][i];
      cand[j] -= proj_coeff * q;
    }
    picked.emplace_back(best, std::move(q));
  }
  std::sort(picked.begin(), picked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  DenseMatrix out(n, dim);
  for (Index c = 0; c < dim; ++c) out.set_column(c, picked[c].second);
  return out;
}

}  // namespace

TransferBasis basis_from_columns(const DenseMatrix& P, const DenseMatrix& P_dual) {
  const Index n = P.rows();
  const Index nc = P.cols();
  if (P_dual.rows() != nc || P_dual.cols() != n)
    throw DimensionError("basis_from_columns: P " + shape_of(P) +
                         " with P_dual " + shape_of(P_dual));
  if (nc == 0 || nc >= n)
    throw PreconditionError("basis_from_columns: need 0 < n_c < n");
  const double duality =
      (P_dual * P - DenseMatrix::identity(nc)).norm_fro();
  if (duality > 1e-10)
    throw PreconditionError("basis_from_columns: P_dual P deviates from I by " +
                            std::to_string(duality));

  const DenseMatrix kernel = null_space(P_dual, 1e-12);
  if (kernel.cols() != n - nc)
    throw PreconditionError("basis_from_columns: P_dual is rank deficient");
  const DenseMatrix proj = kernel * kernel.adjoint();

  TransferBasis b;
  b.P = P;
  b.P_dual = P_dual;
  b.Q = greedy_orthonormal_range(proj, n - nc);
  DenseMatrix inv;
  try {
    inv = inverse(hstack(P, b.Q));
  } catch (const SingularError&) {
    throw PreconditionError("basis_from_columns: P is rank deficient");
  }
  b.Q_dual = inv.block(nc, 0, n - nc, n);
  return b;
}

TransferBasis basis_from_pair(const DenseMatrix& P, const DenseMatrix& Q) {
  if (P.rows() != Q.rows() || P.cols() + Q.cols() != P.rows())
    throw DimensionError("basis_from_pair: P " + shape_of(P) + " and Q " +
                         shape_of(Q) + " do not form a square basis");
  DenseMatrix inv;
  try {
    inv = inverse(hstack(P, Q));
  } catch (const SingularError&) {
    throw PreconditionError("basis_from_pair: [P Q] is singular");
  }
  TransferBasis b;
  b.P = P;
  b.Q = Q;
  b.P_dual = inv.block(0, 0, P.cols(), P.rows());
  b.Q_dual = inv.block(P.cols(), 0, Q.cols(), P.rows());
  return b;
}

Restriction make_restriction(const DenseMatrix& R, const RelaxationSetup& setup) {
  if (R.cols() != setup.size())
    throw DimensionError("restriction " + shape_of(R) + " for system of size " +
                         std::to_string(setup.size()));
  if (numerical_rank(R, 1e-12) != R.rows())
    throw PreconditionError("restriction does not have full row rank");
  Restriction out{R, std::nullopt};
  if (setup.M_invertible()) out.R_hat = R * setup.M;
  return out;
}

double check_orthogonality_RAQ(const DenseMatrix& R,
                               const RelaxationSetup& setup,
                               const TransferBasis& basis) {
  return (R * setup.A_hat * basis.Q).norm_fro();
}

}  // namespace rbamg
