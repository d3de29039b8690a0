#pragma once

#include <optional>
#include <vector>

#include "rbamg/linalg/dense.hpp"
#include "rbamg/relaxation.hpp"

namespace rbamg {

/// Partition of the index set {0..n-1} into coarse and fine points.
/// Both sets are sorted, disjoint, nonempty, and cover all indices.
class CFSplit {
 public:
  /// Throws PreconditionError if `coarse` is empty, covers everything,
  /// repeats an index or runs out of range.
  CFSplit(Index n, std::vector<Index> coarse);

  Index size() const noexcept { return n_; }
  Index n_coarse() const noexcept { return coarse_.size(); }
  Index n_fine() const noexcept { return fine_.size(); }
  const std::vector<Index>& coarse() const noexcept { return coarse_; }
  const std::vector<Index>& fine() const noexcept { return fine_; }
  bool is_coarse(Index i) const { return is_coarse_.at(i); }

 private:
  Index n_;
  std::vector<Index> coarse_;
  std::vector<Index> fine_;
  std::vector<bool> is_coarse_;
};

/// Coarse points offset, offset + stride, ... . every_other(n) uses
/// stride 2 and offset 1, so n = 2m + 1 keeps the m interior even points
/// of the underlying 1D grid.
CFSplit stride_split(Index n, Index stride, Index offset);
CFSplit every_other_split(Index n);
/// Red-black colouring of an nx x ny lexicographic grid; points with
/// (i + j) even are coarse.
CFSplit red_black_split(Index nx, Index ny);

/// Prolongations P (n x n_c), Q (n x n_f) and their duals.
///
/// Invariants: P_dual P = I, Q_dual Q = I, Q_dual P = 0, P_dual Q = 0 and
/// P P_dual + Q Q_dual = I.
struct TransferBasis {
  DenseMatrix P;
  DenseMatrix Q;
  DenseMatrix P_dual;
  DenseMatrix Q_dual;

  Index size() const noexcept { return P.rows(); }
  Index n_coarse() const noexcept { return P.cols(); }
  Index n_fine() const noexcept { return Q.cols(); }
};

/// Worst violation of the five basis relations (Frobenius norms).
struct BasisResiduals {
  double p_normalization = 0;
  double q_normalization = 0;
  double q_dual_p = 0;
  double p_dual_q = 0;
  double completeness = 0;

  double worst() const;
};

BasisResiduals basis_residuals(const TransferBasis& basis);

/// Identity columns at the coarse (P) and fine (Q) indices; duals are the
/// transposes. All relations hold exactly.
TransferBasis canonical_basis(const CFSplit& split);

/// Completes (P, P_dual) to a full basis. Q is the orthonormal basis of
/// ker(P_dual) obtained by greedy Gram-Schmidt on the projected unit
/// vectors (so canonical input reproduces canonical Q); Q_dual is then the
/// unique matrix with Q_dual P = 0, Q_dual Q = I.
TransferBasis basis_from_columns(const DenseMatrix& P, const DenseMatrix& P_dual);

/// Both prolongations given; duals are the row blocks of [P Q]^{-1}.
TransferBasis basis_from_pair(const DenseMatrix& P, const DenseMatrix& Q);

/// Restriction R (n_c x n) with optional R_hat = R M, the restriction that
/// acts on the unpreconditioned residual: R_hat A = R A_hat.
struct Restriction {
  DenseMatrix R;
  std::optional<DenseMatrix> R_hat;
};

/// Checks full row rank (relative 1e-12) and attaches R_hat when M is
/// invertible.
Restriction make_restriction(const DenseMatrix& R, const RelaxationSetup& setup);

/// ||R A_hat Q||_F. Zero certifies A_hat-orthogonality of rows of R and
/// columns of Q.
double check_orthogonality_RAQ(const DenseMatrix& R,
                               const RelaxationSetup& setup,
                               const TransferBasis& basis);

}  // namespace rbamg
