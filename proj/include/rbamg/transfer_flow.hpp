#pragma once

#include <vector>

#include "rbamg/linalg/dense.hpp"
#include "rbamg/relaxation.hpp"
#include "rbamg/splitting.hpp"

namespace rbamg {

/// P_1 = [I; W] with W = sum_{l=0}^{k-1} T_ff^l T_fc, stored in the original
/// node ordering (rows of P at coarse points form the identity).
struct IdealProlongation {
  DenseMatrix W;  // n_f x n_c
  DenseMatrix P;  // n x n_c
};

IdealProlongation ideal_prolongation(const RelaxationSetup& setup,
                                     const CFSplit& split, Index k);

/// -A_hat_ff^{-1} A_hat_fc. Throws PreconditionError if A_hat_ff is singular.
DenseMatrix ideal_weights(const RelaxationSetup& setup, const CFSplit& split);

/// R = [I, -A_hat_cf A_hat_ff^{-1}] in the original ordering (n_c x n).
DenseMatrix ideal_restriction(const RelaxationSetup& setup, const CFSplit& split);

/// Basis with P = [I; W], P_dual = [I, 0], Q = [0; I], Q_dual = [-W, I].
TransferBasis basis_from_weights(const CFSplit& split, const DenseMatrix& W);

/// basis_from_weights with the ideal weights. Q_dual is the complementary
/// dual [-W_ideal, I], so ideal_restriction annihilates A_hat Q.
TransferBasis ideal_basis(const RelaxationSetup& setup, const CFSplit& split);

/// Which left operator the infinite-k step projects with.
enum class FlowDual {
  oblique,   // Q_dual from the completed basis
  hermitian  // Q^H with orthonormal Q; an A_hat-orthogonal projection for
             // Hermitian positive definite A_hat
};

struct FlowState {
  Index tau = 0;
  DenseMatrix P;
  DenseMatrix P_dual;  // fixed at the initial dual
  DenseMatrix Q;       // orthonormal basis of ker(P_dual), also fixed
  DenseMatrix Q_dual;
  /// energies[t][i] = ||p^i_t||_A_hat = sqrt(Re p^H A_hat p).
  std::vector<std::vector<double>> energies;
  /// residuals[t] = ||Q_dual_t T P_t||_F.
  std::vector<double> residuals;

  TransferBasis basis() const { return {P, Q, P_dual, Q_dual}; }
};

FlowState flow_init(const DenseMatrix& P0, const DenseMatrix& P0_dual,
                    const RelaxationSetup& setup);

/// P <- P + Q sum_{l=0}^{k-1} (Q_dual T Q)^l Q_dual T P.
FlowState flow_step(const FlowState& state, const RelaxationSetup& setup,
                    Index k);

/// P <- P - Q (D A_hat Q)^{-1} D A_hat P with D = Q_dual or Q^H.
FlowState infinite_k_flow_step(const FlowState& state,
                               const RelaxationSetup& setup,
                               FlowDual dual = FlowDual::oblique);

/// Thrown when the residual grows beyond ten times its starting value.
class FlowDivergenceError : public ConvergenceError {
 public:
  FlowDivergenceError(const std::string& what, std::vector<double> residuals)
      : ConvergenceError(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

inline constexpr double kFlowTolerance = 1e-10;
inline constexpr Index kFlowMaxSteps = 500;

/// Steps until ||Q_dual T P|| <= tol or max_tau steps were taken.
FlowState flow_run(const DenseMatrix& P0, const DenseMatrix& P0_dual,
                   const RelaxationSetup& setup, Index k,
                   Index max_tau = kFlowMaxSteps, double tol = kFlowTolerance);

/// Transfers from the eigendecomposition of T, split after the n_c
/// largest-magnitude eigenvalues.
struct SpectralTransfer {
  std::vector<Scalar> Lambda_c, Lambda_f;
  DenseMatrix V_R_c, V_R_f;  // columns
  DenseMatrix V_L_c, V_L_f;  // rows
  DenseMatrix P_inf, P_inf_dual, Q_inf, Q_inf_dual, R_inf;

  TransferBasis basis() const { return {P_inf, Q_inf, P_inf_dual, Q_inf_dual}; }
};

/// Throws PreconditionError if |lambda_{n_c}| and |lambda_{n_c+1}| differ by
/// no more than 1e-10.
SpectralTransfer optimal_transfers(const RelaxationSetup& setup, Index n_c);

}  // namespace rbamg
