#pragma once

#include <vector>

#include "rbamg/linalg/dense.hpp"
#include "rbamg/relaxation.hpp"
#include "rbamg/splitting.hpp"

namespace rbamg {

/// Memory-bearing operators of a depth-k coarse-graining of relaxation.
///
/// With T_qq = Q_dual T Q (the compatible-relaxation propagator):
///
///   W^(l+1)  = T_qq^l Q_dual T P        interpolation weights, l = 0..k-1
///   P^(0)    = P,  P^(l) = Q W^(l)      generalized prolongations, l = 0..k
///   T^(l)    = P_dual T P^(l)           coarse propagators, l = 0..k
///   A_s^(l)  = R A_hat P^(l)            coarse operators, l = 0..k
///
/// Since Q_dual P = 0, Q_dual T P = -Q_dual A_hat P; every memory term
/// vanishes exactly when Q_dual A_hat P = 0.
class MemoryOperators {
 public:
  MemoryOperators(const RelaxationSetup& setup, const TransferBasis& basis,
                  const DenseMatrix& R, Index k);

  Index depth() const noexcept { return k_; }

  /// W^(l), 1 <= l <= k.
  const DenseMatrix& W(Index l) const;
  /// P^(l), 0 <= l <= k.
  const DenseMatrix& P(Index l) const;
  /// T^(l), 0 <= l <= k.
  const DenseMatrix& T(Index l) const;
  /// A_sigma^(l), 0 <= l <= k.
  const DenseMatrix& A_sigma(Index l) const;

  const DenseMatrix& Tqq() const noexcept { return tqq_; }
  const DenseMatrix& Tqp() const noexcept { return tqp_; }
  /// T_qq^k.
  const DenseMatrix& Tqq_power() const noexcept { return tqq_k_; }
  const DenseMatrix& RAQ() const noexcept { return raq_; }

 private:
  Index k_;
  DenseMatrix tqq_, tqp_, tqq_k_, raq_;
  std::vector<DenseMatrix> weights_;       // W^(1..k)
  std::vector<DenseMatrix> prolongations_; // P^(0..k)
  std::vector<DenseMatrix> propagators_;   // T^(0..k)
  std::vector<DenseMatrix> coarse_ops_;    // A_sigma^(0..k)
};

/// Throws PreconditionError for k == 0.
MemoryOperators build_memory(const RelaxationSetup& setup,
                             const TransferBasis& basis, const DenseMatrix& R,
                             Index k);

/// Exact fine components e_phi^(k) from the coarse history
/// e_sigma^(0..k-1) (time order) and the initial fine error e_phi^(0), by
/// re-propagating with compatible relaxation.
Vector reconstruct_fine_error(const MemoryOperators& mem,
                              const std::vector<Vector>& e_sigma_series,
                              const Vector& e_phi_0);

/// Interpolation law sum_l W^(l+1) eps_sigma^(k-l-1); the series is
/// eps_sigma^(0..k-1) in time order.
Vector interpolate_memory(const MemoryOperators& mem,
                          const std::vector<Vector>& eps_sigma_series);

/// Effective prolongation P' = sum_{l=0}^{k} P^(l).
DenseMatrix effective_prolongation(const MemoryOperators& mem);

/// Generalized coarse operator sum_{l=0}^{k} A_sigma^(l).
DenseMatrix generalized_coarse_operator(const MemoryOperators& mem);

/// Memory recursion sum_{l=0}^{k} T^(l) e_sigma^(k-l) from a coarse history
/// e_sigma^(0..k) (time order). Equals P_dual e^(k+1) minus the fine
/// contribution P_dual T Q T_qq^k e_phi^(0).
Vector coarse_memory_step(const MemoryOperators& mem,
                          const std::vector<Vector>& e_sigma_series);

struct NoiseTerm {
  Vector eta;
  Index k = 0;
};

/// eta^(k) = -R A_hat Q T_qq^k e_phi^(0).
NoiseTerm noise(const RelaxationSetup& setup, const TransferBasis& basis,
                const DenseMatrix& R, const Vector& e_phi_0, Index k);

/// sum_l A_sigma^(l) e_sigma^(k-l) - r_hat_sigma - eta for a coarse history
/// e_sigma^(0..k) (time order). Zero up to rounding on consistent input.
Vector coarse_balance_residual(const MemoryOperators& mem,
                               const std::vector<Vector>& e_sigma_series,
                               const Vector& r_hat_sigma, const Vector& eta);

struct CRDiagnostics {
  double rho = 0;    // spectral radius of Q_dual T Q
  double decay = 0;  // ||(Q_dual T Q)^k||_2
};

CRDiagnostics cr_diagnostics(const RelaxationSetup& setup,
                             const TransferBasis& basis, Index k);

}  // namespace rbamg
