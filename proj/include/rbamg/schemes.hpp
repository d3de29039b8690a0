#pragma once

#include <optional>
#include <string>

#include "rbamg/linalg/dense.hpp"
#include "rbamg/relaxation.hpp"
#include "rbamg/splitting.hpp"

namespace rbamg {

/// Idealized two-level schemes, ordered by how much of the relaxation
/// history they retain.
enum class Scheme { markovian, semi_markovian, non_markovian, exact };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

/// ||R A_hat Q|| above which the semi-Markovian premise counts as violated.
inline constexpr double kSemiMarkovianPremiseTol = 1e-10;

struct CycleOptions {
  bool assemble_propagator = false;
  /// When given, the noise term of the first coarse equation is evaluated
  /// and reported.
  std::optional<Vector> exact_solution;
};

/// One cycle: k relaxation steps, one coarse correction, no post-smoothing.
struct CycleResult {
  Vector x_new;
  /// Coarse error estimate eps_sigma^(k).
  Vector coarse_solution;
  /// Two-grid error propagator E_TG, if requested.
  std::optional<DenseMatrix> propagator;
  /// ||s_sigma^(k)|| (non-Markovian and exact schemes; 0 otherwise).
  double memory_correction_norm = 0;
  std::optional<double> noise_norm;
  /// ||R A_hat Q||_F seen by the cycle.
  double raq_norm = 0;
  /// Exact scheme: max of ||A~_s - R A_hat P~|| and ||A~_s - R~ A_hat P||,
  /// relative to ||A~_s||.
  double effective_operator_mismatch = 0;
};

CycleResult markovian_cycle(const RelaxationSetup& setup,
                            const TransferBasis& basis, const DenseMatrix& R,
                            const Vector& b, const Vector& x0, Index k,
                            const CycleOptions& options = {});

/// Requires ||R A_hat Q|| <= kSemiMarkovianPremiseTol.
CycleResult semi_markovian_cycle(const RelaxationSetup& setup,
                                 const TransferBasis& basis,
                                 const DenseMatrix& R, const Vector& b,
                                 const Vector& x0, Index k,
                                 const CycleOptions& options = {});

CycleResult non_markovian_cycle(const RelaxationSetup& setup,
                                const TransferBasis& basis,
                                const DenseMatrix& R, const Vector& b,
                                const Vector& x0, Index k,
                                const CycleOptions& options = {});

/// Direct method: exact for any basis and restriction once k >= 1. Dense
/// global inverses throughout; a reference, not an algorithm.
CycleResult exact_cycle(const RelaxationSetup& setup,
                        const TransferBasis& basis, const DenseMatrix& R,
                        const Vector& b, const Vector& x0, Index k,
                        const CycleOptions& options = {});

CycleResult run_cycle(Scheme scheme, const RelaxationSetup& setup,
                      const TransferBasis& basis, const DenseMatrix& R,
                      const Vector& b, const Vector& x0, Index k,
                      const CycleOptions& options = {});

/// E_TG from its closed form:
///   markovian       (I - P (R A_hat P)^{-1} R A_hat) T^k
///   semi_markovian  Q T_qq^k Q_dual
///   non_markovian   (I - P' (R A_hat P')^{-1} R A_hat) Q T_qq^k Q_dual
///   exact           0
DenseMatrix assemble_propagator(Scheme scheme, const RelaxationSetup& setup,
                                const TransferBasis& basis,
                                const DenseMatrix& R, Index k);

/// Effective operators of the exact scheme:
///   P~ = (I - Q (Q_dual A_hat Q)^{-1} Q_dual A_hat) P
///   R~ = R (I - A_hat Q (Q_dual A_hat Q)^{-1} Q_dual)
struct ExactEffectiveOperators {
  DenseMatrix P_tilde;
  DenseMatrix R_tilde;
  DenseMatrix A_sigma;  // R A_hat P~
};

ExactEffectiveOperators exact_effective_operators(const RelaxationSetup& setup,
                                                  const TransferBasis& basis,
                                                  const DenseMatrix& R);

}  // namespace rbamg
