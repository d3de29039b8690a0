#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbamg/linalg/dense.hpp"

namespace rbamg {

enum class SmootherKind { richardson, jacobi, gauss_seidel_forward, custom };

std::string to_string(SmootherKind kind);
SmootherKind smoother_from_string(const std::string& name);

struct SmootherSpec {
  SmootherKind kind = SmootherKind::jacobi;
  double omega = 2.0 / 3.0;  // ignored by gauss_seidel_forward
};

/// Stationary relaxation x <- x + M (b - A x) for a fixed system matrix A.
///
/// Holds the preconditioner M densely together with the relaxation operator
/// A_hat = M A and the error propagator T = I - A_hat. T is built from A_hat,
/// so T + A_hat = I up to one rounding per entry.
struct RelaxationSetup {
  DenseMatrix A;
  DenseMatrix M;
  DenseMatrix A_hat;
  DenseMatrix T;
  SmootherKind kind = SmootherKind::custom;
  double omega = 1.0;
  /// M^{-1} when M is invertible to tolerance.
  std::optional<DenseMatrix> M_inverse;

  Index size() const noexcept { return A.rows(); }
  bool M_invertible() const noexcept { return M_inverse.has_value(); }
};

/// Builds M from the smoother description. Jacobi needs a nonzero
/// diagonal (error names the index); forward Gauss-Seidel needs an
/// invertible lower triangle.
RelaxationSetup build_setup(const DenseMatrix& A, const SmootherSpec& spec);

/// Setup from an explicit preconditioner M.
RelaxationSetup build_setup(const DenseMatrix& A, const DenseMatrix& M);

/// M r. Forward Gauss-Seidel is applied implicitly by forward substitution
/// with the lower triangle of A; every other kind multiplies by M.
Vector apply_preconditioner(const RelaxationSetup& setup, const Vector& r);

/// Iterates x^(0), ..., x^(k) of a relaxation run.
struct RelaxationHistory {
  Vector b;
  std::vector<Vector> iterates;

  Index steps() const noexcept { return iterates.empty() ? 0 : iterates.size() - 1; }
  const Vector& operator[](Index l) const { return iterates.at(l); }
};

/// Runs k >= 1 relaxation steps from x0.
RelaxationHistory relax(const RelaxationSetup& setup, const Vector& b,
                        const Vector& x0, Index k);

/// x^(k) - x^(l): adding it to e^(k) gives e^(l).
Vector error_shift(const RelaxationHistory& history, Index l, Index k);

/// dual * (x^(k) - x^(l)); `dual` selects components (e.g. P_dual or
/// Q_dual), so the result shifts e_sigma^(k) or e_phi^(k) back to step l.
Vector error_shift(const RelaxationHistory& history, const DenseMatrix& dual,
                   Index l, Index k);

/// Preconditioned residual r_hat^(k) = x^(k+1) - x^(k); needs k+1 <= steps.
Vector residual_shift(const RelaxationHistory& history, Index k);

}  // namespace rbamg
