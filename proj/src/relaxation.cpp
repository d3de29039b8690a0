#include "rbamg/relaxation.hpp"

#include "rbamg/linalg/decomp.hpp"

namespace rbamg {

std::string to_string(SmootherKind kind) {
  switch (kind) {
    case SmootherKind::richardson: return "richardson";
    case SmootherKind::jacobi: return "jacobi";
    case SmootherKind::gauss_seidel_forward: return "gauss_seidel_forward";
    case SmootherKind::custom: return "custom";
  }
  return "unknown";
}

SmootherKind smoother_from_string(const std::string& name) {
  if (name == "richardson") return SmootherKind::richardson;
  if (name == "jacobi") return SmootherKind::jacobi;
  if (name == "gauss_seidel_forward" || name == "gauss_seidel")
    return SmootherKind::gauss_seidel_forward;
  throw Error("unknown smoother '" + name + "'");
}

namespace {

RelaxationSetup finish_setup(DenseMatrix A, DenseMatrix M, SmootherKind kind,
                             double omega) {
  RelaxationSetup s;
  s.A_hat = M * A;
  s.T = DenseMatrix::identity(A.rows()) - s.A_hat;
  s.A = std::move(A);
  s.M = std::move(M);
  s.kind = kind;
  s.omega = omega;
  try {
    s.M_inverse = inverse(s.M);
  } catch (const SingularError&) {
    s.M_inverse.reset();
  }
  return s;
}

void require_square(const DenseMatrix& A) {
  if (!A.is_square())
    throw DimensionError("system matrix must be square, got " + shape_of(A));
}

}  // namespace

RelaxationSetup build_setup(const DenseMatrix& A, const SmootherSpec& spec) {
  require_square(A);
  const Index n = A.rows();
  DenseMatrix M(n, n);
  switch (spec.kind) {
    case SmootherKind::richardson:
      M = spec.omega * DenseMatrix::identity(n);
      break;
    case SmootherKind::jacobi:
      for (Index i = 0; i < n; ++i) {
        if (A(i, i) == Scalar{})
          throw SingularError("jacobi: zero diagonal entry at index " +
                                  std::to_string(i),
                              i);
        M(i, i) = spec.omega / A(i, i);
      }
      break;
    case SmootherKind::gauss_seidel_forward: {
      DenseMatrix lower(n, n);
      for (Index i = 0; i < n; ++i) {
        if (A(i, i) == Scalar{})
          throw SingularError("gauss_seidel_forward: zero diagonal entry at "
                              "index " + std::to_string(i),
                              i);
        for (Index j = 0; j <= i; ++j) lower(i, j) = A(i, j);
      }
      M = inverse(lower);
      return finish_setup(A, std::move(M), spec.kind, 1.0);
    }
    case SmootherKind::custom:
      throw Error("custom smoother needs an explicit M");
  }
  return finish_setup(A, std::move(M), spec.kind, spec.omega);
}

RelaxationSetup build_setup(const DenseMatrix& A, const DenseMatrix& M) {
  require_square(A);
  if (M.rows() != A.rows() || M.cols() != A.cols())
    throw DimensionError("preconditioner " + shape_of(M) +
                         " does not match system " + shape_of(A));
  return finish_setup(A, M, SmootherKind::custom, 1.0);
}

Vector apply_preconditioner(const RelaxationSetup& setup, const Vector& r) {
  if (setup.kind != SmootherKind::gauss_seidel_forward) return setup.M * r;

  const Index n = setup.size();
  if (r.size() != n)
    throw DimensionError("apply_preconditioner: residual of length " +
                         std::to_string(r.size()));
  Vector z(n);
  for (Index i = 0; i < n; ++i) {
    Scalar sum = r[i];
    for (Index j = 0; j < i; ++j) sum -= setup.A(i, j) * z[j];
    z[i] = sum / setup.A(i, i);
  }
  return z;
}

RelaxationHistory relax(const RelaxationSetup& setup, const Vector& b,
                        const Vector& x0, Index k) {
  const Index n = setup.size();
  if (b.size() != n || x0.size() != n)
    throw DimensionError("relax: system of size " + std::to_string(n) +
                         " with b of length " + std::to_string(b.size()) +
                         " and x0 of length " + std::to_string(x0.size()));
  if (k < 1) throw PreconditionError("relax: need at least one step");

  RelaxationHistory h;
  h.b = b;
  h.iterates.reserve(k + 1);
  h.iterates.push_back(x0);
  for (Index l = 0; l < k; ++l) {
    const Vector& x = h.iterates.back();
    h.iterates.push_back(x + apply_preconditioner(setup, b - setup.A * x));
  }
  return h;
}

Vector error_shift(const RelaxationHistory& history, Index l, Index k) {
  if (l > k || k > history.steps())
    throw DimensionError("error_shift: need l <= k <= " +
                         std::to_string(history.steps()) + ", got l=" +
                         std::to_string(l) + ", k=" + std::to_string(k));
  return history[k] - history[l];
}

Vector error_shift(const RelaxationHistory& history, const DenseMatrix& dual,
                   Index l, Index k) {
  return dual * error_shift(history, l, k);
}

Vector residual_shift(const RelaxationHistory& history, Index k) {
  if (k + 1 > history.steps())
    throw DimensionError("residual_shift: iterate " + std::to_string(k + 1) +
                         " not in a history of " +
                         std::to_string(history.steps()) + " steps");
  return history[k + 1] - history[k];
}

}  // namespace rbamg
