#pragma once

#include <string>

#include "rbamg/linalg/sparse.hpp"

namespace rbamg {

enum class ProblemKind { poisson1d, poisson2d, advdiff1d, custom_file };

std::string to_string(ProblemKind kind);
ProblemKind problem_from_string(const std::string& name);

/// Model problems on the unit interval / square with Dirichlet boundary
/// rows eliminated. Only the fields used by `kind` are read.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::poisson1d;
  Index n = 32;      // poisson1d, advdiff1d
  Index nx = 8;      // poisson2d
  Index ny = 8;      // poisson2d
  double peclet = 0; // advdiff1d
  std::string path;  // custom_file

  static ProblemSpec poisson1d(Index n);
  static ProblemSpec poisson2d(Index nx, Index ny);
  static ProblemSpec advdiff1d(Index n, double peclet);
  static ProblemSpec from_file(std::string path);
};

/// Unscaled stencils:
///   poisson1d  tridiag(-1, 2, -1)
///   poisson2d  5-point, diagonal 4, lexicographic x-fastest ordering
///   advdiff1d  tridiag(-1-p, 2, -1+p), p = peclet h / 2, h = 1/(n+1);
///              first-order upwind when |p| > 1
/// Throws PreconditionError for n < 2 (nx, ny < 1 with nx*ny < 2).
SparseMatrix generate(const ProblemSpec& spec);

}  // namespace rbamg
