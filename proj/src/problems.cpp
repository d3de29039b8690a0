#include "rbamg/problems.hpp"

#include <cmath>

#include "rbamg/matrix_market.hpp"

namespace rbamg {

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::poisson1d: return "poisson1d";
    case ProblemKind::poisson2d: return "poisson2d";
    case ProblemKind::advdiff1d: return "advdiff1d";
    case ProblemKind::custom_file: return "file";
  }
  return "unknown";
}

ProblemKind problem_from_string(const std::string& name) {
  if (name == "poisson1d") return ProblemKind::poisson1d;
  if (name == "poisson2d") return ProblemKind::poisson2d;
  if (name == "advdiff1d") return ProblemKind::advdiff1d;
  if (name == "file" || name == "custom_file") return ProblemKind::custom_file;
  throw Error("unknown problem kind '" + name + "'");
}

ProblemSpec ProblemSpec::poisson1d(Index n) {
  ProblemSpec s;
  s.kind = ProblemKind::poisson1d;
  s.n = n;
  return s;
}

ProblemSpec ProblemSpec::poisson2d(Index nx, Index ny) {
  ProblemSpec s;
  s.kind = ProblemKind::poisson2d;
  s.nx = nx;
  s.ny = ny;
  return s;
}

ProblemSpec ProblemSpec::advdiff1d(Index n, double peclet) {
  ProblemSpec s;
  s.kind = ProblemKind::advdiff1d;
  s.n = n;
  s.peclet = peclet;
  return s;
}

ProblemSpec ProblemSpec::from_file(std::string path) {
  ProblemSpec s;
  s.kind = ProblemKind::custom_file;
  s.path = std::move(path);
  return s;
}

namespace {

SparseMatrix tridiagonal(Index n, double sub, double diag, double super) {
  std::vector<SparseMatrix::Triplet> t;
  t.reserve(3 * n);
  for (Index i = 0; i < n; ++i) {
    if (i > 0) t.push_back({i, i - 1, sub});
    t.push_back({i, i, diag});
    if (i + 1 < n) t.push_back({i, i + 1, super});
  }
  return SparseMatrix::from_triplets(n, n, std::move(t));
}

void require_size(Index n, const char* what) {
  if (n < 2)
    throw PreconditionError(std::string(what) + ": need at least 2 unknowns, got " +
                            std::to_string(n));
}

}  // namespace

SparseMatrix generate(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::poisson1d:
      require_size(spec.n, "poisson1d");
      return tridiagonal(spec.n, -1, 2, -1);
    case ProblemKind::poisson2d: {
      if (spec.nx < 1 || spec.ny < 1)
        throw PreconditionError("poisson2d: grid dimensions must be positive");
      const Index n = spec.nx * spec.ny;
      require_size(n, "poisson2d");
      std::vector<SparseMatrix::Triplet> t;
      for (Index j = 0; j < spec.ny; ++j)
        for (Index i = 0; i < spec.nx; ++i) {
          const Index row = j * spec.nx + i;
          t.push_back({row, row, 4.0});
          if (i > 0) t.push_back({row, row - 1, -1.0});
          if (i + 1 < spec.nx) t.push_back({row, row + 1, -1.0});
          if (j > 0) t.push_back({row, row - spec.nx, -1.0});
          if (j + 1 < spec.ny) t.push_back({row, row + spec.nx, -1.0});
        }
      return SparseMatrix::from_triplets(n, n, std::move(t));
    }
    case ProblemKind::advdiff1d: {
      require_size(spec.n, "advdiff1d");
      if (!std::isfinite(spec.peclet))
        throw PreconditionError("advdiff1d: peclet must be finite");
      const double h = 1.0 / static_cast<double>(spec.n + 1);
      const double p = spec.peclet * h / 2.0;
      if (std::abs(p) <= 1.0) return tridiagonal(spec.n, -1 - p, 2, -1 + p);
      const double a = 2.0 * std::abs(p);
      return p > 0 ? tridiagonal(spec.n, -1 - a, 2 + a, -1)
                   : tridiagonal(spec.n, -1, 2 + a, -1 - a);
    }
    case ProblemKind::custom_file: {
      SparseMatrix a = read_matrix_market(spec.path);
      if (a.rows() != a.cols())
        throw PreconditionError(spec.path + ": matrix is not square");
      require_size(a.rows(), spec.path.c_str());
      return a;
    }
  }
  throw Error("unknown problem kind");
}

}  // namespace rbamg
