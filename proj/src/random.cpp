#include "rbamg/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rbamg/linalg/decomp.hpp"

namespace rbamg {

namespace {

Scalar draw(Rng& rng, bool complex) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  return {re, complex ? u(rng) : 0.0};
}

}  // namespace

Vector random_vector(Rng& rng, Index n, bool complex) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = draw(rng, complex);
  return v;
}

DenseMatrix random_matrix(Rng& rng, Index rows, Index cols, bool complex) {
  DenseMatrix m(rows, cols);
  for (auto& x : m.data()) x = draw(rng, complex);
  return m;
}

DenseMatrix random_well_conditioned(Rng& rng, Index n, bool complex) {
  const double scale = 0.5 / std::sqrt(static_cast<double>(n));
  for (int attempt = 0; attempt < 100; ++attempt) {
    DenseMatrix g = DenseMatrix::identity(n) + scale * random_matrix(rng, n, n, complex);
    if (condition_number(g) <= 1e6) return g;
  }
  throw ConvergenceError("random_well_conditioned: no acceptable draw in 100 attempts");
}

TransferBasis random_basis(Rng& rng, Index n, Index n_c, bool complex) {
  if (n_c == 0 || n_c >= n)
    throw PreconditionError("random_basis: need 0 < n_c < n");
  const DenseMatrix g = random_well_conditioned(rng, n, complex);
  return basis_from_pair(g.block(0, 0, n, n_c), g.block(0, n_c, n, n - n_c));
}

CFSplit random_split(Rng& rng, Index n, Index n_c) {
  std::vector<Index> idx(n);
  std::iota(idx.begin(), idx.end(), Index{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(n_c);
  return {n, std::move(idx)};
}

}  // namespace rbamg
