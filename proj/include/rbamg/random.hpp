#pragma once

#include <cstdint>
#include <random>

#include "rbamg/linalg/dense.hpp"
#include "rbamg/splitting.hpp"

namespace rbamg {

using Rng = std::mt19937_64;

/// Entries uniform in [-1, 1]; with `complex` the imaginary parts are drawn
/// the same way, otherwise they are zero.
Vector random_vector(Rng& rng, Index n, bool complex = false);
DenseMatrix random_matrix(Rng& rng, Index rows, Index cols, bool complex = false);

/// I + (0.5 / sqrt(n)) U with U uniform in [-1, 1]; redrawn until the
/// 2-norm condition number is at most 1e6.
DenseMatrix random_well_conditioned(Rng& rng, Index n, bool complex = false);

/// Split the columns of a random well-conditioned matrix into P (first
/// n_c) and Q; duals from the inverse.
TransferBasis random_basis(Rng& rng, Index n, Index n_c, bool complex = false);

/// Random coarse set of size n_c.
CFSplit random_split(Rng& rng, Index n, Index n_c);

}  // namespace rbamg
