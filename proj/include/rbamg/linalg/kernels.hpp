#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version, used by the
// library, and a plain serial reference kept for tests and benchmarks. Both
// accumulate every output entry in the same order, so their results agree
// bit for bit.

#include <span>

#include "rbamg/linalg/types.hpp"

namespace rbamg::kernels {

/// Below this many multiply-adds the OpenMP kernels run on one thread.
inline constexpr Index kParallelWorkThreshold = 1 << 15;

/// c (m x n) = a (m x k) * b (k x n), all row-major.
void gemm(std::span<const Scalar> a, std::span<const Scalar> b,
          std::span<Scalar> c, Index m, Index k, Index n);
void gemm_serial(std::span<const Scalar> a, std::span<const Scalar> b,
                 std::span<Scalar> c, Index m, Index k, Index n);

/// y (m) = a (m x n) * x (n).
void gemv(std::span<const Scalar> a, std::span<const Scalar> x,
          std::span<Scalar> y, Index m, Index n);
void gemv_serial(std::span<const Scalar> a, std::span<const Scalar> x,
                 std::span<Scalar> y, Index m, Index n);

/// y = A x with A in compressed row storage.
void csr_spmv(std::span<const Index> row_offsets,
              std::span<const Index> col_indices,
              std::span<const Scalar> values, std::span<const Scalar> x,
              std::span<Scalar> y);
void csr_spmv_serial(std::span<const Index> row_offsets,
                     std::span<const Index> col_indices,
                     std::span<const Scalar> values,
                     std::span<const Scalar> x, std::span<Scalar> y);

/// One weighted Jacobi sweep x_out = x + omega * D^{-1} (b - A x).
void csr_jacobi_sweep(std::span<const Index> row_offsets,
                      std::span<const Index> col_indices,
                      std::span<const Scalar> values,
                      std::span<const Scalar> inv_diagonal, double omega,
                      std::span<const Scalar> b, std::span<const Scalar> x,
                      std::span<Scalar> x_out);
void csr_jacobi_sweep_serial(std::span<const Index> row_offsets,
                             std::span<const Index> col_indices,
                             std::span<const Scalar> values,
                             std::span<const Scalar> inv_diagonal,
                             double omega, std::span<const Scalar> b,
                             std::span<const Scalar> x,
                             std::span<Scalar> x_out);

/// Number of threads the OpenMP kernels may use.
int max_threads();

}  // namespace rbamg::kernels
