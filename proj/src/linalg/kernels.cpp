#include "rbamg/linalg/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdint>

namespace rbamg::kernels {

namespace {

// Signed loop counter for OpenMP worksharing.
using Row = std::int64_t;

inline void gemm_row(const Scalar* a_row, const Scalar* b, Scalar* c_row,
                     Index k, Index n) {
  std::fill(c_row, c_row + n, Scalar{});
  for (Index p = 0; p < k; ++p) {
    const Scalar aip = a_row[p];
    if (aip == Scalar{}) continue;
    const Scalar* b_row = b + p * n;
    for (Index j = 0; j < n; ++j) c_row[j] += aip * b_row[j];
  }
}

inline Scalar dot_row(const Scalar* a_row, const Scalar* x, Index n) {
  Scalar sum{};
  for (Index j = 0; j < n; ++j) sum += a_row[j] * x[j];
  return sum;
}

inline Scalar csr_row(const Index* offsets, const Index* cols,
                      const Scalar* vals, const Scalar* x, Index i) {
  Scalar sum{};
  for (Index p = offsets[i]; p < offsets[i + 1]; ++p) sum += vals[p] * x[cols[p]];
  return sum;
}

}  // namespace

void gemm(std::span<const Scalar> a, std::span<const Scalar> b,
          std::span<Scalar> c, Index m, Index k, Index n) {
  const bool parallel = m * k * n >= kParallelWorkThreshold;
  const Row rows = static_cast<Row>(m);
#pragma omp parallel for schedule(static) if (parallel)
  for (Row i = 0; i < rows; ++i)
    gemm_row(a.data() + i * k, b.data(), c.data() + i * n, k, n);
}

void gemm_serial(std::span<const Scalar> a, std::span<const Scalar> b,
                 std::span<Scalar> c, Index m, Index k, Index n) {
  for (Index i = 0; i < m; ++i)
    gemm_row(a.data() + i * k, b.data(), c.data() + i * n, k, n);
}

void gemv(std::span<const Scalar> a, std::span<const Scalar> x,
          std::span<Scalar> y, Index m, Index n) {
  const bool parallel = m * n >= kParallelWorkThreshold;
  const Row rows = static_cast<Row>(m);
#pragma omp parallel for schedule(static) if (parallel)
  for (Row i = 0; i < rows; ++i) y[i] = dot_row(a.data() + i * n, x.data(), n);
}

void gemv_serial(std::span<const Scalar> a, std::span<const Scalar> x,
                 std::span<Scalar> y, Index m, Index n) {
  for (Index i = 0; i < m; ++i) y[i] = dot_row(a.data() + i * n, x.data(), n);
}

void csr_spmv(std::span<const Index> row_offsets,
              std::span<const Index> col_indices,
              std::span<const Scalar> values, std::span<const Scalar> x,
              std::span<Scalar> y) {
  const Index m = row_offsets.size() - 1;
  const bool parallel = values.size() >= kParallelWorkThreshold;
  const Row rows = static_cast<Row>(m);
#pragma omp parallel for schedule(static) if (parallel)
  for (Row i = 0; i < rows; ++i)
    y[i] = csr_row(row_offsets.data(), col_indices.data(), values.data(),
                   x.data(), static_cast<Index>(i));
}

void csr_spmv_serial(std::span<const Index> row_offsets,
                     std::span<const Index> col_indices,
                     std::span<const Scalar> values,
                     std::span<const Scalar> x, std::span<Scalar> y) {
  const Index m = row_offsets.size() - 1;
  for (Index i = 0; i < m; ++i)
    y[i] = csr_row(row_offsets.data(), col_indices.data(), values.data(),
                   x.data(), i);
}

void csr_jacobi_sweep(std::span<const Index> row_offsets,
                      std::span<const Index> col_indices,
                      std::span<const Scalar> values,
                      std::span<const Scalar> inv_diagonal, double omega,
                      std::span<const Scalar> b, std::span<const Scalar> x,
                      std::span<Scalar> x_out) {
  const Index m = row_offsets.size() - 1;
  const bool parallel = values.size() >= kParallelWorkThreshold;
  const Row rows = static_cast<Row>(m);
#pragma omp parallel for schedule(static) if (parallel)
  for (Row i = 0; i < rows; ++i) {
    const Scalar ax = csr_row(row_offsets.data(), col_indices.data(),
                              values.data(), x.data(), static_cast<Index>(i));
    x_out[i] = x[i] + omega * inv_diagonal[i] * (b[i] - ax);
  }
}

void csr_jacobi_sweep_serial(std::span<const Index> row_offsets,
                             std::span<const Index> col_indices,
                             std::span<const Scalar> values,
                             std::span<const Scalar> inv_diagonal,
                             double omega, std::span<const Scalar> b,
                             std::span<const Scalar> x,
                             std::span<Scalar> x_out) {
  const Index m = row_offsets.size() - 1;
  for (Index i = 0; i < m; ++i) {
    const Scalar ax = csr_row(row_offsets.data(), col_indices.data(),
                              values.data(), x.data(), i);
    x_out[i] = x[i] + omega * inv_diagonal[i] * (b[i] - ax);
  }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace rbamg::kernels
