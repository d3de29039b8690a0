#include "rbamg/memory.hpp"

#include "rbamg/linalg/decomp.hpp"

namespace rbamg {

namespace {

void require_series(const std::vector<Vector>& series, Index expected,
                    const char* op) {
  if (series.size() != expected)
    throw DimensionError(std::string(op) + ": expected a series of " +
                         std::to_string(expected) + " vectors, got " +
                         std::to_string(series.size()));
}

const DenseMatrix& checked(const std::vector<DenseMatrix>& list, Index l,
                           Index first, const char* what) {
  if (l < first || l - first >= list.size())
    throw DimensionError(std::string(what) + ": lag " + std::to_string(l) +
                         " out of range");
  return list[l - first];
}

}  // namespace

MemoryOperators::MemoryOperators(const RelaxationSetup& setup,
                                 const TransferBasis& basis,
                                 const DenseMatrix& R, Index k)
    : k_(k) {
  if (k == 0) throw PreconditionError("memory depth k must be at least 1");
  if (R.rows() != basis.n_coarse() || R.cols() != basis.size())
    throw DimensionError("restriction " + shape_of(R) + " for basis with n=" +
                         std::to_string(basis.size()) + ", n_c=" +
                         std::to_string(basis.n_coarse()));

  const DenseMatrix TQ = setup.T * basis.Q;
  tqq_ = basis.Q_dual * TQ;
  tqp_ = basis.Q_dual * (setup.T * basis.P);
  const DenseMatrix RA = R * setup.A_hat;
  raq_ = RA * basis.Q;
  const DenseMatrix PdT = basis.P_dual * setup.T;

  weights_.reserve(k);
  weights_.push_back(tqp_);
  for (Index l = 1; l < k; ++l) weights_.push_back(tqq_ * weights_.back());

  prolongations_.reserve(k + 1);
  prolongations_.push_back(basis.P);
  for (const auto& w : weights_) prolongations_.push_back(basis.Q * w);

  for (const auto& p : prolongations_) {
    propagators_.push_back(PdT * p);
    coarse_ops_.push_back(RA * p);
  }

  tqq_k_ = power(tqq_, static_cast<unsigned>(k));
}

const DenseMatrix& MemoryOperators::W(Index l) const {
  return checked(weights_, l, 1, "W");
}
const DenseMatrix& MemoryOperators::P(Index l) const {
  return checked(prolongations_, l, 0, "P");
}
const DenseMatrix& MemoryOperators::T(Index l) const {
  return checked(propagators_, l, 0, "T");
}
const DenseMatrix& MemoryOperators::A_sigma(Index l) const {
  return checked(coarse_ops_, l, 0, "A_sigma");
}

MemoryOperators build_memory(const RelaxationSetup& setup,
                             const TransferBasis& basis, const DenseMatrix& R,
                             Index k) {
  return {setup, basis, R, k};
}

Vector reconstruct_fine_error(const MemoryOperators& mem,
                              const std::vector<Vector>& e_sigma_series,
                              const Vector& e_phi_0) {
  require_series(e_sigma_series, mem.depth(), "reconstruct_fine_error");
  Vector e_phi = e_phi_0;
  for (const auto& e_sigma : e_sigma_series)
    e_phi = mem.Tqq() * e_phi + mem.Tqp() * e_sigma;
  return e_phi;
}

Vector interpolate_memory(const MemoryOperators& mem,
                          const std::vector<Vector>& eps_sigma_series) {
  const Index k = mem.depth();
  require_series(eps_sigma_series, k, "interpolate_memory");
  Vector eps_phi(mem.Tqq().rows());
  for (Index l = 0; l < k; ++l)
    eps_phi += mem.W(l + 1) * eps_sigma_series[k - l - 1];
  return eps_phi;
}

DenseMatrix effective_prolongation(const MemoryOperators& mem) {
  DenseMatrix p = mem.P(0);
  for (Index l = 1; l <= mem.depth(); ++l) p += mem.P(l);
  return p;
}

DenseMatrix generalized_coarse_operator(const MemoryOperators& mem) {
  DenseMatrix a = mem.A_sigma(0);
  for (Index l = 1; l <= mem.depth(); ++l) a += mem.A_sigma(l);
  return a;
}

Vector coarse_memory_step(const MemoryOperators& mem,
                          const std::vector<Vector>& e_sigma_series) {
  const Index k = mem.depth();
  require_series(e_sigma_series, k + 1, "coarse_memory_step");
  Vector next(mem.T(0).rows());
  for (Index l = 0; l <= k; ++l) next += mem.T(l) * e_sigma_series[k - l];
  return next;
}

NoiseTerm noise(const RelaxationSetup& setup, const TransferBasis& basis,
                const DenseMatrix& R, const Vector& e_phi_0, Index k) {
  const DenseMatrix tqq = basis.Q_dual * setup.T * basis.Q;
  Vector v = e_phi_0;
  for (Index l = 0; l < k; ++l) v = tqq * v;
  return {-(R * (setup.A_hat * (basis.Q * v))), k};
}

Vector coarse_balance_residual(const MemoryOperators& mem,
                               const std::vector<Vector>& e_sigma_series,
                               const Vector& r_hat_sigma, const Vector& eta) {
  const Index k = mem.depth();
  require_series(e_sigma_series, k + 1, "coarse_balance_residual");
  Vector lhs(r_hat_sigma.size());
  for (Index l = 0; l <= k; ++l) lhs += mem.A_sigma(l) * e_sigma_series[k - l];
  return lhs - r_hat_sigma - eta;
}

CRDiagnostics cr_diagnostics(const RelaxationSetup& setup,
                             const TransferBasis& basis, Index k) {
  if (basis.n_fine() == 0)
    throw PreconditionError("cr_diagnostics: no fine points");
  const DenseMatrix tqq = basis.Q_dual * setup.T * basis.Q;
  return {spectral_radius(tqq), norm2(power(tqq, static_cast<unsigned>(k)))};
}

}  // namespace rbamg
