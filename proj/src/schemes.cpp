#include "rbamg/schemes.hpp"

#include <cmath>
#include <sstream>

#include "rbamg/linalg/decomp.hpp"
#include "rbamg/memory.hpp"

namespace rbamg {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::markovian: return "markovian";
    case Scheme::semi_markovian: return "semi_markovian";
    case Scheme::non_markovian: return "non_markovian";
    case Scheme::exact: return "exact";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "markovian") return Scheme::markovian;
  if (name == "semi_markovian") return Scheme::semi_markovian;
  if (name == "non_markovian") return Scheme::non_markovian;
  if (name == "exact") return Scheme::exact;
  throw Error("unknown scheme '" + name + "'");
}

namespace {

// Relaxation run shared by all schemes. One look-ahead step is taken so the
// preconditioned residual r_hat^(k) = x^(k+1) - x^(k) is read off the
// history; the correction is applied to x^(k).
struct Prelude {
  RelaxationHistory history;
  Index k;
  Vector r_hat_sigma;
  std::vector<Vector> x_sigma;  // P_dual x^(l), l = 0..k

  const Vector& xk() const { return history[k]; }
  // x_sigma^(k) - x_sigma^(l)
  Vector coarse_shift(Index l) const { return x_sigma[k] - x_sigma[l]; }
};

Prelude prelude(const RelaxationSetup& setup, const TransferBasis& basis,
                const DenseMatrix& R, const Vector& b, const Vector& x0,
                Index k) {
  if (k < 1) throw PreconditionError("a cycle needs k >= 1 relaxation steps");
  if (R.rows() != basis.n_coarse() || R.cols() != setup.size() ||
      basis.size() != setup.size())
    throw DimensionError("cycle: restriction " + shape_of(R) + ", basis n=" +
                         std::to_string(basis.size()) + ", system n=" +
                         std::to_string(setup.size()));
  Prelude p{relax(setup, b, x0, k + 1), k, {}, {}};
  p.r_hat_sigma = R * residual_shift(p.history, k);
  p.x_sigma.reserve(k + 1);
  for (Index l = 0; l <= k; ++l) p.x_sigma.push_back(basis.P_dual * p.history[l]);
  return p;
}

void attach_noise(CycleResult& out, const CycleOptions& options,
                  const RelaxationSetup& setup, const TransferBasis& basis,
                  const DenseMatrix& R, const Vector& x0, Index k) {
  if (!options.exact_solution) return;
  const Vector e_phi_0 = basis.Q_dual * (*options.exact_solution - x0);
  out.noise_norm = noise(setup, basis, R, e_phi_0, k).eta.norm();
}

// eps^(k) = sum_{l=0}^{k} P^(l) eps_sigma^(k-l), with the earlier coarse
// errors recovered from eps_sigma^(k) through the coarse shift relation.
Vector memory_interpolation(const MemoryOperators& mem, const Prelude& pre,
                            const Vector& eps_sigma_k) {
  const Index k = pre.k;
  Vector eps = mem.P(0) * eps_sigma_k;
  for (Index l = 1; l <= k; ++l)
    eps += mem.P(l) * (eps_sigma_k + pre.coarse_shift(k - l));
  return eps;
}

DenseMatrix petrov_galerkin_projection(const DenseMatrix& P,
                                       const DenseMatrix& RA) {
  const Index n = P.rows();
  return DenseMatrix::identity(n) - P * solve_dense(RA * P, RA);
}

}  // namespace

CycleResult markovian_cycle(const RelaxationSetup& setup,
                            const TransferBasis& basis, const DenseMatrix& R,
                            const Vector& b, const Vector& x0, Index k,
                            const CycleOptions& options) {
  const Prelude pre = prelude(setup, basis, R, b, x0, k);
  const DenseMatrix RA = R * setup.A_hat;

  CycleResult out;
  out.raq_norm = (RA * basis.Q).norm_fro();
  out.coarse_solution = solve_dense(RA * basis.P, pre.r_hat_sigma);
  out.x_new = pre.xk() + basis.P * out.coarse_solution;
  attach_noise(out, options, setup, basis, R, x0, k);
  if (options.assemble_propagator)
    out.propagator = assemble_propagator(Scheme::markovian, setup, basis, R, k);
  return out;
}

CycleResult semi_markovian_cycle(const RelaxationSetup& setup,
                                 const TransferBasis& basis,
                                 const DenseMatrix& R, const Vector& b,
                                 const Vector& x0, Index k,
                                 const CycleOptions& options) {
  const double raq = check_orthogonality_RAQ(R, setup, basis);
  if (raq > kSemiMarkovianPremiseTol) {
    std::ostringstream msg;
    msg << "semi-Markovian scheme requires R A_hat Q = 0, measured ||R A_hat "
           "Q|| = "
        << raq << " > " << kSemiMarkovianPremiseTol;
    throw PreconditionError(msg.str());
  }
  const Prelude pre = prelude(setup, basis, R, b, x0, k);
  const MemoryOperators mem(setup, basis, R, k);

  CycleResult out;
  out.raq_norm = raq;
  out.coarse_solution = solve_dense(mem.A_sigma(0), pre.r_hat_sigma);
  out.x_new = pre.xk() + memory_interpolation(mem, pre, out.coarse_solution);
  attach_noise(out, options, setup, basis, R, x0, k);
  if (options.assemble_propagator)
    out.propagator =
        assemble_propagator(Scheme::semi_markovian, setup, basis, R, k);
  return out;
}

CycleResult non_markovian_cycle(const RelaxationSetup& setup,
                                const TransferBasis& basis,
                                const DenseMatrix& R, const Vector& b,
                                const Vector& x0, Index k,
                                const CycleOptions& options) {
  const Prelude pre = prelude(setup, basis, R, b, x0, k);
  const MemoryOperators mem(setup, basis, R, k);

  // s_sigma^(k) = -sum_{l=0}^{k} A_sigma^(k-l) (x_sigma^(k) - x_sigma^(l))
  Vector s(basis.n_coarse());
  for (Index l = 0; l <= k; ++l) s -= mem.A_sigma(k - l) * pre.coarse_shift(l);

  CycleResult out;
  out.raq_norm = mem.RAQ().norm_fro();
  out.memory_correction_norm = s.norm();
  out.coarse_solution =
      solve_dense(generalized_coarse_operator(mem), pre.r_hat_sigma + s);
  out.x_new = pre.xk() + memory_interpolation(mem, pre, out.coarse_solution);
  attach_noise(out, options, setup, basis, R, x0, k);
  if (options.assemble_propagator)
    out.propagator =
        assemble_propagator(Scheme::non_markovian, setup, basis, R, k);
  return out;
}

ExactEffectiveOperators exact_effective_operators(const RelaxationSetup& setup,
                                                  const TransferBasis& basis,
                                                  const DenseMatrix& R) {
  const DenseMatrix AQ = setup.A_hat * basis.Q;
  const DenseMatrix QdA = basis.Q_dual * setup.A_hat;
  DenseMatrix fine_inv;
  try {
    fine_inv = inverse(basis.Q_dual * AQ);
  } catch (const SingularError& e) {
    throw PreconditionError(std::string("exact scheme: Q_dual A_hat Q is "
                                        "singular (") +
                            e.what() + ")");
  }
  ExactEffectiveOperators ops;
  ops.P_tilde = basis.P - basis.Q * (fine_inv * (QdA * basis.P));
  ops.R_tilde = R - (R * AQ) * fine_inv * basis.Q_dual;
  ops.A_sigma = R * setup.A_hat * ops.P_tilde;
  return ops;
}

CycleResult exact_cycle(const RelaxationSetup& setup,
                        const TransferBasis& basis, const DenseMatrix& R,
                        const Vector& b, const Vector& x0, Index k,
                        const CycleOptions& options) {
  const Prelude pre = prelude(setup, basis, R, b, x0, k);
  const MemoryOperators mem(setup, basis, R, k);
  const Index nf = basis.n_fine();

  for (const Scalar& mu : eigenvalues(mem.Tqq_power()))
    if (std::abs(mu - 1.0) <= 1e-10)
      throw PreconditionError(
          "exact scheme: I - (Q_dual T Q)^k is singular (an eigenvalue of "
          "(Q_dual T Q)^k lies within 1e-10 of 1); use a larger k or a "
          "different split");
  const LUFactorization G(DenseMatrix::identity(nf) - mem.Tqq_power());

  // xi_phi^(k) = G^{-1} T_qq^k (x_phi^(k) - x_phi^(0))
  const Vector x_phi_shift = basis.Q_dual * error_shift(pre.history, 0, k);
  const Vector xi = G.solve(mem.Tqq_power() * x_phi_shift);

  // W~^(l) = G^{-1} W^(l);  A~^(0) = R A_hat P,  A~^(l) = R A_hat Q W~^(l)
  std::vector<DenseMatrix> w_tilde;
  w_tilde.reserve(k);
  for (Index l = 1; l <= k; ++l) w_tilde.push_back(G.solve(mem.W(l)));
  std::vector<DenseMatrix> a_tilde{mem.A_sigma(0)};
  for (const auto& w : w_tilde) a_tilde.push_back(mem.RAQ() * w);

  DenseMatrix a_sum = a_tilde[0];
  for (Index l = 1; l <= k; ++l) a_sum += a_tilde[l];

  Vector s = -(mem.RAQ() * xi);
  for (Index l = 0; l <= k; ++l) s -= a_tilde[k - l] * pre.coarse_shift(l);

  CycleResult out;
  out.raq_norm = mem.RAQ().norm_fro();
  out.memory_correction_norm = s.norm();
  out.coarse_solution = solve_dense(a_sum, pre.r_hat_sigma + s);

  Vector e_phi = xi;
  for (Index l = 0; l < k; ++l)
    e_phi += w_tilde[l] * (out.coarse_solution + pre.coarse_shift(k - l - 1));
  out.x_new = pre.xk() + basis.P * out.coarse_solution + basis.Q * e_phi;

  const ExactEffectiveOperators eff = exact_effective_operators(setup, basis, R);
  const double scale = std::max(1.0, a_sum.norm_fro());
  out.effective_operator_mismatch =
      std::max((a_sum - eff.A_sigma).norm_fro(),
               (a_sum - eff.R_tilde * setup.A_hat * basis.P).norm_fro()) /
      scale;

  attach_noise(out, options, setup, basis, R, x0, k);
  if (options.assemble_propagator)
    out.propagator = assemble_propagator(Scheme::exact, setup, basis, R, k);
  return out;
}

CycleResult run_cycle(Scheme scheme, const RelaxationSetup& setup,
                      const TransferBasis& basis, const DenseMatrix& R,
                      const Vector& b, const Vector& x0, Index k,
                      const CycleOptions& options) {
  switch (scheme) {
    case Scheme::markovian:
      return markovian_cycle(setup, basis, R, b, x0, k, options);
    case Scheme::semi_markovian:
      return semi_markovian_cycle(setup, basis, R, b, x0, k, options);
    case Scheme::non_markovian:
      return non_markovian_cycle(setup, basis, R, b, x0, k, options);
    case Scheme::exact:
      return exact_cycle(setup, basis, R, b, x0, k, options);
  }
  throw Error("unknown scheme");
}

DenseMatrix assemble_propagator(Scheme scheme, const RelaxationSetup& setup,
                                const TransferBasis& basis,
                                const DenseMatrix& R, Index k) {
  const Index n = setup.size();
  const auto kk = static_cast<unsigned>(k);
  switch (scheme) {
    case Scheme::markovian:
      return petrov_galerkin_projection(basis.P, R * setup.A_hat) *
             power(setup.T, kk);
    case Scheme::semi_markovian: {
      const DenseMatrix tqq = basis.Q_dual * setup.T * basis.Q;
      return basis.Q * power(tqq, kk) * basis.Q_dual;
    }
    case Scheme::non_markovian: {
      const MemoryOperators mem(setup, basis, R, k);
      const DenseMatrix fine_part = basis.Q * mem.Tqq_power() * basis.Q_dual;
      return petrov_galerkin_projection(effective_prolongation(mem),
                                        R * setup.A_hat) *
             fine_part;
    }
    case Scheme::exact:
      return DenseMatrix(n, n);
  }
  throw Error("unknown scheme");
}

}  // namespace rbamg
