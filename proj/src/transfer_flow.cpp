#include "rbamg/transfer_flow.hpp"

#include <cmath>
#include <sstream>

#include "rbamg/linalg/decomp.hpp"

namespace rbamg {

namespace {

DenseMatrix embed_rows(const CFSplit& split, const DenseMatrix& coarse_rows,
                       const DenseMatrix& fine_rows) {
  DenseMatrix out(split.size(), coarse_rows.cols());
  const auto& c = split.coarse();
  const auto& f = split.fine();
  for (Index r = 0; r < c.size(); ++r)
    for (Index j = 0; j < out.cols(); ++j) out(c[r], j) = coarse_rows(r, j);
  for (Index r = 0; r < f.size(); ++r)
    for (Index j = 0; j < out.cols(); ++j) out(f[r], j) = fine_rows(r, j);
  return out;
}

DenseMatrix embed_cols(const CFSplit& split, const DenseMatrix& coarse_cols,
                       const DenseMatrix& fine_cols) {
  return embed_rows(split, coarse_cols.transpose(), fine_cols.transpose())
      .transpose();
}

std::vector<double> column_energies(const DenseMatrix& P,
                                    const DenseMatrix& A_hat) {
  std::vector<double> out;
  out.reserve(P.cols());
  for (Index j = 0; j < P.cols(); ++j) {
    const Vector p = P.column(j);
    const Vector Ap = A_hat * p;
    Scalar e{};
    for (Index i = 0; i < p.size(); ++i) e += std::conj(p[i]) * Ap[i];
    out.push_back(std::sqrt(std::max(0.0, e.real())));
  }
  return out;
}

FlowState advance(const FlowState& prev, DenseMatrix P_next,
                  const RelaxationSetup& setup) {
  FlowState next;
  next.tau = prev.tau + 1;
  next.P = std::move(P_next);
  next.P_dual = prev.P_dual;
  next.Q = prev.Q;
  DenseMatrix inv;
  try {
    inv = inverse(hstack(next.P, next.Q));
  } catch (const SingularError&) {
    throw ConvergenceError("flow step " + std::to_string(next.tau) +
                           ": [P Q] became singular");
  }
  next.Q_dual = inv.block(next.P.cols(), 0, next.Q.cols(), next.P.rows());
  next.energies = prev.energies;
  next.energies.push_back(column_energies(next.P, setup.A_hat));
  next.residuals = prev.residuals;
  next.residuals.push_back((next.Q_dual * setup.T * next.P).norm_fro());
  return next;
}

}  // namespace

IdealProlongation ideal_prolongation(const RelaxationSetup& setup,
                                     const CFSplit& split, Index k) {
  if (k < 1) throw PreconditionError("ideal_prolongation needs k >= 1");
  const DenseMatrix Tff = setup.T.submatrix(split.fine(), split.fine());
  const DenseMatrix Tfc = setup.T.submatrix(split.fine(), split.coarse());
  DenseMatrix term = Tfc;
  DenseMatrix W = Tfc;
  for (Index l = 1; l < k; ++l) {
    term = Tff * term;
    W += term;
  }
  return {W, embed_rows(split, DenseMatrix::identity(split.n_coarse()), W)};
}

DenseMatrix ideal_weights(const RelaxationSetup& setup, const CFSplit& split) {
  const DenseMatrix Aff = setup.A_hat.submatrix(split.fine(), split.fine());
  const DenseMatrix Afc = setup.A_hat.submatrix(split.fine(), split.coarse());
  try {
    return -solve_dense(Aff, Afc);
  } catch (const SingularError& e) {
    throw PreconditionError(std::string("fine-fine block of A_hat is singular: ") +
                            e.what());
  }
}

DenseMatrix ideal_restriction(const RelaxationSetup& setup,
                              const CFSplit& split) {
  const DenseMatrix Aff = setup.A_hat.submatrix(split.fine(), split.fine());
  const DenseMatrix Acf = setup.A_hat.submatrix(split.coarse(), split.fine());
  DenseMatrix coupling;
  try {
    // -A_cf A_ff^{-1} = -(A_ff^T^{-1} A_cf^T)^T
    coupling = -solve_dense(Aff.transpose(), Acf.transpose()).transpose();
  } catch (const SingularError& e) {
    throw PreconditionError(std::string("fine-fine block of A_hat is singular: ") +
                            e.what());
  }
  return embed_cols(split, DenseMatrix::identity(split.n_coarse()), coupling);
}

TransferBasis basis_from_weights(const CFSplit& split, const DenseMatrix& W) {
  if (W.rows() != split.n_fine() || W.cols() != split.n_coarse())
    throw DimensionError("basis_from_weights: W is " + shape_of(W));
  const Index nc = split.n_coarse();
  const Index nf = split.n_fine();
  TransferBasis b = canonical_basis(split);
  b.P = embed_rows(split, DenseMatrix::identity(nc), W);
  b.Q_dual = embed_cols(split, -W, DenseMatrix::identity(nf));
  return b;
}

TransferBasis ideal_basis(const RelaxationSetup& setup, const CFSplit& split) {
  return basis_from_weights(split, ideal_weights(setup, split));
}

FlowState flow_init(const DenseMatrix& P0, const DenseMatrix& P0_dual,
                    const RelaxationSetup& setup) {
  if (P0.rows() != setup.size())
    throw DimensionError("flow_init: P0 " + shape_of(P0) + " for n=" +
                         std::to_string(setup.size()));
  const TransferBasis b = basis_from_columns(P0, P0_dual);
  FlowState s;
  s.P = b.P;
  s.P_dual = b.P_dual;
  s.Q = b.Q;
  s.Q_dual = b.Q_dual;
  s.energies.push_back(column_energies(s.P, setup.A_hat));
  s.residuals.push_back((s.Q_dual * setup.T * s.P).norm_fro());
  return s;
}

FlowState flow_step(const FlowState& state, const RelaxationSetup& setup,
                    Index k) {
  if (k < 1) throw PreconditionError("flow_step needs k >= 1");
  const DenseMatrix tqq = state.Q_dual * setup.T * state.Q;
  DenseMatrix term = state.Q_dual * setup.T * state.P;
  DenseMatrix sum = term;
  for (Index l = 1; l < k; ++l) {
    term = tqq * term;
    sum += term;
  }
  return advance(state, state.P + state.Q * sum, setup);
}

FlowState infinite_k_flow_step(const FlowState& state,
                               const RelaxationSetup& setup, FlowDual dual) {
  const DenseMatrix D =
      dual == FlowDual::hermitian ? state.Q.adjoint() : state.Q_dual;
  const DenseMatrix DA = D * setup.A_hat;
  DenseMatrix correction;
  try {
    correction = solve_dense(DA * state.Q, DA * state.P);
  } catch (const SingularError& e) {
    throw PreconditionError(
        std::string("infinite-k flow step: fine block Q_dual A_hat Q is "
                    "singular: ") +
        e.what());
  }
  return advance(state, state.P - state.Q * correction, setup);
}

FlowState flow_run(const DenseMatrix& P0, const DenseMatrix& P0_dual,
                   const RelaxationSetup& setup, Index k, Index max_tau,
                   double tol) {
  FlowState state = flow_init(P0, P0_dual, setup);
  const double start = state.residuals.front();
  while (state.residuals.back() > tol && state.tau < max_tau) {
    state = flow_step(state, setup, k);
    const double r = state.residuals.back();
    if (!std::isfinite(r) || r > 10.0 * start) {
      std::ostringstream msg;
      msg << "flow diverged at step " << state.tau << ": residual " << r
          << " exceeds ten times the initial " << start;
      throw FlowDivergenceError(msg.str(), state.residuals);
    }
  }
  return state;
}

SpectralTransfer optimal_transfers(const RelaxationSetup& setup, Index n_c) {
  const Index n = setup.size();
  if (n_c == 0 || n_c >= n)
    throw PreconditionError("optimal_transfers: need 0 < n_c < n");
  const EigenDecomposition eig = eig_dense(setup.T);
  const double gap = std::abs(eig.values[n_c - 1]) - std::abs(eig.values[n_c]);
  if (gap <= 1e-10) {
    std::ostringstream msg;
    msg << "optimal_transfers: eigenvalue magnitudes tie across the cut ("
        << std::abs(eig.values[n_c - 1]) << " vs " << std::abs(eig.values[n_c])
        << "); the coarse space is ill-defined for n_c=" << n_c;
    throw PreconditionError(msg.str());
  }
  const Index nf = n - n_c;
  SpectralTransfer s;
  s.Lambda_c.assign(eig.values.begin(), eig.values.begin() + n_c);
  s.Lambda_f.assign(eig.values.begin() + n_c, eig.values.end());
  s.V_R_c = eig.right.block(0, 0, n, n_c);
  s.V_R_f = eig.right.block(0, n_c, n, nf);
  s.V_L_c = eig.left.block(0, 0, n_c, n);
  s.V_L_f = eig.left.block(n_c, 0, nf, n);
  s.P_inf = s.V_R_c;
  s.P_inf_dual = s.V_L_c;
  s.Q_inf = s.V_R_f;
  s.Q_inf_dual = s.V_L_f;
  s.R_inf = s.V_L_c;
  return s;
}

}  // namespace rbamg
