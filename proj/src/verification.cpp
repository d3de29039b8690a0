#include "rbamg/verification.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "rbamg/experiment/runner.hpp"
#include "rbamg/linalg/decomp.hpp"
#include "rbamg/linalg/kernels.hpp"
#include "rbamg/matrix_market.hpp"
#include "rbamg/memory.hpp"
#include "rbamg/oracle.hpp"
#include "rbamg/problems.hpp"
#include "rbamg/random.hpp"
#include "rbamg/schemes.hpp"
#include "rbamg/transfer_flow.hpp"

namespace rbamg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Running maximum that stays NaN once a NaN is seen.
struct Worst {
  double value = 0;
  void operator()(double v) {
    value = (std::isnan(value) || std::isnan(v)) ? kNaN : std::max(value, v);
  }
};

class Checker {
 public:
  explicit Checker(std::string suite) : suite_(std::move(suite)) {}

  void bound(const std::string& name, double value, double tol,
             std::string note = {}) {
    results_.push_back({suite_, name, value, tol,
                        std::isfinite(value) && value <= tol, std::move(note)});
  }

  void require(const std::string& name, bool ok, std::string note = {}) {
    results_.push_back({suite_, name, ok ? 0.0 : 1.0, 0.0, ok, std::move(note)});
  }

  template <class F>
  void guarded(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      results_.push_back({suite_, name, kNaN, 0.0, false, e.what()});
    }
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::vector<CheckResult> results_;
};

DenseMatrix dense(const ProblemSpec& spec) { return generate(spec).to_dense(); }

RelaxationSetup jacobi_setup(const ProblemSpec& spec, double omega = 2.0 / 3.0) {
  return build_setup(dense(spec), SmootherSpec{SmootherKind::jacobi, omega});
}

double rel(double num, double den) { return den > 0 ? num / den : num; }

// Fine error components the hard way: e^(l) = x - x^(l) from a relaxation
// run against the dense solution.
struct TrueRun {
  RelaxationHistory history;
  Vector x;
  Vector error(Index l) const { return x - history[l]; }
};

TrueRun true_run(const RelaxationSetup& setup, Rng& rng, Index steps) {
  const Index n = setup.size();
  const Vector b = random_vector(rng, n);
  const Vector x0 = random_vector(rng, n);
  return {relax(setup, b, x0, steps), solve_dense(setup.A, b)};
}

std::vector<ProblemSpec> small_problems() {
  return {ProblemSpec::poisson1d(8), ProblemSpec::poisson1d(16),
          ProblemSpec::poisson1d(32), ProblemSpec::advdiff1d(16, 20.0)};
}

// ---------------------------------------------------------------- linalg

void suite_linalg(Checker& c, Rng& rng) {
  c.guarded("solve_dense(A, I) * A = I", [&] {
    Worst w;
    for (const auto& spec : {ProblemSpec::poisson1d(64), ProblemSpec::poisson2d(8, 8),
                             ProblemSpec::advdiff1d(64, 50.0)}) {
      const DenseMatrix A = dense(spec);
      const DenseMatrix X = solve_dense(A, DenseMatrix::identity(A.rows()));
      w((A * X - DenseMatrix::identity(A.rows())).max_abs());
    }
    c.bound("solve_dense(A, I) * A = I", w.value, 1e-9);
  });
  c.guarded("eig reconstruction", [&] {
    Worst recon, biorth;
    std::vector<DenseMatrix> mats;
    for (const auto& spec : {ProblemSpec::poisson1d(32), ProblemSpec::advdiff1d(16, 20.0),
                             ProblemSpec::poisson2d(4, 4)})
      mats.push_back(jacobi_setup(spec).T);
    const DenseMatrix G = random_matrix(rng, 5, 5);
    mats.push_back(G + G.transpose());
    for (const auto& A : mats) {
      const auto eig = eig_dense(A);
      DenseMatrix VL = eig.right;
      for (Index j = 0; j < A.rows(); ++j)
        for (Index i = 0; i < A.rows(); ++i) VL(i, j) *= eig.values[j];
      recon((VL * eig.left - A).norm_fro() / std::max(1.0, A.norm_fro()));
      biorth((eig.left * eig.right - DenseMatrix::identity(A.rows())).norm_fro());
    }
    c.bound("eig reconstruction V_R L V_L = A", recon.value, 1e-8);
    c.bound("eig biorthogonality V_L V_R = I", biorth.value, 1e-8);
  });
  c.guarded("parallel kernels match serial", [&] {
    const Index m = 96, k = 80, n = 72;
    const DenseMatrix a = random_matrix(rng, m, k, true);
    const DenseMatrix b = random_matrix(rng, k, n, true);
    DenseMatrix c1(m, n), c2(m, n);
    kernels::gemm(a.data(), b.data(), c1.data(), m, k, n);
    kernels::gemm_serial(a.data(), b.data(), c2.data(), m, k, n);
    const SparseMatrix S = generate(ProblemSpec::poisson2d(40, 40));
    const Vector x = random_vector(rng, S.cols(), true);
    Vector y1(S.rows()), y2(S.rows());
    kernels::csr_spmv(S.row_offsets(), S.col_indices(), S.values(), x.values(), y1.values());
    kernels::csr_spmv_serial(S.row_offsets(), S.col_indices(), S.values(), x.values(),
                             y2.values());
    c.require("gemm parallel == serial (bitwise)", c1 == c2);
    c.require("csr_spmv parallel == serial (bitwise)", y1 == y2);
  });
}

// ------------------------------------------------------------ relaxation

void suite_relaxation(Checker& c, Rng& rng) {
  c.guarded("error recursion", [&] {
    Worst rec, rhat;
    for (const auto& spec : {ProblemSpec::poisson1d(64), ProblemSpec::advdiff1d(32, 40.0),
                             ProblemSpec::poisson2d(6, 6)}) {
      for (auto smoother : {SmootherSpec{SmootherKind::jacobi, 2.0 / 3.0},
                            SmootherSpec{SmootherKind::gauss_seidel_forward, 1.0},
                            SmootherSpec{SmootherKind::richardson, 0.2}}) {
        const RelaxationSetup s = build_setup(dense(spec), smoother);
        const TrueRun run = true_run(s, rng, 20);
        for (Index l = 0; l < 20; ++l) {
          const Vector e = run.error(l);
          rec(rel((run.error(l + 1) - s.T * e).norm(), e.norm()));
          const Vector r_hat = residual_shift(run.history, l);
          rhat(rel((r_hat - s.A_hat * e).norm(), r_hat.norm()));
        }
      }
    }
    c.bound("e^(l+1) = T e^(l)", rec.value, 1e-12);
    c.bound("x^(k+1) - x^(k) = A_hat e^(k)", rhat.value, 1e-12);
  });
  c.guarded("gauss-seidel implicit vs explicit", [&] {
    const RelaxationSetup s = build_setup(dense(ProblemSpec::advdiff1d(32, 40.0)),
                                          SmootherSpec{SmootherKind::gauss_seidel_forward, 1.0});
    Worst w;
    for (int t = 0; t < 5; ++t) {
      const Vector r = random_vector(rng, s.size());
      const Vector implicit = apply_preconditioner(s, r);
      w(rel((implicit - s.M * r).norm(), implicit.norm()));
    }
    c.bound("forward substitution = M r", w.value, 1e-12);
  });
}

// ------------------------------------------------------------- splitting

void suite_splitting(Checker& c, Rng& rng) {
  c.guarded("basis relations", [&] {
    Worst rel_w, proj, decomp;
    for (int t = 0; t < 5; ++t) {
      const TransferBasis bases[] = {canonical_basis(random_split(rng, 12, 5)),
                                     random_basis(rng, 12, 5, t % 2 == 1)};
      for (const auto& b : bases) {
        rel_w(basis_residuals(b).worst());
        const DenseMatrix Pp = b.P * b.P_dual;
        const DenseMatrix Qq = b.Q * b.Q_dual;
        proj(std::max((Pp * Pp - Pp).norm_fro(), (Qq * Qq - Qq).norm_fro()));
        const Vector e = random_vector(rng, 12, true);
        decomp(rel((e - Pp * e - Qq * e).norm(), e.norm()));
      }
    }
    c.bound("duality, orthogonality, completeness", rel_w.value, 1e-11);
    c.bound("oblique projections are idempotent", proj.value, 1e-12);
    c.bound("e = P P_dual e + Q Q_dual e", decomp.value, 1e-13);
  });
  c.guarded("basis completion", [&] {
    const TransferBasis r = random_basis(rng, 10, 4);
    const TransferBasis b = basis_from_columns(r.P, r.P_dual);
    c.bound("basis_from_columns completeness", basis_residuals(b).worst(), 1e-11);
  });
}

// ---------------------------------------------------------------- memory

void suite_memory(Checker& c, Rng& rng) {
  c.guarded("reconstruction and balance", [&] {
    Worst recon, balance;
    for (const auto& spec : small_problems()) {
      const RelaxationSetup s = jacobi_setup(spec);
      const Index n = s.size();
      const CFSplit split = every_other_split(n);
      for (Index k : {1, 3, 5}) {
        for (bool random : {false, true}) {
          const TransferBasis b = random ? random_basis(rng, n, split.n_coarse())
                                         : canonical_basis(split);
          const DenseMatrix R = random_matrix(rng, split.n_coarse(), n);
          const MemoryOperators mem(s, b, R, k);
          const TrueRun run = true_run(s, rng, k + 1);
          std::vector<Vector> series;
          for (Index l = 0; l <= k; ++l) series.push_back(b.P_dual * run.error(l));
          const Vector e_phi_0 = b.Q_dual * run.error(0);
          const Vector truth = b.Q_dual * run.error(k);
          const std::vector<Vector> before(series.begin(), series.begin() + k);
          recon(rel((reconstruct_fine_error(mem, before, e_phi_0) - truth).norm(),
                    truth.norm()));
          const Vector r_hat_sigma = R * residual_shift(run.history, k);
          const Vector eta = noise(s, b, R, e_phi_0, k).eta;
          balance(rel(coarse_balance_residual(mem, series, r_hat_sigma, eta).norm(),
                      r_hat_sigma.norm()));
        }
      }
    }
    c.bound("fine error reconstruction (relative)", recon.value, 1e-11);
    c.bound("exact coarse equation balance (relative)", balance.value, 1e-11);
  });
  c.guarded("coarse-grained relaxation", [&] {
    Worst w, with_fine;
    const RelaxationSetup s = jacobi_setup(ProblemSpec::poisson1d(16));
    const CFSplit split = every_other_split(16);
    for (bool random : {false, true}) {
      const TransferBasis b = random ? random_basis(rng, 16, 8) : canonical_basis(split);
      for (Index k : {1, 2, 4}) {
        const MemoryOperators mem(s, b, b.P_dual, k);
        // Initial error with no fine component.
        const Vector e0 = b.P * random_vector(rng, 8);
        std::vector<Vector> series;
        Vector e = e0;
        for (Index l = 0; l <= k; ++l) {
          series.push_back(b.P_dual * e);
          e = s.T * e;
        }
        const Vector next = b.P_dual * e;
        w(rel((coarse_memory_step(mem, series) - next).norm(), next.norm()));
        // General initial error: the fine initial condition enters additively.
        const Vector g0 = random_vector(rng, 16);
        series.clear();
        e = g0;
        for (Index l = 0; l <= k; ++l) {
          series.push_back(b.P_dual * e);
          e = s.T * e;
        }
        const Vector fine = b.P_dual * (s.T * (b.Q * (mem.Tqq_power() * (b.Q_dual * g0))));
        const Vector target = b.P_dual * e;
        with_fine(rel((coarse_memory_step(mem, series) + fine - target).norm(),
                      target.norm()));
      }
    }
    c.bound("memory recursion reproduces e_sigma^(k+1)", w.value, 1e-11);
    c.bound("memory recursion plus fine initial term", with_fine.value, 1e-11);
  });
  c.guarded("geometric series", [&] {
    Worst w;
    const RelaxationSetup s = jacobi_setup(ProblemSpec::poisson1d(16));
    for (int t = 0; t < 10; ++t) {
      const TransferBasis b = canonical_basis(random_split(rng, 16, 8));
      const Index k = 1 + t % 4;
      const DenseMatrix tqq = b.Q_dual * s.T * b.Q;
      DenseMatrix sum = DenseMatrix::identity(8), term = sum;
      for (Index l = 1; l < k; ++l) {
        term = tqq * term;
        sum += term;
      }
      const DenseMatrix lhs =
          solve_dense(DenseMatrix::identity(8) - power(tqq, static_cast<unsigned>(k)), sum);
      const DenseMatrix rhs = inverse(b.Q_dual * s.A_hat * b.Q);
      w(rel((lhs - rhs).norm_fro(), rhs.norm_fro()));
    }
    c.bound("[I - Tqq^k]^-1 sum Tqq^l = (Q_dual A_hat Q)^-1", w.value, 1e-10);
  });
  c.guarded("hierarchy invariance", [&] {
    Worst t_w, mem_w;
    for (const auto& spec : {ProblemSpec::poisson1d(16), ProblemSpec::advdiff1d(16, 20.0)}) {
      const RelaxationSetup s = jacobi_setup(spec);
      const DenseMatrix N = random_well_conditioned(rng, 16);
      const RelaxationSetup s2 = build_setup(N * s.A, s.M * inverse(N));
      t_w((s2.T - s.T).max_abs());
      const TransferBasis b = random_basis(rng, 16, 8);
      const DenseMatrix R = random_matrix(rng, 8, 16);
      const Index k = 3;
      const MemoryOperators m1(s, b, R, k), m2(s2, b, R, k);
      for (Index l = 0; l <= k; ++l) {
        if (l > 0) mem_w((m1.W(l) - m2.W(l)).max_abs());
        mem_w((m1.P(l) - m2.P(l)).max_abs());
        mem_w((m1.T(l) - m2.T(l)).max_abs());
        mem_w((m1.A_sigma(l) - m2.A_sigma(l)).max_abs());
      }
    }
    c.bound("T invariant under (NA, MN^-1)", t_w.value, 1e-12);
    c.bound("W, P, T, A_sigma invariant under (NA, MN^-1)", mem_w.value, 1e-12);
  });
}

// --------------------------------------------------------------- schemes

void suite_schemes(Checker& c, Rng& rng) {
  c.guarded("exact scheme", [&] {
    Worst err, mismatch;
    for (const auto& spec : {ProblemSpec::poisson1d(16), ProblemSpec::advdiff1d(16, 20.0)}) {
      const RelaxationSetup s = jacobi_setup(spec);
      for (int t = 0; t < 10; ++t) {
        const TransferBasis b = random_basis(rng, 16, 8);
        const DenseMatrix R = random_matrix(rng, 8, 16);
        for (Index k = 1; k <= 3; ++k) {
          const Vector bb = random_vector(rng, 16), x0 = random_vector(rng, 16);
          const Vector xs = solve_dense(s.A, bb);
          const CycleResult r = exact_cycle(s, b, R, bb, x0, k);
          err(rel((xs - r.x_new).norm(), (xs - x0).norm()));
          mismatch(r.effective_operator_mismatch);
        }
      }
    }
    c.bound("exact scheme one-cycle relative error", err.value, 1e-10);
    c.bound("exact scheme A_sigma = R A P~ = R~ A P", mismatch.value, 1e-11);
  });
  c.guarded("propagators", [&] {
    Worst semi, nonm, all;
    for (const auto& spec : {ProblemSpec::poisson1d(16), ProblemSpec::advdiff1d(16, 20.0)}) {
      const RelaxationSetup s = jacobi_setup(spec);
      const CFSplit split = every_other_split(16);
      const DenseMatrix R_ideal = ideal_restriction(s, split);
      for (int t = 0; t < 10; ++t) {
        const Index k = 1 + t % 5;
        const Vector bb = random_vector(rng, 16), x0 = random_vector(rng, 16);
        const Vector xs = solve_dense(s.A, bb);
        const Vector e0 = xs - x0;
        const TransferBasis canon = canonical_basis(split);
        const CycleResult r = semi_markovian_cycle(s, canon, R_ideal, bb, x0, k);
        const Vector predicted =
            canon.Q * (power(canon.Q_dual * s.T * canon.Q, static_cast<unsigned>(k)) *
                       (canon.Q_dual * e0));
        semi(rel((xs - r.x_new - predicted).norm(), e0.norm()));

        const TransferBasis rb = random_basis(rng, 16, 8);
        CycleOptions opt;
        opt.assemble_propagator = true;
        const CycleResult nm = non_markovian_cycle(s, rb, rb.P_dual, bb, x0, 3, opt);
        nonm(rel((xs - nm.x_new - *nm.propagator * e0).norm(), e0.norm()));

        const DenseMatrix R = random_matrix(rng, 8, 16);
        for (Scheme sc : {Scheme::markovian, Scheme::non_markovian, Scheme::exact}) {
          const CycleResult cr = run_cycle(sc, s, rb, R, bb, x0, k, opt);
          all(rel((xs - cr.x_new - *cr.propagator * e0).norm(), e0.norm()));
        }
      }
    }
    c.bound("semi-Markovian error = Q Tqq^k Q_dual e0", semi.value, 1e-11);
    c.bound("non-Markovian E_TG e0 = measured (R = P_dual)", nonm.value, 1e-10);
    c.bound("assembled E_TG e0 = measured, all schemes", all.value, 1e-10);
  });
  c.guarded("scheme relations", [&] {
    const RelaxationSetup s = jacobi_setup(ProblemSpec::poisson1d(32));
    const CFSplit split = every_other_split(32);
    const TransferBasis b = canonical_basis(split);
    const DenseMatrix R = ideal_restriction(s, split);
    Worst order, coincide;
    for (int t = 0; t < 5; ++t) {
      const Vector bb = random_vector(rng, 32), x0 = random_vector(rng, 32);
      const Vector xs = solve_dense(s.A, bb);
      const double em = (xs - markovian_cycle(s, b, R, bb, x0, 3).x_new).norm();
      const CycleResult semi = semi_markovian_cycle(s, b, R, bb, x0, 3);
      const double es = (xs - semi.x_new).norm();
      const double ee = (xs - exact_cycle(s, b, R, bb, x0, 3).x_new).norm();
      order(std::max(ee - es, es - em));
      coincide(rel((non_markovian_cycle(s, b, R, bb, x0, 3).x_new - semi.x_new).norm(),
                   (xs - x0).norm()));
    }
    c.bound("exact <= semi <= markovian (+1e-12)", order.value, 1e-12);
    c.bound("non-Markovian = semi-Markovian when R A_hat Q = 0", coincide.value, 1e-11);

    const RelaxationSetup gs = build_setup(dense(ProblemSpec::advdiff1d(16, 20.0)),
                                           SmootherSpec{SmootherKind::gauss_seidel_forward, 1.0});
    const TransferBasis rb = random_basis(rng, 16, 8);
    const DenseMatrix Rr = random_matrix(rng, 8, 16);
    const Restriction restr = make_restriction(Rr, gs);
    const DenseMatrix lhs = Rr * gs.A_hat * rb.P;
    c.bound("R A_hat P = R_hat A P", rel((lhs - *restr.R_hat * gs.A * rb.P).norm_fro(),
                                         lhs.norm_fro()),
            1e-11);

    bool threw = false;
    try {
      semi_markovian_cycle(s, b, b.P_dual, random_vector(rng, 32), random_vector(rng, 32), 2);
    } catch (const PreconditionError&) {
      threw = true;
    }
    c.require("semi-Markovian refuses R A_hat Q != 0", threw);
  });
  c.guarded("T-orthogonal basis", [&] {
    const RelaxationSetup s = jacobi_setup(ProblemSpec::advdiff1d(16, 20.0));
    const DenseMatrix Q = random_matrix(rng, 16, 8);
    const TransferBasis b = basis_from_pair(s.T * Q, Q);
    const Vector bb = random_vector(rng, 16), x0 = random_vector(rng, 16);
    const Vector xs = solve_dense(s.A, bb);
    const CycleResult r = non_markovian_cycle(s, b, b.P_dual, bb, x0, 3);
    c.bound("non-Markovian exact when Q_dual T Q = 0",
            rel((xs - r.x_new).norm(), (xs - x0).norm()), 1e-11);
  });
}

// --------------------------------------------------------- transfer_flow

void suite_transfer_flow(Checker& c, Rng& rng) {
  c.guarded("ideal limit", [&] {
    const RelaxationSetup s = jacobi_setup(ProblemSpec::poisson1d(32));
    const CFSplit split = stride_split(32, 3, 2);
    const DenseMatrix ideal = ideal_weights(s, split);
    double prev = std::numeric_limits<double>::infinity();
    Index violations = 0;
    for (Index k = 1; k <= 50; ++k) {
      const double d = (ideal_prolongation(s, split, k).W - ideal).norm_fro();
      if (!(d < prev)) ++violations;
      prev = d;
    }
    c.require("||W(k) - W_ideal|| strictly decreasing, k = 1..50", violations == 0,
              std::to_string(violations) + " non-decreasing steps");
    c.bound("||W(50) - W_ideal||", prev, 1e-8);
  });
  c.guarded("ideal restriction", [&] {
    Worst raq, standard;
    for (const auto& spec : {ProblemSpec::poisson1d(16), ProblemSpec::advdiff1d(16, 20.0)}) {
      for (auto sm : {SmootherSpec{SmootherKind::jacobi, 2.0 / 3.0},
                      SmootherSpec{SmootherKind::gauss_seidel_forward, 1.0}}) {
        const RelaxationSetup s = build_setup(dense(spec), sm);
        const CFSplit split = every_other_split(16);
        const DenseMatrix R = ideal_restriction(s, split);
        raq(check_orthogonality_RAQ(R, s, ideal_basis(s, split)));
        const DenseMatrix RM = R * s.M;
        const DenseMatrix normalized =
            solve_dense(RM.cols_at(split.coarse()), RM);
        const DenseMatrix Aff = s.A.submatrix(split.fine(), split.fine());
        const DenseMatrix Acf = s.A.submatrix(split.coarse(), split.fine());
        const DenseMatrix coupling =
            -solve_dense(Aff.transpose(), Acf.transpose()).transpose();
        standard((normalized.cols_at(split.fine()) - coupling).max_abs());
      }
    }
    c.bound("R A_hat Q_1 = 0 for the ideal restriction", raq.value, 1e-11);
    c.bound("(RM)_c^-1 R M = [I, -A_cf A_ff^-1]", standard.value, 1e-11);
  });
  c.guarded("flow", [&] {
    const RelaxationSetup s = jacobi_setup(ProblemSpec::poisson1d(16));
    const TransferBasis canon = canonical_basis(every_other_split(16));
    const FlowState start = flow_init(canon.P, canon.P_dual, s);
    FlowState st = start;
    const MemoryOperators mem(s, canon, canon.P_dual, 3);
    FlowState first = flow_step(st, s, 3);
    c.bound("one flow step = effective prolongation",
            (first.P - effective_prolongation(mem)).max_abs(), 1e-12);
    Worst orth, dual;
    for (int t = 0; t < 20; ++t) {
      FlowState next = flow_step(st, s, 3);
      orth((next.P_dual * (next.P - st.P)).max_abs());
      dual((next.P_dual * next.P - DenseMatrix::identity(8)).max_abs());
      st = std::move(next);
    }
    c.bound("P_dual (P_{t+1} - P_t) = 0", orth.value, 1e-12);
    c.bound("P_dual P_t = I", dual.value, 1e-11);

    Worst energy;
    for (const auto& spec : {ProblemSpec::poisson1d(16), ProblemSpec::poisson2d(4, 4)}) {
      const RelaxationSetup h = jacobi_setup(spec);
      const Index n = h.size();
      const TransferBasis start = random_basis(rng, n, n / 2);
      FlowState e = flow_init(start.P, start.P_dual, h);
      for (int t = 0; t < 5; ++t) {
        FlowState next = infinite_k_flow_step(e, h, FlowDual::hermitian);
        const auto& before = e.energies.back();
        const auto& after = next.energies.back();
        for (Index i = 0; i < before.size(); ++i)
          energy(after[i] - before[i] - 1e-12 * before[i]);
        e = std::move(next);
      }
    }
    c.bound("A_hat-energy per column non-increasing", energy.value, 0.0);

    const RelaxationSetup two =
        build_setup(DenseMatrix{{2, -1}, {-1, 2}}, SmootherSpec{SmootherKind::jacobi, 1.0});
    const FlowState run = flow_run(DenseMatrix{{1}, {0}}, DenseMatrix{{1, 0}}, two, 1);
    c.bound("2x2 flow reaches ||Q_dual T P|| <= 1e-10", run.residuals.back(), 1e-10);

    const FlowState conv = flow_run(canon.P, canon.P_dual, s, 3);
    const DenseMatrix inv =
        s.T * conv.P - conv.P * (conv.P_dual * s.T * conv.P);
    c.bound("converged flow spans a T-invariant subspace", inv.norm_fro(), 1e-8);

    const FlowState inf = infinite_k_flow_step(start, s);
    const FlowState big = flow_step(start, s, 40);
    c.bound("infinite-k step = flow step with k = 40", (inf.P - big.P).max_abs(), 1e-8);
  });
  c.guarded("optimal transfers", [&] {
    const RelaxationSetup s = jacobi_setup(ProblemSpec::poisson1d(16));
    const SpectralTransfer opt = optimal_transfers(s, 8);
    const TransferBasis b = opt.basis();
    c.bound("block biorthogonality", basis_residuals(b).worst(), 1e-8);
    c.bound("Q_inf_dual A_hat P_inf = 0", (b.Q_dual * s.A_hat * b.P).norm_fro(), 1e-8);
    const MemoryOperators mem(s, b, opt.R_inf, 3);
    c.bound("memory weights vanish at optimal transfers", norm2(mem.W(1)), 1e-8);

    const Index k = 3;
    Vector x = random_vector(rng, 16);
    const Vector zero(16);
    double prev = x.norm(), factor = 0;
    for (int cycle = 0; cycle < 10; ++cycle) {
      x = markovian_cycle(s, b, opt.R_inf, zero, x, k).x_new;
      factor = x.norm() / prev;
      prev = x.norm();
    }
    const double predicted = std::pow(std::abs(opt.Lambda_f.front()), 3.0);
    c.bound("asymptotic factor vs |lambda_{n_c+1}|^k (relative)",
            std::abs(factor - predicted) / predicted, 0.05);

    bool threw = false;
    try {
      optimal_transfers(build_setup(DenseMatrix{{2, -1}, {-1, 2}},
                                    SmootherSpec{SmootherKind::jacobi, 1.0}),
                        1);
    } catch (const PreconditionError&) {
      threw = true;
    }
    c.require("tie across the cut is refused", threw);
  });
}

// ---------------------------------------------------------------- oracle

DenseMatrix ring(Index n) {
  DenseMatrix A(n, n);
  for (Index i = 0; i < n; ++i) {
    A(i, i) = 2.5;
    A(i, (i + 1) % n) = -1.0;
    A(i, (i + n - 1) % n) = -1.0;
  }
  return A;
}

void suite_oracle(Checker& c, Rng& rng) {
  c.guarded("path/matrix duality", [&] {
    Worst w, interp;
    for (Index n : {4, 6, 8}) {
      for (bool is_ring : {false, true}) {
        const DenseMatrix A = is_ring ? ring(n) : dense(ProblemSpec::poisson1d(n));
        const RelaxationSetup s = build_setup(A, SmootherSpec{});
        const CFSplit split = every_other_split(n);
        for (bool random : {false, true}) {
          const TransferBasis b =
              random ? random_basis(rng, n, split.n_coarse()) : canonical_basis(split);
          const PropagationGraph g(s, b, split);
          for (Index k = 1; k <= 4; ++k) {
            const MemoryOperators mem(s, b, b.P_dual, k);
            for (Index f = 0; f < split.n_fine(); ++f) {
              const auto paths = enumerate_fine_paths(g, split.fine()[f], k);
              auto weight = [&](Index origin, Index lag) {
                const auto it = paths.find({origin, lag});
                return it == paths.end() ? Scalar{} : it->second;
              };
              for (Index l = 0; l < k; ++l)
                for (Index cc = 0; cc < split.n_coarse(); ++cc)
                  w(std::abs(weight(split.coarse()[cc], l) - mem.W(l + 1)(f, cc)));
              for (Index ff = 0; ff < split.n_fine(); ++ff)
                w(std::abs(weight(split.fine()[ff], k) - mem.Tqq_power()(f, ff)));
            }
            std::vector<Vector> history;
            for (Index l = 0; l < k; ++l)
              history.push_back(random_vector(rng, split.n_coarse()));
            interp((componentwise_interpolation(g, history, k) -
                    interpolate_memory(mem, history))
                       .norm_inf());
          }
        }
      }
    }
    c.bound("enumerated path weights = matrix-form weights", w.value, 1e-12);
    c.bound("componentwise interpolation = matrix interpolation", interp.value, 1e-12);
  });
  c.guarded("budget", [&] {
    const RelaxationSetup s = build_setup(dense(ProblemSpec::poisson1d(8)), SmootherSpec{});
    const CFSplit split = every_other_split(8);
    const PropagationGraph g(s, canonical_basis(split), split);
    bool threw = false;
    try {
      enumerate_fine_paths(g, split.fine()[0], kOracleMaxDepth + 1);
    } catch (const PreconditionError&) {
      threw = true;
    }
    c.require("enumeration budget enforced", threw);
  });
}

// -------------------------------------------------------------- problems

void suite_problems(Checker& c, Rng&) {
  c.guarded("jacobi convergence on SPD problems", [&] {
    Worst w;
    for (const auto& spec : {ProblemSpec::poisson1d(64), ProblemSpec::poisson2d(8, 8)})
      for (double omega : {0.5, 2.0 / 3.0, 1.0})
        w(spectral_radius(jacobi_setup(spec, omega).T));
    c.bound("max rho(T) for jacobi(omega <= 1)", w.value, 1.0 - 1e-12);
  });
  c.guarded("matrix market round trip", [&] {
    bool same = true;
    for (const auto& spec : {ProblemSpec::poisson1d(8), ProblemSpec::advdiff1d(16, 37.3),
                             ProblemSpec::poisson2d(3, 5)}) {
      const SparseMatrix a = generate(spec);
      std::stringstream io;
      write_matrix_market(a, io);
      same = same && read_matrix_market(io) == a;
    }
    c.require("read(write(A)) == A", same);
  });
}

// ----------------------------------------------------------- determinism

void suite_determinism(Checker& c, Rng&) {
  c.guarded("solve determinism", [&] {
    bool same = true;
    for (Scheme scheme : {Scheme::markovian, Scheme::non_markovian, Scheme::exact}) {
      ExperimentConfig cfg;
      cfg.problem = ProblemSpec::advdiff1d(24, 30.0);
      cfg.scheme = scheme;
      cfg.cycles = 4;
      cfg.seed = 12345;
      same = same && format_csv(run_solve(cfg)) == format_csv(run_solve(cfg));
    }
    c.require("identical config and seed give identical CSV", same);
  });
}

using SuiteFn = void (*)(Checker&, Rng&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"linalg", suite_linalg},           {"relaxation", suite_relaxation},
      {"splitting", suite_splitting},     {"memory", suite_memory},
      {"schemes", suite_schemes},         {"transfer_flow", suite_transfer_flow},
      {"oracle", suite_oracle},           {"problems", suite_problems},
      {"determinism", suite_determinism},
  };
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : registry()) out.push_back(name);
  return out;
}

std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    Checker checker(name);
    Rng rng(seed);
    fn(checker, rng);
    return checker.take();
  }
  throw Error("unknown verification suite '" + name + "'");
}

std::vector<CheckResult> run_all_suites(std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (const auto& name : suite_names()) {
    auto r = run_suite(name, seed);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return !results.empty();
}

std::string format_check(const CheckResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e <= %.1e", r.value, r.tolerance);
  std::string line = std::string(r.passed ? "PASS" : "FAIL") + "  [" + r.suite + "] " +
                     r.name + "  (" + buf + ")";
  if (!r.note.empty()) line += "  " + r.note;
  return line;
}

}  // namespace rbamg
