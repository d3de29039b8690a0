#include "rbamg/experiment/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rbamg/linalg/decomp.hpp"
#include "rbamg/memory.hpp"
#include "rbamg/random.hpp"
#include "rbamg/schemes.hpp"

namespace rbamg {

namespace {

template <class F>
auto stage(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(what + ": " + e.what());
  }
}

CFSplit make_split(const ExperimentConfig& c, Index n) {
  switch (c.split) {
    case SplitStrategy::automatic:
      if (c.problem.kind == ProblemKind::poisson2d)
        return red_black_split(c.problem.nx, c.problem.ny);
      return every_other_split(n);
    case SplitStrategy::every_other: return every_other_split(n);
    case SplitStrategy::stride: return stride_split(n, c.stride, c.offset);
    case SplitStrategy::red_black:
      if (c.problem.kind != ProblemKind::poisson2d)
        throw PreconditionError("red_black split needs a poisson2d grid");
      return red_black_split(c.problem.nx, c.problem.ny);
    case SplitStrategy::explicit_list: return {n, c.coarse};
  }
  throw Error("unknown split strategy");
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

}  // namespace

Experiment build_experiment(const ExperimentConfig& config) {
  validate(config);
  Experiment ex{config, {}, {}, CFSplit(2, {0}), {}, {}, {}, {}, {}};
  ex.A = stage("problem", [&] { return generate(config.problem); });
  const Index n = ex.A.rows();
  const DenseMatrix A = ex.A.to_dense();
  ex.setup = stage("smoother", [&] { return build_setup(A, config.smoother); });
  ex.split = stage("split", [&] { return make_split(config, n); });

  std::optional<SpectralTransfer> spectral;
  auto spectral_transfer = [&]() -> const SpectralTransfer& {
    if (!spectral) spectral = optimal_transfers(ex.setup, ex.split.n_coarse());
    return *spectral;
  };

  ex.basis = stage("basis", [&]() -> TransferBasis {
    switch (config.basis) {
      case BasisKind::canonical: return canonical_basis(ex.split);
      case BasisKind::ideal: return ideal_basis(ex.setup, ex.split);
      case BasisKind::flow: {
        const TransferBasis start = canonical_basis(ex.split);
        return flow_run(start.P, start.P_dual, ex.setup, config.k,
                        config.flow_max_tau, config.flow_tol)
            .basis();
      }
      case BasisKind::optimal: return spectral_transfer().basis();
    }
    throw Error("unknown basis kind");
  });

  ex.R = stage("restriction", [&]() -> DenseMatrix {
    switch (config.restriction) {
      case RestrictionKind::p_dual: return ex.basis.P_dual;
      case RestrictionKind::ideal: return ideal_restriction(ex.setup, ex.split);
      case RestrictionKind::spectral: return spectral_transfer().R_inf;
    }
    throw Error("unknown restriction kind");
  });

  Rng rng(config.seed);
  ex.b = random_vector(rng, n);
  ex.x0 = random_vector(rng, n);
  ex.x_exact = stage("exact solution", [&] { return solve_dense(A, ex.b); });
  return ex;
}

ConvergenceReport run_solve(const Experiment& ex) {
  const auto& c = ex.config;
  ConvergenceReport report;
  report.raq_norm = check_orthogonality_RAQ(ex.R, ex.setup, ex.basis);
  report.basis_residual = basis_residuals(ex.basis).worst();
  const CRDiagnostics cr = stage("diagnostics", [&] {
    return cr_diagnostics(ex.setup, ex.basis, c.k);
  });
  report.cr_rho = cr.rho;
  report.cr_decay = cr.decay;

  Vector x = ex.x0;
  auto record = [&](Index cycle) {
    CycleRecord r;
    r.cycle = cycle;
    r.error_norm = (ex.x_exact - x).norm();
    r.residual_norm = (ex.b - ex.A * x).norm();
    if (cycle > 0) {
      const double prev = report.cycles.back().error_norm;
      r.factor = prev > 0 ? r.error_norm / prev : 0.0;
    }
    return r;
  };
  report.cycles.push_back(record(0));

  CycleOptions options;
  options.exact_solution = ex.x_exact;
  for (Index cycle = 1; cycle <= c.cycles; ++cycle) {
    const CycleResult result = stage(
        to_string(c.scheme) + " cycle " + std::to_string(cycle), [&] {
          return run_cycle(c.scheme, ex.setup, ex.basis, ex.R, ex.b, x, c.k,
                           options);
        });
    x = result.x_new;
    CycleRecord r = record(cycle);
    r.memory_correction_norm = result.memory_correction_norm;
    r.noise_norm = result.noise_norm;
    report.effective_operator_mismatch =
        std::max(report.effective_operator_mismatch,
                 result.effective_operator_mismatch);
    report.cycles.push_back(r);
  }
  return report;
}

ConvergenceReport run_solve(const ExperimentConfig& config) {
  return run_solve(build_experiment(config));
}

std::string format_csv(const ConvergenceReport& report) {
  std::string out = "cycle,error_norm,residual_norm,factor\n";
  for (const auto& r : report.cycles) {
    out += std::to_string(r.cycle) + ',' + sci(r.error_norm) + ',' +
           sci(r.residual_norm) + ',' + (r.factor ? sci(*r.factor) : "") + '\n';
  }
  return out;
}

nlohmann::json report_json(const ExperimentConfig& c,
                           const ConvergenceReport& report) {
  nlohmann::json j;
  j["config"] = {
      {"problem", to_string(c.problem.kind)},
      {"smoother", to_string(c.smoother.kind)},
      {"omega", c.smoother.omega},
      {"split", to_string(c.split)},
      {"basis", to_string(c.basis)},
      {"restriction", to_string(c.restriction)},
      {"scheme", to_string(c.scheme)},
      {"k", c.k},
      {"cycles", c.cycles},
      {"seed", c.seed},
  };
  j["diagnostics"] = {
      {"raq_norm", report.raq_norm},
      {"cr_rho", report.cr_rho},
      {"cr_decay", report.cr_decay},
      {"basis_residual", report.basis_residual},
  };
  if (c.scheme == Scheme::exact)
    j["diagnostics"]["effective_operator_mismatch"] =
        report.effective_operator_mismatch;
  auto& cycles = j["cycles"] = nlohmann::json::array();
  for (const auto& r : report.cycles) {
    nlohmann::json e = {{"cycle", r.cycle},
                        {"error_norm", r.error_norm},
                        {"residual_norm", r.residual_norm}};
    if (r.factor) e["factor"] = *r.factor;
    if (r.cycle > 0) e["memory_correction_norm"] = r.memory_correction_norm;
    if (r.noise_norm) e["noise_norm"] = *r.noise_norm;
    cycles.push_back(e);
  }
  const double e0 = report.cycles.front().error_norm;
  j["final_relative_error"] =
      e0 > 0 ? report.cycles.back().error_norm / e0 : 0.0;
  return j;
}

nlohmann::json run_diagnose(const ExperimentConfig& config) {
  const Experiment ex = build_experiment(config);
  const CRDiagnostics cr = cr_diagnostics(ex.setup, ex.basis, config.k);
  return {
      {"n", ex.setup.size()},
      {"n_coarse", ex.split.n_coarse()},
      {"k", config.k},
      {"basis", to_string(config.basis)},
      {"restriction", to_string(config.restriction)},
      {"cr_rho", cr.rho},
      {"cr_decay", cr.decay},
      {"raq_norm", check_orthogonality_RAQ(ex.R, ex.setup, ex.basis)},
      {"basis_residual", basis_residuals(ex.basis).worst()},
      {"T_spectral_radius", spectral_radius(ex.setup.T)},
  };
}

FlowState run_flow(const ExperimentConfig& config) {
  validate(config);
  const DenseMatrix A =
      stage("problem", [&] { return generate(config.problem); }).to_dense();
  const RelaxationSetup setup =
      stage("smoother", [&] { return build_setup(A, config.smoother); });
  const CFSplit split = stage("split", [&] { return make_split(config, A.rows()); });
  const TransferBasis start = canonical_basis(split);
  return flow_run(start.P, start.P_dual, setup, config.k, config.flow_max_tau,
                  config.flow_tol);
}

std::string format_flow_csv(const FlowState& state) {
  const Index nc = state.P.cols();
  std::string out = "tau,residual";
  for (Index i = 0; i < nc; ++i) out += ",energy_" + std::to_string(i);
  out += '\n';
  for (Index t = 0; t < state.residuals.size(); ++t) {
    out += std::to_string(t) + ',' + sci(state.residuals[t]);
    for (double e : state.energies[t]) out += ',' + sci(e);
    out += '\n';
  }
  return out;
}

std::string format_flow_csv(const std::vector<double>& residuals) {
  std::string out = "tau,residual\n";
  for (Index t = 0; t < residuals.size(); ++t)
    out += std::to_string(t) + ',' + sci(residuals[t]) + '\n';
  return out;
}

std::string write_output(const std::string& dir, const std::string& name,
                         const std::string& text) {
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
  return path;
}

}  // namespace rbamg
