#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbamg/experiment/config.hpp"
#include "rbamg/linalg/sparse.hpp"
#include "rbamg/splitting.hpp"
#include "rbamg/transfer_flow.hpp"

namespace rbamg {

/// Everything a run needs, assembled from a config.
struct Experiment {
  ExperimentConfig config;
  SparseMatrix A;
  RelaxationSetup setup;
  CFSplit split;
  TransferBasis basis;
  DenseMatrix R;
  Vector b;
  Vector x0;
  Vector x_exact;
};

/// Builds problem, smoother, split, basis and restriction; b and x0 are
/// seeded uniform in [-1, 1]. Module errors are rethrown with the config
/// stage that raised them.
Experiment build_experiment(const ExperimentConfig& config);

struct CycleRecord {
  Index cycle = 0;
  double error_norm = 0;
  double residual_norm = 0;
  std::optional<double> factor;  // empty for cycle 0
  double memory_correction_norm = 0;
  std::optional<double> noise_norm;
};

struct ConvergenceReport {
  std::vector<CycleRecord> cycles;
  double raq_norm = 0;
  double cr_rho = 0;
  double cr_decay = 0;
  double basis_residual = 0;
  double effective_operator_mismatch = 0;  // exact scheme only
};

ConvergenceReport run_solve(const Experiment& experiment);
ConvergenceReport run_solve(const ExperimentConfig& config);

/// `cycle,error_norm,residual_norm,factor` with %.16e numbers.
std::string format_csv(const ConvergenceReport& report);
nlohmann::json report_json(const ExperimentConfig& config,
                           const ConvergenceReport& report);

/// Compatible-relaxation diagnostics and ||R A_hat Q|| for the configured
/// basis and restriction.
nlohmann::json run_diagnose(const ExperimentConfig& config);

/// Flow from the canonical basis of the configured split, with the
/// configured k, basis.max_tau and basis.tol.
FlowState run_flow(const ExperimentConfig& config);
/// `tau,residual,energy_0,...` (one energy column per coarse vector).
std::string format_flow_csv(const FlowState& state);
std::string format_flow_csv(const std::vector<double>& residuals);

/// Writes `text` to `dir/name`, creating `dir`.
std::string write_output(const std::string& dir, const std::string& name,
                         const std::string& text);

}  // namespace rbamg
