#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rbamg/problems.hpp"
#include "rbamg/relaxation.hpp"
#include "rbamg/schemes.hpp"

namespace rbamg {

enum class SplitStrategy { automatic, every_other, stride, red_black, explicit_list };
enum class BasisKind { canonical, ideal, flow, optimal };
enum class RestrictionKind { p_dual, ideal, spectral };

std::string to_string(SplitStrategy s);
std::string to_string(BasisKind b);
std::string to_string(RestrictionKind r);

/// One experiment. Config files are flat `section.key = value` lines;
/// `#` starts a comment. Keys:
///
///   problem.kind        poisson1d | poisson2d | advdiff1d | file
///   problem.n, problem.nx, problem.ny, problem.peclet, problem.file
///   smoother.kind       richardson | jacobi | gauss_seidel_forward
///   smoother.omega
///   split.strategy      auto | every_other | stride | red_black | explicit
///   split.stride, split.offset
///   split.coarse        comma separated 0-based indices (explicit)
///   basis.kind          canonical | ideal | flow | optimal
///   basis.max_tau, basis.tol   (flow)
///   restriction.kind    p_dual | ideal | spectral
///   scheme.kind         markovian | semi_markovian | non_markovian | exact
///   scheme.k
///   run.cycles, run.seed
///   output.dir
///
/// A key that is not listed here is an error.
struct ExperimentConfig {
  ProblemSpec problem;
  SmootherSpec smoother;

  SplitStrategy split = SplitStrategy::automatic;
  Index stride = 2;
  Index offset = 1;
  std::vector<Index> coarse;

  BasisKind basis = BasisKind::canonical;
  Index flow_max_tau = 500;
  double flow_tol = 1e-10;

  RestrictionKind restriction = RestrictionKind::p_dual;
  Scheme scheme = Scheme::markovian;
  Index k = 3;

  Index cycles = 10;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
};

/// Throws ParseError (with line number) on malformed lines, unknown keys
/// and invalid values; Error if a referenced file does not exist.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// Checks cross-field constraints (k >= 1, problem file exists, ...).
void validate(const ExperimentConfig& config);

/// Canonical `section.key = value` text; parse_config(to_text(c)) == c.
std::string to_text(const ExperimentConfig& config);

}  // namespace rbamg
