// Command-line experiment runner.
//
//   rbamg solve        --config run.cfg [--out dir] [--seed n]
//   rbamg diagnose     --config run.cfg
//   rbamg flow         --config run.cfg
//   rbamg oracle-check [--seed n]
//   rbamg verify       [--suite name]... [--seed n]
//
// Exit status: 0 success, 2 a verification check failed, 1 any other error.

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "rbamg/experiment/runner.hpp"
#include "rbamg/verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerificationFailed = 2;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
};

rbamg::ExperimentConfig resolve_config(const GlobalOptions& g) {
  rbamg::ExperimentConfig c =
      g.config_path.empty() ? rbamg::ExperimentConfig{} : rbamg::load_config(g.config_path);
  if (g.out_dir) c.output_dir = *g.out_dir;
  if (g.seed) c.seed = *g.seed;
  rbamg::validate(c);
  return c;
}

int report_checks(const std::vector<rbamg::CheckResult>& results) {
  std::size_t failed = 0;
  for (const auto& r : results) {
    std::cout << rbamg::format_check(r) << '\n';
    if (!r.passed) ++failed;
  }
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  return rbamg::all_passed(results) ? kExitOk : kExitVerificationFailed;
}

int cmd_solve(const GlobalOptions& g) {
  const auto config = resolve_config(g);
  const auto report = rbamg::run_solve(config);
  const auto csv = rbamg::write_output(config.output_dir, "convergence.csv",
                                       rbamg::format_csv(report));
  const auto json = rbamg::report_json(config, report);
  const auto sidecar =
      rbamg::write_output(config.output_dir, "report.json", json.dump(2) + "\n");
  std::cout << "scheme " << rbamg::to_string(config.scheme) << ", k=" << config.k
            << ", cycles=" << config.cycles << '\n'
            << "final relative error " << json["final_relative_error"].get<double>()
            << '\n'
            << "wrote " << csv << " and " << sidecar << '\n';
  return kExitOk;
}

int cmd_diagnose(const GlobalOptions& g) {
  const auto config = resolve_config(g);
  const auto json = rbamg::run_diagnose(config);
  std::cout << json.dump(2) << '\n';
  rbamg::write_output(config.output_dir, "diagnostics.json", json.dump(2) + "\n");
  return kExitOk;
}

int cmd_flow(const GlobalOptions& g) {
  const auto config = resolve_config(g);
  try {
    const auto state = rbamg::run_flow(config);
    const auto path =
        rbamg::write_output(config.output_dir, "flow.csv", rbamg::format_flow_csv(state));
    std::cout << "flow stopped after " << state.tau << " steps, residual "
              << state.residuals.back() << "\nwrote " << path << '\n';
  } catch (const rbamg::FlowDivergenceError& e) {
    rbamg::write_output(config.output_dir, "flow.csv",
                        rbamg::format_flow_csv(e.residuals()));
    throw;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level multigrid from relaxation dynamics"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "experiment config file")
      ->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "output directory (overrides output.dir)");
  app.add_option("--seed", g.seed, "random seed (overrides run.seed)");

  auto* solve = app.add_subcommand("solve", "run two-level cycles, write CSV and JSON");
  auto* diagnose = app.add_subcommand("diagnose", "compatible-relaxation diagnostics");
  auto* flow = app.add_subcommand("flow", "run the prolongation flow, write flow.csv");
  auto* oracle = app.add_subcommand("oracle-check", "path-enumeration duality suite");
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  std::vector<std::string> suites;
  verify->add_option("--suite", suites, "run only these suites")
      ->check(CLI::IsMember(rbamg::suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(g);
    if (*diagnose) return cmd_diagnose(g);
    if (*flow) return cmd_flow(g);
    const std::uint64_t seed = g.seed.value_or(0);
    if (*oracle) return report_checks(rbamg::run_suite("oracle", seed));
    if (*verify) {
      if (suites.empty()) return report_checks(rbamg::run_all_suites(seed));
      std::vector<rbamg::CheckResult> results;
      for (const auto& s : suites) {
        auto r = rbamg::run_suite(s, seed);
        results.insert(results.end(), r.begin(), r.end());
      }
      return report_checks(results);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
