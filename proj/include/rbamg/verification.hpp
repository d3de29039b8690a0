#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rbamg {

/// One measured quantity against its bound. `value <= tolerance` passes.
struct CheckResult {
  std::string suite;
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool passed = false;
  std::string note;
};

/// Suites: linalg, relaxation, splitting, memory, schemes, transfer_flow,
/// oracle, problems, determinism.
std::vector<std::string> suite_names();

/// Throws Error for an unknown suite. A check that throws is recorded as
/// failed with the message as note.
std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed = 0);
std::vector<CheckResult> run_all_suites(std::uint64_t seed = 0);

bool all_passed(const std::vector<CheckResult>& results);
std::string format_check(const CheckResult& result);

}  // namespace rbamg
