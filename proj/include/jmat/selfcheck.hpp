#pragma once

#include "jmat/basis.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace jmat {

struct SuiteResult {
  std::string name;
  int checks = 0;
  /// First failing assertion with the values involved.
  std::optional<std::string> first_failure;
  double seconds = 0.0;
  bool passed() const noexcept { return !first_failure; }
};

/// Substitutable analytic builders, so a harness can inject a faulty one and
/// confirm the oracle suite catches it.
struct SelfcheckHooks {
  std::function<TridiagonalMatrix(int, const ChannelSpec&)> overlap = overlap_matrix;
  std::function<TridiagonalMatrix(int, const ChannelSpec&)> h0 = h0_matrix;
};

SuiteResult check_special_numerics();
SuiteResult check_matrix_elements(const SelfcheckHooks& hooks = {});
SuiteResult check_kinematics();
SuiteResult check_deformation();
SuiteResult check_scattering();
SuiteResult check_resonance();

/// All suites in order, one line per suite on `log`.
std::vector<SuiteResult> run_selfcheck(std::ostream& log, const SelfcheckHooks& hooks = {});

} // namespace jmat
