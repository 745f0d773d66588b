#pragma once

#include <string>
#include <vector>

#include "tripletgen/config.hpp"

namespace tripletgen {

struct CheckResult {
  std::string name;
  double value = 0;       // observed error or ratio
  double tolerance = 0;
  bool passed = false;
};

/// Internal consistency of the model at the configured parameters:
///  - closed form with distinct signal/idler vs its symmetric reduction
///  - RK4 integrator vs closed form under the undepleted pump
///  - Manley-Rowe balance of the depleted integrator
///  - coincidence inversion vs its forward map
///  - pump depletion at the configured energies
std::vector<CheckResult> self_consistency_checks(const ExperimentConfig& cfg);

}  // namespace tripletgen
