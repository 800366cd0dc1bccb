#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewlab/ulam.hpp"

namespace skewlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Names of all built-in invariant checks, in execution order.
std::vector<std::string> verification_names();

/// Run the invariant/property suite. `only` restricts to the named
/// subset (unknown names are rejected); `injected` adds an external
/// operator to the column-stochasticity check (used to prove the check
/// can fail).
std::vector<CheckResult> run_verification(
    const std::vector<std::string>& only = {},
    const UlamOperator* injected = nullptr);

}  // namespace skewlab
