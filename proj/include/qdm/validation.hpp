#pragma once

#include <string>
#include <vector>

namespace qdm::validation {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Fast module invariants: Hermiticity of every builder, dark-state
/// exactness, trace preservation, steady-state uniqueness, dressed-basis
/// identities, concurrence and quadrature sanity. Never throws; a check
/// that raises is reported as failed.
std::vector<CheckResult> run_invariant_suite();

}  // namespace qdm::validation
