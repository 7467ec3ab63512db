#pragma once

#include <string>
#include <vector>

#include "districtor/solver.hpp"

namespace districtor {

/// Outcome of reproducing one worked value on the reference fixtures.
struct ReferenceCheck {
  /// Acceptance criterion the value belongs to, 1 to 7.
  int criterion;
  std::string fixture;
  std::string name;
  bool passed;
  std::string detail;
};

/// Recomputes every worked value on FIG1 ... FIG7 and compares it with the
/// closed form. Checks are grouped by criterion, in order.
std::vector<ReferenceCheck> run_reference_examples(const SolveOptions& options = {});

}  // namespace districtor
