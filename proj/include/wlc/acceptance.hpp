#pragma once

#include <string>
#include <vector>

namespace wlc {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the end-to-end acceptance checks against the default doublet
/// configuration. Each check is self-contained; one failing does not stop the
/// rest.
std::vector<CriterionResult> run_acceptance();

/// "[PASS] #3 title: detail (0.01 s)".
std::string format_criterion(const CriterionResult& c);

}  // namespace wlc
