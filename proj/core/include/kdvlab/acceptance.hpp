#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kdvlab::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs every acceptance criterion, printing one pass/fail line per
/// criterion to `progress`. Implemented in the verification library.
std::vector<CriterionResult> run_all(std::ostream& progress);

}  // namespace kdvlab::acceptance
