#pragma once

#include <string>
#include <vector>

namespace polydyn {

/// Violations found by a checker; empty means everything holds.
struct Report {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

}  // namespace polydyn
