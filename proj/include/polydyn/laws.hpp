#pragma once

// Seeded property suites over small random instances, with counterexample
// shrinking by deleting positions and then directions.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace polydyn {

struct LawsOptions {
  std::string suite = "all";
  std::size_t size_bound = 3;  // largest number of positions and of directions drawn
  std::size_t samples = 100;
  std::uint64_t seed = 0;
};

struct LawFailure {
  std::string property;
  std::size_t sample = 0;
  std::vector<std::string> inputs;  // shrunk polynomial inputs
  std::string message;
};

struct PropertyResult {
  std::string suite;
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct LawsReport {
  std::string suite;
  std::size_t samples = 0;
  std::size_t size_bound = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  std::vector<LawFailure> failures;  // the first failing sample of each property

  bool ok() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

/// poly-core, poly-algebra, comonoid-cat, dynamics.
std::vector<std::string> law_suites();
/// Property names of a suite, or of every suite for "all".
std::vector<std::string> law_properties(const std::string& suite);
/// Throws Error for an unknown suite.
LawsReport run_laws(const LawsOptions& options);

}  // namespace polydyn
