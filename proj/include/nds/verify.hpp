#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nds/characters.hpp"

namespace nds::verify {

struct Options {
  std::int64_t qmax = 1000;   // korobov
  std::int64_t trials = 200;  // agreement
  std::int64_t cmax = 2000;   // agreement
  std::uint64_t seed = 0;
  double target_error = 1e-10;
};

struct SuiteReport {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::string detail;  // first failure, or a short summary
  bool passed() const { return failures == 0; }
};

std::vector<std::string> suite_names();

/// Runs one named suite ("all" is expanded by the caller). Throws
/// std::invalid_argument for unknown names.
SuiteReport run_suite(std::string_view name, const Options& options);

/// Small admissible character pairs with real and complex characters, used by
/// the sampled suites.
std::vector<std::pair<DirichletCharacter, DirichletCharacter>> sample_pairs();

}  // namespace nds::verify
