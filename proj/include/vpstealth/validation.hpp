#pragma once

// Cross-check battery behind `vpstealth validate`: each check evaluates one
// invariant of the toolkit on a small seeded instance.

#include <cstdint>
#include <string>
#include <vector>

namespace vpstealth {

struct ValidationProfile {
  double p = 0.1;      ///< Bob's crossover
  double q = 0.1;      ///< warden's crossover
  double a = 1.0;
  double alpha = 0.5;
  double delta = 0.01;
  double xi = 0.01;
  std::uint64_t seed = 0;
  std::uint64_t draws = 200;
};

struct Check {
  std::string module;
  std::string name;
  bool passed;
  std::string detail;
};

/// Runs every check; a check that throws is reported as failed.
std::vector<Check> run_validation(const ValidationProfile& profile);

}  // namespace vpstealth
