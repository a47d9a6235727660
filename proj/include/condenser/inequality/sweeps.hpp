#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "condenser/inequality/report.hpp"

namespace condenser::inequality {

struct SweepSummary {
  std::string check;
  std::uint64_t seed = 0;
  int trials = 0;
  int violations = 0;
  int skipped = 0;  // precondition not met
  double min_margin = 0.0;
  double min_relative_margin = 0.0;  // margin / max(1, |lhs|, |rhs|)
  std::vector<InequalityReport> failures;  // first few violating reports
};

// Names accepted by random_sweep.
const std::vector<std::string>& sweep_checks();

// Seeded random admissible configurations for one check.
SweepSummary random_sweep(const std::string& check, std::uint64_t seed, int trials);

}  // namespace condenser::inequality
