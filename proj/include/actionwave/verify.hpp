#pragma once

// Property suite behind `actionwave verify`: every invariant of the library,
// evaluated on fixed grids plus seeded random samples.

#include <cstdint>
#include <string>
#include <vector>

namespace actionwave {

struct PropertyResult {
  std::string name;
  double worst = 0.0;  // measured worst case
  double limit = 0.0;  // threshold it was compared against
  bool passed = false;
  bool informational = false;  // reported, not counted
};

struct VerifyOptions {
  double tol = 1.0e-12;  // replaces the 1e-12 class tolerances
  std::uint64_t seed = 1;
  int samples = 1000;
};

std::vector<PropertyResult> run_properties(const VerifyOptions& options);

/// One line per property, e.g. "PASS reflection worst=0 limit=0".
std::string format_result(const PropertyResult& result);

}  // namespace actionwave
