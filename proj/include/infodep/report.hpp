#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "infodep/core.hpp"

namespace infodep {

/// One named dependence measure with the quantities that produced it.
struct MeasureReport {
  std::string measure;
  DepValue dep;
  std::string interpretation;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> warnings;
  std::map<std::string, std::string> provenance;
};

/// Renders a fraction as a percentage with two decimals, e.g. 0.36 -> "36.00".
inline std::string percent(double fraction) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * fraction);
  return buf;
}

inline std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace infodep
