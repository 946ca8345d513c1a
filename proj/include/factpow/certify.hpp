#pragma once

// Machine certification of the numeric claims about L, R, P, T, the difference
// sequences and the sigma staircase. Every check is an interval separation
// under the escalation driver; a check passes only when the enclosure decides.

#include <string>
#include <string_view>
#include <vector>

#include "factpow/mpinterval.hpp"

namespace factpow {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  /// Certifying enclosures on success, the first failing point otherwise.
  std::string detail;
};

/// Known suite names in run order.
const std::vector<std::string_view>& certify_suites();

/// Runs one suite; UsageError for an unknown name.
std::vector<CheckResult> run_suite(std::string_view name, const PrecisionConfig& cfg = {});

/// Runs every suite, or only `filter` when non-empty.
std::vector<CheckResult> certify(std::string_view filter = {}, const PrecisionConfig& cfg = {});

}  // namespace factpow
