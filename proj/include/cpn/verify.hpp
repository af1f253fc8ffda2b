#pragma once

#include <string>
#include <vector>

#include "cpn/frames.hpp"
#include "cpn/presets.hpp"

namespace cpn {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string topic;  // what the check exercises
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;       // all must pass
  std::vector<CheckResult> diagnostics;  // reported only
  std::vector<std::string> notes;
  double seconds = 0.0;
  bool pass() const;
};

struct VerificationReport {
  std::vector<CriterionResult> criteria;
  bool all_pass() const;
};

inline constexpr int kCriterionCount = 10;
inline constexpr unsigned kSeed = 20240531;

CriterionResult run_criterion(int id);
/// ids empty means all criteria.
VerificationReport run_acceptance(const std::vector<int>& ids = {});

/// Per-solution checks: field equations, conservation, closedness, frames, GCR, charge.
CriterionResult verify_solution(const CpnSolution& sol, double tol = 1e-8);

/// Text rendering: one PASS/FAIL line per criterion followed by indented detail lines.
std::string render(const CriterionResult& c);

}  // namespace cpn
