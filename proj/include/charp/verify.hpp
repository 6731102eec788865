#pragma once

#include "charp/heights.hpp"

#include <string>
#include <utility>
#include <vector>

namespace charp {

enum class CheckStatus { Pass, Fail, Skip };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

std::string to_string(CheckStatus s);

/// f_{p^n}(z) against f_{p^(n-1)}([p](z)) f_p(z)^(p^(2n-2)), exactly over F_q(t).
/// first_difference counts relative z-digits past the common lead.
Discrepancy check_division_recursion(const Curve& E, int n, long zprec);

/// Exact equality of the two positive parts to their joint precision.
bool same_height(const PositivePart& a, const PositivePart& b);

struct VerifyOptions {
  std::vector<std::pair<std::string, CurvePoint>> points;
  std::vector<Place> places;
  long vprec = 40;
  long zprec = 9;
  bool attest_minimal = false;
  MultipleSearch search;
};

/// Runs the invariant suites for the curve, points and places given.
std::vector<CheckResult> verify_curve(const Curve& E, const VerifyOptions& opts);

}  // namespace charp
