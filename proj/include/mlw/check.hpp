#pragma once

#include <string>
#include <vector>

namespace mlw {

constexpr double kEqualityTolerance = 1e-10;
constexpr double kInequalitySlack = 1e-9;

/// One verified relation lhs <= rhs (or lhs == rhs). margin is rhs - lhs for
/// inequalities and -|lhs - rhs| for equalities.
struct Check {
  std::string anchor;
  std::string description;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  bool pass = false;

  bool operator==(const Check&) const = default;
};

/// lhs <= rhs up to a relative slack; inf <= inf counts as holding.
Check check_le(std::string anchor, std::string description, double lhs, double rhs,
               double slack = kInequalitySlack);
/// |lhs - rhs| <= rel * max(|lhs|, |rhs|).
Check check_eq(std::string anchor, std::string description, double lhs, double rhs,
               double rel = kEqualityTolerance);
/// A boolean fact; lhs/rhs are 1/0 for reporting.
Check check_true(std::string anchor, std::string description, bool ok);

/// Keeps one record per anchor: the first failure seen, otherwise the
/// smallest margin.
void keep_worst(std::vector<Check>& acc, const Check& c);

}  // namespace mlw
