#include "mlw/check.hpp"

#include <algorithm>
#include <cmath>

namespace mlw {

Check check_le(std::string anchor, std::string description, double lhs, double rhs, double slack) {
  Check c{std::move(anchor), std::move(description), lhs, rhs, 0, false};
  if (std::isinf(lhs) && std::isinf(rhs) && lhs > 0 && rhs > 0) {
    c.pass = true;
    return c;
  }
  c.margin = rhs - lhs;
  const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
  c.pass = lhs <= rhs || (std::isfinite(scale) && lhs - rhs <= slack * scale);
  return c;
}

Check check_eq(std::string anchor, std::string description, double lhs, double rhs, double rel) {
  Check c{std::move(anchor), std::move(description), lhs, rhs, 0, false};
  if (lhs == rhs) {
    c.pass = true;
    return c;
  }
  const double d = std::fabs(lhs - rhs);
  c.margin = -d;
  c.pass = d <= rel * std::max(std::fabs(lhs), std::fabs(rhs));
  return c;
}

Check check_true(std::string anchor, std::string description, bool ok) {
  return Check{std::move(anchor), std::move(description), ok ? 1.0 : 0.0, 1.0, ok ? 0.0 : -1.0, ok};
}

void keep_worst(std::vector<Check>& acc, const Check& c) {
  for (auto& a : acc)
    if (a.anchor == c.anchor) {
      if (a.pass && (!c.pass || c.margin < a.margin)) a = c;
      return;
    }
  acc.push_back(c);
}

}  // namespace mlw
