#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace mlw {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Parses "n", "n/d" or an exact decimal such as "-0.125".
/// Exponent notation, inf and nan are rejected.
Rational parse_rational(std::string_view text);

/// Comma-separated list of rationals ("3,3" or "1/2,4/3").
std::vector<Rational> parse_rational_list(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// A rational or +infinity. Used for conjugate exponents and for the
/// delta_i, which become infinite when 1/delta_i = 0.
struct ExtRational {
  bool infinite = false;
  Rational value;

  static ExtRational inf() { return {true, Rational(0)}; }
  static ExtRational of(const Rational& q) { return {false, q}; }

  double to_double() const;
  std::string str() const;
  bool operator==(const ExtRational& o) const;
};

/// 1/x with 1/0 = +infinity. Requires x >= 0.
ExtRational reciprocal(const Rational& x);

/// Hoelder conjugate r' = r/(r-1), with 1' = +infinity. Requires r >= 1.
ExtRational conjugate(const Rational& r);

}  // namespace mlw
