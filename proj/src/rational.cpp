#include "mlw/rational.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mlw {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

boost::multiprecision::cpp_int parse_int(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  while (s.size() > 1 && s[0] == '0') s.remove_prefix(1);  // not octal
  const boost::multiprecision::cpp_int v{std::string(s)};
  return neg ? boost::multiprecision::cpp_int(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text));

  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  bool neg = !whole.empty() && whole[0] == '-';
  if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
  if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac) || (whole.empty() && frac.empty()))
    throw std::invalid_argument("not an exact decimal: '" + std::string(text) + "'");

  boost::multiprecision::cpp_int scale = 1;
  for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
  // cpp_int reads a leading 0 as octal
  std::string all = std::string(whole) + std::string(frac);
  all.erase(0, std::min(all.find_first_not_of('0'), all.size()));
  const boost::multiprecision::cpp_int digits{all.empty() ? std::string("0") : all};
  Rational q(digits, scale);
  return neg ? Rational(-q) : q;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

double ExtRational::to_double() const {
  return infinite ? std::numeric_limits<double>::infinity() : mlw::to_double(value);
}

std::string ExtRational::str() const { return infinite ? "inf" : to_string(value); }

bool ExtRational::operator==(const ExtRational& o) const {
  if (infinite || o.infinite) return infinite == o.infinite;
  return value == o.value;
}

ExtRational reciprocal(const Rational& x) {
  if (x < 0) throw std::domain_error("reciprocal of a negative value: " + to_string(x));
  if (x == 0) return ExtRational::inf();
  return ExtRational::of(Rational(1) / x);
}

ExtRational conjugate(const Rational& r) {
  if (r < 1) throw std::domain_error("conjugate exponent needs r >= 1, got " + to_string(r));
  if (r == 1) return ExtRational::inf();
  return ExtRational::of(r / (r - 1));
}

}  // namespace mlw
