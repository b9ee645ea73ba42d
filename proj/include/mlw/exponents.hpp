#pragma once

#include "mlw/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlw {

struct ExponentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Order { Strict, Weak, None };
std::string to_string(Order o);

/// m exponents p_i and m+1 exponents r_i, all finite and >= 1.
struct ExponentConfig {
  std::vector<Rational> p;
  std::vector<Rational> r;

  size_t m() const { return p.size(); }
  /// Throws ExponentError on bad lengths or entries below 1.
  void validate() const;
};

/// r <= p in the multilinear sense: r_i <= p_i for i <= m and r_{m+1}' > p.
/// Strict additionally asks r_i < p_i for every i <= m.
Order check_order(const std::vector<Rational>& r, const std::vector<Rational>& p);

/// Everything is stored as a reciprocal so that infinite delta_i and a
/// non-positive 1/p_{m+1} stay exact.
struct DerivedExponents {
  size_t m = 0;
  Rational inv_rbar;                 // sum_{i<=m+1} 1/r_i
  Rational rbar;
  Rational inv_p;                    // sum_{i<=m} 1/p_i
  Rational inv_pm1;                  // 1 - 1/p, signed
  std::vector<Rational> inv_delta;   // m+1 entries, 1/r_i - 1/p_i
  std::vector<Rational> inv_theta;   // m entries, S - 1/delta_i
  Rational inv_rho;                  // 1/delta_m + 1/delta_{m+1}

  /// S = (1 - rbar)/rbar, which also equals the sum of the 1/delta_i.
  Rational S() const { return inv_rbar - 1; }
  Rational p() const { return Rational(1) / inv_p; }
  ExtRational delta(size_t i) const { return reciprocal(inv_delta.at(i)); }
  Rational theta(size_t i) const { return Rational(1) / inv_theta.at(i); }
  Rational rho() const { return Rational(1) / inv_rho; }
};

/// Requires check_order(cfg.r, cfg.p) to be Weak or Strict.
DerivedExponents derived(const ExponentConfig& cfg);

struct NaturalExponents {
  std::vector<Rational> p;  // p_i = r_i / rbar
  Rational p_total;         // 1/p = 1 - rbar/r_{m+1}
};

NaturalExponents natural_exponents(const std::vector<Rational>& r);

/// sum_i 1/min(r_i, 2) < 2, for r_i > 1.
bool bht_admissible(const std::vector<Rational>& r);

/// r_i = 2/(1 + gamma_i) for gamma on the open simplex face.
std::vector<Rational> gamma_to_r(const std::vector<Rational>& gamma);

/// Open interval (lower, upper); empty when lower >= upper.
struct Interval {
  Rational lower;
  Rational upper;
  bool empty() const { return lower >= upper; }
  bool contains(double a) const { return to_double(lower) < a && a < to_double(upper); }
};

/// Range of a with (|x|^{-a}, ..., |x|^{-a}) in A_{q,r} on the line:
/// 1 - min_i q_i/r_i < a < 1 - q/r_{m+1}'. Requires r strictly below q.
Interval power_weight_interval(const std::vector<Rational>& q, const std::vector<Rational>& r);

/// Bilinear Hilbert transform power-weight range, scalar form and, when s is
/// given, the vector-valued form.
Interval bh_power_interval(const std::vector<Rational>& p,
                           const std::optional<std::vector<Rational>>& s = std::nullopt);

struct Step1Parameters {
  Rational s;
  Rational s_m;
  Rational tau;
};

/// Off-diagonal parameters when only the last exponent moves from p_m to q_m.
Step1Parameters step1_parameters(const std::vector<Rational>& p, const std::vector<Rational>& r,
                                 const Rational& q_m);

struct Certificate {
  std::string name;
  Rational lhs;
  std::string relation;  // "<=", "<" or ">"
  Rational rhs;
  bool holds = false;
};

struct PathStep {
  std::vector<Rational> from;
  std::vector<Rational> to;
  size_t changed_index = 0;  // zero-based
  std::vector<Certificate> certificates;
};

/// One-coordinate steps from p to q. Indices with p_i > q_i move first
/// (stable order); steps with p_i = q_i are skipped.
std::vector<PathStep> extrapolation_path(const std::vector<Rational>& p,
                                         const std::vector<Rational>& q,
                                         const std::vector<Rational>& r);

}  // namespace mlw
