#pragma once

#include "mlw/grid.hpp"

#include <optional>
#include <vector>

namespace mlw {

/// A positive density w(x) = |x|^{-a} * exp(g_c) on the grid, where g is
/// piecewise constant. Pure grid samples have a = 0; the analytic power
/// |x|^{-a} (1D, singular at the left endpoint) has g = 0. Powers and
/// products stay in this form, so moments of analytic factors are exact and
/// divergent ones come out as +infinity.
class Weight {
 public:
  Weight() = default;

  static Weight constant(const DyadicGrid& g, double c = 1.0);
  /// Strictly positive cell values.
  static Weight sampled(const DyadicGrid& g, const std::vector<double>& values);
  static Weight sampled(const GridFunction& f);
  static Weight from_log(const DyadicGrid& g, std::vector<double> log_values);
  /// |x|^{-a} with exact cell integrals.
  static Weight power(const DyadicGrid& g, double a);
  /// Cell averages of |x|^{-a}; when the first cell is not integrable it is
  /// truncated to the average over its right half.
  static Weight sampled_power(const DyadicGrid& g, double a);

  const DyadicGrid& grid() const { return grid_; }
  double power_exponent() const { return a_; }
  bool is_analytic() const { return a_ != 0.0; }

  Weight pow(double s) const;
  Weight operator*(const Weight& o) const;
  Weight scaled(double c) const;

  /// log of the piecewise-constant factor on cell c.
  double log_factor(size_t c) const { return log_scale_ + (log_cells_.empty() ? 0.0 : log_cells_[c]); }

  /// Integral of w over each cell (+infinity where w is not integrable).
  std::vector<long double> cell_integrals() const;
  /// log of the essential sup / inf of w over each cell (+-infinity allowed).
  std::vector<double> cell_log_sup() const;
  std::vector<double> cell_log_inf() const;
  /// Cell averages, the natural sampled representative of w.
  std::vector<double> cell_averages() const;

  /// Average of w^s over Q; +infinity when divergent.
  ExtendedReal moment(const Cube& q, double s = 1.0) const;
  double ess_sup(const Cube& q) const;
  double ess_inf(const Cube& q) const;
  /// w(Q).
  ExtendedReal mass(const Cube& q) const;

  /// Cellwise agreement to relative tolerance rel.
  bool approx_equal(const Weight& o, double rel = 1e-10) const;

 private:
  DyadicGrid grid_;
  double a_ = 0.0;
  double log_scale_ = 0.0;
  std::vector<double> log_cells_;
};

/// Integral of x^{-b} over [x0, x1), 0 <= x0 < x1.
long double power_integral(long double x0, long double x1, double b);

/// Integral of |f|^p w over the grid cells, summed with compensation.
ExtendedReal weighted_integral(const GridFunction& f, const Weight& w, double p);

/// ∫_Q f dμ / μ(Q); Lebesgue measure when mu is null.
ExtendedReal average(const GridFunction& f, const Cube& q, const Weight* mu = nullptr);
double ess_sup(const GridFunction& f, const Cube& q);
double ess_inf(const GridFunction& f, const Cube& q);

/// (∫ |f|^p w)^{1/p}, also for 0 < p < 1.
ExtendedReal lp_norm(const GridFunction& f, const Weight& w, double p);
/// sup_λ λ w({|f| > λ})^{1/p}, evaluated at the attained levels.
double weak_lp_norm(const GridFunction& f, const Weight& w, double p);

}  // namespace mlw
