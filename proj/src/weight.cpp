#include "mlw/weight.hpp"

#include <algorithm>
#include <map>

namespace mlw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_mesh(const DyadicGrid& a, const DyadicGrid& b) {
  if (!a.same_mesh(b)) throw GridError("weights live on different meshes");
}

}  // namespace

long double power_integral(long double x0, long double x1, double b) {
  if (b == 0.0) return x1 - x0;
  const long double e = 1.0L - (long double)b;
  if (x0 == 0) {
    if (e <= 0) return std::numeric_limits<long double>::infinity();
    return std::pow(x1, e) / e;
  }
  const long double lr = std::log(x1 / x0);
  if (std::fabs(e * lr) < 1e-12L) return std::pow(x0, e) * lr * (1.0L + e * lr / 2);
  return std::pow(x0, e) * std::expm1(e * lr) / e;
}

Weight Weight::constant(const DyadicGrid& g, double c) {
  if (!(c > 0) || !std::isfinite(c)) throw GridError("weights must be positive and finite");
  Weight w;
  w.grid_ = g;
  w.log_scale_ = std::log(c);
  return w;
}

Weight Weight::sampled(const DyadicGrid& g, const std::vector<double>& values) {
  if (values.size() != g.cells()) throw GridError("weight needs one value per cell");
  std::vector<double> logs(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0) || !std::isfinite(values[i])) throw GridError("weight values must be positive and finite");
    logs[i] = std::log(values[i]);
  }
  return from_log(g, std::move(logs));
}

Weight Weight::sampled(const GridFunction& f) { return sampled(f.grid(), f.values()); }

Weight Weight::from_log(const DyadicGrid& g, std::vector<double> log_values) {
  if (log_values.size() != g.cells()) throw GridError("weight needs one value per cell");
  for (double x : log_values)
    if (!std::isfinite(x)) throw GridError("weight log-values must be finite");
  Weight w;
  w.grid_ = g;
  w.log_cells_ = std::move(log_values);
  return w;
}

Weight Weight::power(const DyadicGrid& g, double a) {
  if (g.dim != 1 && a != 0.0) throw GridError("analytic power weights are one-dimensional");
  if (!std::isfinite(a)) throw GridError("power exponent must be finite");
  Weight w;
  w.grid_ = g;
  w.a_ = a;
  return w;
}

Weight Weight::sampled_power(const DyadicGrid& g, double a) {
  if (g.dim != 1) throw GridError("sampled power weights are one-dimensional");
  const size_t n = g.cells();
  const long double h = 1.0L / (long double)n;
  std::vector<double> v(n);
  for (size_t c = 0; c < n; ++c) {
    long double x0 = h * c, x1 = h * (c + 1);
    if (c == 0 && a >= 1.0) x0 = h / 2;
    v[c] = double(power_integral(x0, x1, a) / (x1 - x0));
  }
  return sampled(g, v);
}

Weight Weight::pow(double s) const {
  Weight w = *this;
  w.a_ = a_ * s;
  w.log_scale_ = log_scale_ * s;
  for (double& x : w.log_cells_) x *= s;
  return w;
}

Weight Weight::operator*(const Weight& o) const {
  require_same_mesh(grid_, o.grid_);
  Weight w = *this;
  w.a_ = a_ + o.a_;
  w.log_scale_ = log_scale_ + o.log_scale_;
  if (w.log_cells_.empty()) {
    w.log_cells_ = o.log_cells_;
  } else if (!o.log_cells_.empty()) {
    for (size_t i = 0; i < w.log_cells_.size(); ++i) w.log_cells_[i] += o.log_cells_[i];
  }
  return w;
}

Weight Weight::scaled(double c) const {
  if (!(c > 0) || !std::isfinite(c)) throw GridError("scale must be positive");
  Weight w = *this;
  w.log_scale_ += std::log(c);
  return w;
}

std::vector<long double> Weight::cell_integrals() const {
  const size_t n = grid_.cells();
  const long double h = (long double)grid_.cell_volume();
  std::vector<long double> out(n);
  if (a_ == 0.0) {
    for (size_t c = 0; c < n; ++c) out[c] = std::exp((long double)log_factor(c)) * h;
    return out;
  }
  for (size_t c = 0; c < n; ++c) {
    const long double base = power_integral(h * c, h * (c + 1), a_);
    out[c] = std::isinf(base) ? base : std::exp((long double)log_factor(c)) * base;
  }
  return out;
}

std::vector<double> Weight::cell_log_sup() const {
  const size_t n = grid_.cells();
  const double h = grid_.cell_volume();
  std::vector<double> out(n);
  for (size_t c = 0; c < n; ++c) {
    double p = 0;
    if (a_ > 0) p = c == 0 ? kInf : -a_ * std::log(h * double(c));
    if (a_ < 0) p = -a_ * std::log(h * double(c + 1));
    out[c] = log_factor(c) + p;
  }
  return out;
}

std::vector<double> Weight::cell_log_inf() const {
  const size_t n = grid_.cells();
  const double h = grid_.cell_volume();
  std::vector<double> out(n);
  for (size_t c = 0; c < n; ++c) {
    double p = 0;
    if (a_ > 0) p = -a_ * std::log(h * double(c + 1));
    if (a_ < 0) p = c == 0 ? -kInf : -a_ * std::log(h * double(c));
    out[c] = log_factor(c) + p;
  }
  return out;
}

std::vector<double> Weight::cell_averages() const {
  const auto ints = cell_integrals();
  const long double h = (long double)grid_.cell_volume();
  std::vector<double> out(ints.size());
  for (size_t c = 0; c < ints.size(); ++c) out[c] = double(ints[c] / h);
  return out;
}

ExtendedReal Weight::moment(const Cube& q, double s) const {
  const Weight ws = pow(s);
  CompensatedSum acc;
  const auto ints = ws.cell_integrals();
  for (size_t c : cells_of(grid_, q)) {
    if (std::isinf(ints[c])) return ExtendedReal::infinity();
    acc.add(ints[c]);
  }
  return ExtendedReal(double(acc.value() / (long double)volume(grid_, q)));
}

ExtendedReal Weight::mass(const Cube& q) const { return ExtendedReal(moment(q).value() * volume(grid_, q)); }

double Weight::ess_sup(const Cube& q) const {
  const auto ls = cell_log_sup();
  double m = -kInf;
  for (size_t c : cells_of(grid_, q)) m = std::max(m, ls[c]);
  return std::exp(m);
}

double Weight::ess_inf(const Cube& q) const {
  const auto li = cell_log_inf();
  double m = kInf;
  for (size_t c : cells_of(grid_, q)) m = std::min(m, li[c]);
  return std::exp(m);
}

bool Weight::approx_equal(const Weight& o, double rel) const {
  if (!grid_.same_mesh(o.grid_)) return false;
  if (std::fabs(a_ - o.a_) <= 1e-12 * std::max(1.0, std::fabs(a_))) {
    for (size_t c = 0; c < grid_.cells(); ++c) {
      const double d = log_factor(c) - o.log_factor(c);
      if (!(std::fabs(d) <= rel)) return false;
    }
    return true;
  }
  const auto x = cell_averages(), y = o.cell_averages();
  for (size_t c = 0; c < x.size(); ++c) {
    if (std::isinf(x[c]) || std::isinf(y[c])) {
      if (x[c] != y[c]) return false;
      continue;
    }
    if (std::fabs(x[c] - y[c]) > rel * std::max(std::fabs(x[c]), std::fabs(y[c]))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

ExtendedReal weighted_integral(const GridFunction& f, const Weight& w, double p) {
  require_same_mesh(f.grid(), w.grid());
  const auto ints = w.cell_integrals();
  CompensatedSum acc;
  for (size_t c = 0; c < ints.size(); ++c) {
    const double v = std::fabs(f[c]);
    if (v == 0) continue;
    if (std::isinf(ints[c])) return ExtendedReal::infinity();
    acc.add(std::pow((long double)v, (long double)p) * ints[c]);
  }
  return ExtendedReal(double(acc.value()));
}

ExtendedReal average(const GridFunction& f, const Cube& q, const Weight* mu) {
  const auto cells = cells_of(f.grid(), q);
  if (!mu) {
    CompensatedSum acc;
    for (size_t c : cells) acc.add(f[c]);
    const double v = double(acc.value() / (long double)cells.size());
    if (v < 0) throw std::domain_error("average of a signed function is negative; use abs()");
    return ExtendedReal(v);
  }
  require_same_mesh(f.grid(), mu->grid());
  const auto ints = mu->cell_integrals();
  CompensatedSum num, den;
  bool num_inf = false;
  for (size_t c : cells) {
    if (std::isinf(ints[c])) {
      if (f[c] != 0) num_inf = true;
      den.add(ints[c]);
      continue;
    }
    num.add(f[c] * ints[c]);
    den.add(ints[c]);
  }
  if (std::isinf(den.value())) {
    if (num_inf) throw std::domain_error("average against a measure of infinite mass is undefined");
    return ExtendedReal(0.0);
  }
  const double v = double(num.value() / den.value());
  if (v < 0) throw std::domain_error("average of a signed function is negative; use abs()");
  return ExtendedReal(v);
}

double ess_sup(const GridFunction& f, const Cube& q) {
  double m = -kInf;
  for (size_t c : cells_of(f.grid(), q)) m = std::max(m, f[c]);
  return m;
}

double ess_inf(const GridFunction& f, const Cube& q) {
  double m = kInf;
  for (size_t c : cells_of(f.grid(), q)) m = std::min(m, f[c]);
  return m;
}

ExtendedReal lp_norm(const GridFunction& f, const Weight& w, double p) {
  if (!(p > 0)) throw std::domain_error("lp_norm needs p > 0");
  return weighted_integral(f, w, p).pow(1.0 / p);
}

double weak_lp_norm(const GridFunction& f, const Weight& w, double p) {
  if (!(p > 0)) throw std::domain_error("weak_lp_norm needs p > 0");
  require_same_mesh(f.grid(), w.grid());
  const auto ints = w.cell_integrals();
  // mass of each level set, then a sweep from the top level down
  std::map<double, long double, std::greater<double>> levels;
  for (size_t c = 0; c < ints.size(); ++c) {
    const double v = std::fabs(f[c]);
    if (v > 0) levels[v] += ints[c];
  }
  long double mass = 0;
  double best = 0;
  for (const auto& [lvl, m] : levels) {
    mass += m;
    if (std::isinf(mass)) return kInf;
    best = std::max(best, lvl * double(std::pow(mass, 1.0L / p)));
  }
  return best;
}

}  // namespace mlw
