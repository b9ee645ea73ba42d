#include "mlw/bmo.hpp"

#include <algorithm>
#include <cmath>

namespace mlw {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double d(const Rational& q) { return to_double(q); }

// avg_Q (exp(|x|/lambda) - 1) for the deviations x
double luxemburg_phi(const std::vector<double>& dev, double lambda) {
  CompensatedSum s;
  for (double x : dev) s.add(std::expm1(x / lambda));
  return double(s.value() / (long double)dev.size());
}

}  // namespace

BmoFunction bmo_norms(const GridFunction& b, const DyadicGrid& grid) {
  if (!b.grid().same_mesh(grid)) throw GridError("function and grid meshes differ");
  BmoFunction out{b, 0, 0};
  std::vector<double> dev;
  for_each_cube(grid, [&](const Cube& q) {
    const auto cells = cells_of(grid, q);
    CompensatedSum mean;
    for (size_t c : cells) mean.add(b[c]);
    const long double bq = mean.value() / (long double)cells.size();
    dev.resize(cells.size());
    CompensatedSum mad;
    double top = 0;
    for (size_t k = 0; k < cells.size(); ++k) {
      dev[k] = double(std::fabs((long double)b[cells[k]] - bq));
      mad.add(dev[k]);
      top = std::max(top, dev[k]);
    }
    const double osc = double(mad.value() / (long double)cells.size());
    out.bmo = std::max(out.bmo, osc);
    if (top == 0) return;
    if (out.bmo_exp > 0 && luxemburg_phi(dev, out.bmo_exp) <= 1) return;
    // phi(lambda) >= osc/lambda, so lambda >= osc; top/ln2 is always feasible
    double lo = osc, hi = top / kLn2;
    while (hi - lo > 1e-8 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (luxemburg_phi(dev, mid) <= 1)
        hi = mid;
      else
        lo = mid;
    }
    out.bmo_exp = std::max(out.bmo_exp, hi);
  });
  out.bmo_exp = std::max(out.bmo_exp, out.bmo);
  return out;
}

BmoFunction normalize_bmo(const BmoFunction& b, const DyadicGrid& grid) {
  if (!(b.bmo_exp > 0)) throw std::invalid_argument("cannot normalize a constant function");
  std::vector<double> v(b.b.values());
  for (double& x : v) x /= b.bmo_exp;
  return bmo_norms(GridFunction(b.b.grid(), std::move(v)), grid);
}

ExpWeightReport exp_weight_check(const BmoFunction& b, double lambda, const Rational& q, const DyadicGrid& grid) {
  if (q <= 1) throw std::invalid_argument("exponential weight check needs q > 1");
  const double limit = std::min(1.0, d(q - 1));
  if (std::fabs(lambda) * b.bmo_exp > limit * (1 + 1e-12))
    throw std::invalid_argument("|lambda| ||b|| exceeds min(1, q-1)");
  ExpWeightReport rep;
  rep.constant = scalar_constant(gen_exp_bmo(b.b, lambda), ScalarClass::A(q), nullptr, grid).value();
  rep.bound = std::pow(4.0, std::fabs(lambda) * b.bmo_exp);
  rep.check = check_le("exp-weight.bound", "[e^{lambda b}]_{A_q} <= 4^{|lambda| ||b||}", rep.constant, rep.bound);
  return rep;
}

ReverseHolderResult reverse_holder_eta(const Weight& v, const DyadicGrid& grid, double cap) {
  if (!(cap > 1)) throw std::invalid_argument("reverse Hoelder cap must exceed 1");
  double top = -std::numeric_limits<double>::infinity();
  for (size_t c = 0; c < grid.cells(); ++c) top = std::max(top, v.log_factor(c));
  const Weight vn = v.scaled(std::exp(-top));
  const CubeIntegrator base(grid, vn.cell_integrals());
  const long double ln2 = std::log(2.0L);

  auto feasible = [&](double eta) {
    const CubeIntegrator pw(grid, vn.pow(eta).cell_integrals());
    bool ok = true;
    for_each_cube(grid, [&](const Cube& q) {
      const long double a = pw.over(q), b0 = base.over(q);
      if (std::isinf(a)) {
        ok = false;
      } else if (a > 0 && b0 > 0 && !std::isinf(b0)) {
        const long double vol = volume(grid, q);
        ok = std::log(a / vol) / eta - std::log(b0 / vol) <= ln2;
      }
      return ok;
    });
    return ok;
  };

  ReverseHolderResult res;
  if (feasible(cap)) {
    res.eta = cap;
  } else {
    double lo = 1, hi = cap;
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? lo : hi) = mid;
    }
    res.eta = lo;
  }
  res.eta_prime = res.eta > 1 ? res.eta / (res.eta - 1) : std::numeric_limits<double>::infinity();
  return res;
}

CommutatorReport commutator_limits(const VectorWeight& vv, const DyadicGrid& grid) {
  if (check_order(vv.cfg.r, vv.cfg.p) != Order::Strict)
    throw ExponentError("commutator perturbation needs r strictly below s");
  const auto dx = derived(vv.cfg);
  const size_t m = vv.m();
  CommutatorReport rep;
  double eta = reverse_holder_eta(product_weight(vv).pow(d(Rational(1) / (dx.inv_delta[m] * dx.p()))), grid).eta;
  for (size_t i = 0; i < m; ++i)
    eta = std::min(eta, reverse_holder_eta(vv.weights[i].pow(-d(Rational(1) / (dx.inv_delta[i] * vv.cfg.p[i]))), grid).eta);
  rep.eta_prime = eta > 1 ? eta / (eta - 1) : std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < m; ++i) {
    const Rational a = dx.inv_delta[i];
    const Rational b = dx.inv_delta[m] * dx.p() / vv.cfg.p[i];
    rep.gamma_max.push_back(d(std::min(a, b)) / rep.eta_prime);
  }
  rep.v_constant = ml_constant(vv, grid).value();
  return rep;
}

CommutatorResult commutator_perturb(const VectorWeight& vv, const std::vector<BmoFunction>& b,
                                    const std::vector<double>& gamma, const DyadicGrid& grid) {
  const size_t m = vv.m();
  if (b.size() != m || gamma.size() != m) throw std::invalid_argument("need one b_i and one gamma_i per weight");
  for (const auto& bi : b)
    if (std::fabs(bi.bmo_exp - 1) > 1e-6) throw std::invalid_argument("b_i must be normalized to ||b_i|| = 1");
  CommutatorReport rep = commutator_limits(vv, grid);
  for (size_t i = 0; i < m; ++i)
    if (std::fabs(gamma[i]) * b[i].bmo_exp > rep.gamma_max[i] * (1 + 1e-12))
      throw std::invalid_argument("gamma_" + std::to_string(i + 1) + " exceeds its admissible bound");

  const auto dx = derived(vv.cfg);
  std::vector<Weight> ws;
  double exponent = d(dx.S());
  for (size_t i = 0; i < m; ++i) {
    const double si = d(vv.cfg.p[i]);
    ws.push_back(vv.weights[i] * gen_exp_bmo(b[i].b, -gamma[i] * si));
    exponent += 2 * std::fabs(gamma[i]) * b[i].bmo_exp;

    // the exponential-weight step of the chain for this component
    const Rational q = 1 + dx.inv_delta[i] * vv.cfg.p[i] / (dx.inv_delta[m] * dx.p());
    const double lambda = -gamma[i] * si * rep.eta_prime / (d(dx.inv_delta[m]) * d(dx.p()));
    if (std::isfinite(lambda)) {
      auto e = exp_weight_check(b[i], lambda, q, grid).check;
      e.anchor = "commutator.exp-weight";
      rep.checks.push_back(e);
    }
  }
  VectorWeight wv(std::move(ws), vv.cfg);
  rep.w_constant = ml_constant(wv, grid).value();
  rep.checks.push_back(check_le("commutator.weight-bound", "[w] <= 2^{(1-r)/r + 2 sum |gamma_i|} [v]", rep.w_constant,
                                std::pow(2.0, exponent) * rep.v_constant));
  return CommutatorResult{std::move(wv), std::move(rep)};
}

}  // namespace mlw
