#include "mlw/weights.hpp"

#include "mlw/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

namespace mlw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double d(const Rational& q) { return to_double(q); }

std::vector<double> scaled_logs(std::vector<double> v, double s) {
  for (double& x : v) x = x == 0 ? 0 : x * s;
  return v;
}

ExtendedReal from_log(double lg) {
  if (lg == kInf) return ExtendedReal::infinity();
  return ExtendedReal(std::exp(lg));
}

}  // namespace

VectorWeight::VectorWeight(std::vector<Weight> w, ExponentConfig c) : weights(std::move(w)), cfg(std::move(c)) {
  cfg.validate();
  if (weights.size() != cfg.m())
    throw std::invalid_argument("vector weight has " + std::to_string(weights.size()) + " components, m = " +
                                std::to_string(cfg.m()));
  for (const auto& x : weights)
    if (!x.grid().same_mesh(weights.front().grid())) throw GridError("components live on different meshes");
}

ScalarClass ScalarClass::A(const Rational& q) {
  if (q < 1) throw ExponentError("A_q needs q >= 1");
  ScalarClass c;
  c.kind = q == 1 ? ClassKind::A1 : ClassKind::Ap;
  c.p = q;
  return c;
}

ScalarClass ScalarClass::Apr(const Rational& p, double r) {
  if (p < 1 || !(r > 0)) throw ExponentError("A_{p,r} needs p >= 1 and r > 0");
  ScalarClass c;
  c.kind = ClassKind::Apr;
  c.p = p;
  c.r = r;
  return c;
}

namespace engine {

double log_product(const DyadicGrid& grid, const Cube& q, std::span<const AverageTerm> avgs,
                   std::span<const SupTerm> sups) {
  double acc = 0;
  for (const auto& t : avgs) {
    if (t.exponent == 0) continue;
    const long double num = t.num->over(q);
    if (std::isinf(num)) return kInf;
    if (num <= 0) return -kInf;
    const long double den = t.den ? t.den->over(q) : (long double)volume(grid, q);
    acc += t.exponent * double(std::log(num) - std::log(den));
  }
  for (const auto& t : sups) {
    if (t.exponent == 0) continue;
    const double m = t.log_values->over(q);
    if (m == kInf) return kInf;
    acc += t.exponent * m;
  }
  return acc;
}

SupResult sup_product(const DyadicGrid& grid, std::span<const AverageTerm> avgs, std::span<const SupTerm> sups) {
  for (const auto& t : avgs)
    if (t.exponent < 0) throw std::invalid_argument("engine exponents must be nonnegative");
  for (const auto& t : sups)
    if (t.exponent < 0) throw std::invalid_argument("engine exponents must be nonnegative");
  double best = -kInf;
  Cube arg = root_cube(grid);
  for_each_cube(grid, [&](const Cube& q) {
    const double v = log_product(grid, q, avgs, sups);
    if (v > best) {
      best = v;
      arg = q;
    }
    return best != kInf;
  });
  return SupResult{best == -kInf ? ExtendedReal(0.0) : from_log(best), arg};
}

}  // namespace engine

ExtendedReal scalar_constant(const Weight& v, const ScalarClass& cls, const Weight* mu, const DyadicGrid& grid) {
  if (!v.grid().same_mesh(grid) || (mu && !mu->grid().same_mesh(grid)))
    throw GridError("weight and grid meshes differ");
  const Weight one = Weight::constant(grid);
  const Weight& m = mu ? *mu : one;
  std::optional<CubeIntegrator> den;
  if (mu) den.emplace(grid, mu->cell_integrals());
  const CubeIntegrator* dp = den ? &*den : nullptr;

  std::vector<CubeIntegrator> ints;
  ints.reserve(2);
  std::vector<engine::AverageTerm> avgs;
  std::optional<CubeMaximum> sup;
  std::vector<engine::SupTerm> sups;

  auto avg = [&](const Weight& u, double e) {
    ints.emplace_back(grid, (u * m).cell_integrals());
    avgs.push_back({&ints.back(), dp, e});
  };
  auto esssup_inv = [&](double s) {  // esssup v^{-s}
    sup.emplace(grid, scaled_logs(v.cell_log_inf(), -s));
    sups.push_back({&*sup, 1.0});
  };

  switch (cls.kind) {
    case ClassKind::A1:
      avg(v, 1);
      esssup_inv(1);
      break;
    case ClassKind::Ap: {
      if (cls.p == 1) {
        avg(v, 1);
        esssup_inv(1);
        break;
      }
      const Rational pc = cls.p / (cls.p - 1);
      avg(v, 1);
      avg(v.pow(d(1 - pc)), d(cls.p - 1));
      break;
    }
    case ClassKind::Apr: {
      avg(v.pow(cls.r), 1);
      if (cls.p == 1) {
        esssup_inv(cls.r);
      } else {
        const double pc = d(cls.p / (cls.p - 1));
        avg(v.pow(-pc), cls.r / pc);
      }
      break;
    }
  }
  return engine::sup_product(grid, avgs, sups).value;
}

Weight product_weight(const VectorWeight& wv) {
  Rational inv_p = 0;
  for (const auto& pi : wv.cfg.p) inv_p += Rational(1) / pi;
  Weight w = Weight::constant(wv.grid());
  for (size_t i = 0; i < wv.m(); ++i) w = w * wv.weights[i].pow(d(Rational(1) / (inv_p * wv.cfg.p[i])));
  return w;
}

ClassTerms ml_terms(const VectorWeight& wv, const DyadicGrid& grid) {
  if (!wv.grid().same_mesh(grid)) throw GridError("weight and grid meshes differ");
  const auto dx = derived(wv.cfg);
  const size_t m = wv.m();
  ClassTerms t;
  t.grid = grid;
  t.ints.reserve(m + 1);
  t.maxs.reserve(m);

  // w^{delta_{m+1}/p} = prod_i w_i^{delta_{m+1}/p_i}
  const Rational inv_dm1 = dx.inv_delta[m];
  Weight top = Weight::constant(grid);
  for (size_t i = 0; i < m; ++i) top = top * wv.weights[i].pow(d(Rational(1) / (wv.cfg.p[i] * inv_dm1)));
  t.ints.emplace_back(grid, top.cell_integrals());
  t.avgs.push_back({&t.ints.back(), nullptr, d(inv_dm1)});

  for (size_t i = 0; i < m; ++i) {
    const Rational& pi = wv.cfg.p[i];
    if (dx.inv_delta[i] == 0) {
      t.maxs.emplace_back(grid, scaled_logs(wv.weights[i].cell_log_inf(), -d(Rational(1) / pi)));
      t.sups.push_back({&t.maxs.back(), 1.0});
    } else {
      t.ints.emplace_back(grid, wv.weights[i].pow(-d(Rational(1) / (pi * dx.inv_delta[i]))).cell_integrals());
      t.avgs.push_back({&t.ints.back(), nullptr, d(dx.inv_delta[i])});
    }
  }
  return t;
}

engine::SupResult ml_constant_detail(const VectorWeight& wv, const DyadicGrid& grid) {
  const ClassTerms t = ml_terms(wv, grid);
  return engine::sup_product(grid, t.avgs, t.sups);
}

ExtendedReal ml_constant(const VectorWeight& wv, const DyadicGrid& grid) { return ml_constant_detail(wv, grid).value; }

namespace {

Weight build_what(const std::vector<Weight>& comps, const ExponentConfig& cfg, const DerivedExponents& dx,
                  const DyadicGrid& g) {
  Weight what = Weight::constant(g);
  for (size_t i = 0; i + 1 < cfg.m(); ++i) what = what * comps[i].pow(d(dx.rho() / cfg.p[i]));
  return what;
}

ScalarClass component_class(const DerivedExponents& dx, size_t i) { return ScalarClass::A(dx.S() * dx.theta(i)); }

ScalarClass cap_w_class(const ExponentConfig& cfg, const DerivedExponents& dx) {
  const size_t m = cfg.m();
  return ScalarClass::Apr(cfg.p[m - 1] / cfg.r[m - 1], d(Rational(1) / (dx.inv_delta[m] * cfg.r[m - 1])));
}

}  // namespace

Decomposition lemma_decompose(const VectorWeight& wv, const DyadicGrid& grid) {
  const auto dx = derived(wv.cfg);
  const size_t m = wv.m();
  const ExtendedReal c = ml_constant(wv, grid);
  if (c.is_infinite()) throw std::domain_error("decomposition needs a finite [w]_{A_{p,r}}");

  Decomposition out;
  out.vector_constant = c;
  out.what = build_what(wv.weights, wv.cfg, dx, grid);
  const Weight w = product_weight(wv);
  const Rational& rm = wv.cfg.r[m - 1];
  out.cap_w = w.pow(d(rm * dx.inv_p)) * out.what.pow(-d(rm * dx.inv_delta[m]));
  const Weight alt = wv.weights[m - 1].pow(d(rm / wv.cfg.p[m - 1])) * out.what.pow(d(rm * dx.inv_delta[m - 1]));
  out.cap_w_consistent = out.cap_w.approx_equal(alt, kEqualityTolerance);

  for (size_t i = 0; i + 1 < m; ++i) {
    const Weight v = wv.weights[i].pow(d(dx.theta(i) / wv.cfg.p[i]));
    const auto lhs = scalar_constant(v, component_class(dx, i), nullptr, grid);
    out.bounds.push_back(check_le("decompose.component-class",
                                  "[w_" + std::to_string(i + 1) + "^{theta/p}]_{A_{S theta}} <= [w]^theta",
                                  lhs.value(), c.pow(d(dx.theta(i))).value()));
  }
  const auto what_c = scalar_constant(out.what, ScalarClass::A(dx.S() * dx.rho()), nullptr, grid);
  out.bounds.push_back(
      check_le("decompose.what-class", "[what]_{A_{S rho}} <= [w]^rho", what_c.value(), c.pow(d(dx.rho())).value()));
  const auto cap_c = scalar_constant(out.cap_w, cap_w_class(wv.cfg, dx), &out.what, grid);
  out.bounds.push_back(check_le("decompose.cap-w-class", "[W]_{A_{p_m/r_m, delta_{m+1}/r_m}(what)} <= [w]^delta_{m+1}",
                                cap_c.value(), c.pow(d(Rational(1) / dx.inv_delta[m])).value()));
  return out;
}

Weight rebuild_last_weight(const Weight& cap_w, const Weight& what, const ExponentConfig& cfg, bool corrected) {
  const auto dx = derived(cfg);
  const size_t m = cfg.m();
  const Rational& pm = cfg.p[m - 1];
  const double e = d(pm * dx.inv_delta[m - 1]);
  return cap_w.pow(d(pm / cfg.r[m - 1])) * what.pow(corrected ? -e : e);
}

Reconstruction lemma_reconstruct(const std::vector<Weight>& components, const Weight& what, const Weight& cap_w,
                                 const ExponentConfig& cfg, const DyadicGrid& grid) {
  cfg.validate();
  const auto dx = derived(cfg);
  const size_t m = cfg.m();
  if (components.size() + 1 != m) throw std::invalid_argument("reconstruction needs m-1 components");
  if (!build_what(components, cfg, dx, grid).approx_equal(what, kEqualityTolerance))
    throw std::invalid_argument("what is inconsistent with the components");

  double bound = 1;
  for (size_t i = 0; i + 1 < m; ++i) {
    const auto c = scalar_constant(components[i].pow(d(dx.theta(i) / cfg.p[i])), component_class(dx, i), nullptr, grid);
    if (c.is_infinite()) throw std::domain_error("component " + std::to_string(i + 1) + " has an infinite constant");
    bound *= std::pow(c.value(), d(dx.inv_theta[i]));
  }
  const auto what_c = scalar_constant(what, ScalarClass::A(dx.S() * dx.rho()), nullptr, grid);
  if (what_c.is_infinite()) throw std::domain_error("what has an infinite constant");
  bound *= std::pow(what_c.value(), d(dx.inv_rho));
  const auto cap_c = scalar_constant(cap_w, cap_w_class(cfg, dx), &what, grid);
  if (cap_c.is_infinite()) throw std::domain_error("W has an infinite constant");
  bound *= std::pow(cap_c.value(), d(dx.inv_delta[m]));

  std::vector<Weight> ws = components;
  ws.push_back(rebuild_last_weight(cap_w, what, cfg));
  VectorWeight wv(std::move(ws), cfg);
  const auto c = ml_constant(wv, grid);
  return Reconstruction{std::move(wv), check_le("reconstruct.product-bound",
                                                "[w] <= [W]^{1/delta_{m+1}} [what]^{1/rho} prod [w_i^{theta/p}]^{1/theta}",
                                                c.value(), bound)};
}

NormIdentityReport norm_identity_check(const GridFunction& f, const VectorWeight& wv, const Decomposition& dec,
                                       const Weight* last_weight) {
  const auto dx = derived(wv.cfg);
  const size_t m = wv.m();
  const double p = d(dx.p());
  const double rm = d(wv.cfg.r[m - 1]);
  const double pm = d(wv.cfg.p[m - 1]);
  const double inv_rc = d(1 - Rational(1) / wv.cfg.r[m]);

  NormIdentityReport rep;
  rep.lhs_direct = lp_norm(f, product_weight(wv), p).value();
  // ((f what^{-1/r'})^{r_m} in L^{p/r_m}(W^{p/r_m} dwhat))^{1/r_m}
  const Weight u = dec.cap_w.pow(p / rm) * dec.what * dec.what.pow(-p * inv_rc);
  rep.lhs_rewritten = weighted_integral(f, u, p).pow(1 / p).value();
  rep.rhs_direct = lp_norm(f, last_weight ? *last_weight : wv.weights[m - 1], pm).value();
  const Weight u2 = dec.cap_w.pow(pm / rm) * dec.what * dec.what.pow(-pm / rm);
  rep.rhs_rewritten = weighted_integral(f, u2, pm).pow(1 / pm).value();
  rep.checks.push_back(check_eq("norm.lhs-identity", "||f||_{L^p(w)} in terms of what and W", rep.lhs_direct,
                                rep.lhs_rewritten));
  rep.checks.push_back(check_eq("norm.rhs-identity", "||f||_{L^{p_m}(w_m)} in terms of what and W", rep.rhs_direct,
                                rep.rhs_rewritten));
  return rep;
}

std::vector<Check> lemma2_check(const VectorWeight& wv, const DyadicGrid& grid, Direction direction) {
  const auto dx = derived(wv.cfg);
  const size_t m = wv.m();
  for (const auto& pi : wv.cfg.p)
    if (pi <= 1) throw ExponentError("this factorization needs every p_i > 1");
  const ExtendedReal c = ml_constant(wv, grid);

  std::vector<double> comp(m);
  for (size_t i = 0; i < m; ++i)
    comp[i] = scalar_constant(wv.weights[i].pow(d(dx.theta(i) / wv.cfg.p[i])), component_class(dx, i), nullptr, grid)
                  .value();
  const Rational dm1 = Rational(1) / dx.inv_delta[m];
  const Weight top = product_weight(wv).pow(d(dm1 * dx.inv_p));
  const double top_c = scalar_constant(top, ScalarClass::A(dx.S() * dm1), nullptr, grid).value();

  std::vector<Check> out;
  if (direction == Direction::Decompose) {
    for (size_t i = 0; i < m; ++i)
      out.push_back(check_le("lemma2.component-class",
                             "[w_" + std::to_string(i + 1) + "^{theta/p}]_{A_{S theta}} <= [w]^theta", comp[i],
                             c.pow(d(dx.theta(i))).value()));
    out.push_back(check_le("lemma2.product-class", "[w^{delta_{m+1}/p}]_{A_{S delta_{m+1}}} <= [w]^delta_{m+1}", top_c,
                           c.pow(d(dm1)).value()));
  } else {
    double bound = std::pow(top_c, d(dx.inv_delta[m]));
    for (size_t i = 0; i < m; ++i) bound *= std::pow(comp[i], d(dx.inv_theta[i]));
    out.push_back(check_le("lemma2.product-bound", "[w] <= [w^{delta_{m+1}/p}]^{1/delta_{m+1}} prod [.]^{1/theta}",
                           c.value(), bound));
  }
  return out;
}

// generators ----------------------------------------------------------------

Weight gen_coifman_rochberg(const GridFunction& f, double eta) {
  if (!(eta > 0 && eta < 1)) throw std::invalid_argument("Coifman-Rochberg exponent must lie in (0,1)");
  const GridFunction mf = dyadic_maximal(f.abs());
  std::vector<double> logs(mf.size());
  for (size_t c = 0; c < mf.size(); ++c) {
    if (!(mf[c] > 0)) throw std::invalid_argument("Coifman-Rochberg input must not vanish identically");
    logs[c] = eta * std::log(mf[c]);
  }
  return Weight::from_log(f.grid(), std::move(logs));
}

Weight gen_log_oscillation(const DyadicGrid& g, double osc, uint64_t seed) {
  if (!(osc > 0)) throw std::invalid_argument("oscillation must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> xi(-1.0, 1.0);
  const int L = g.depth, n = g.side();
  std::vector<std::vector<double>> levels(size_t(L) + 1);
  for (int k = 0; k <= L; ++k) {
    const size_t count = size_t(1) << (k * g.dim);
    levels[size_t(k)].resize(count);
    for (double& x : levels[size_t(k)]) x = xi(rng);
  }
  std::vector<double> logs(g.cells());
  const int ny = g.dim == 2 ? n : 1;
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < n; ++x) {
      double u = 0;
      for (int k = 0; k <= L; ++k) {
        const int sh = L - k;
        const size_t idx = size_t(x >> sh) + (g.dim == 2 ? size_t(y >> sh) << k : 0);
        u += levels[size_t(k)][idx];
      }
      logs[size_t(y) * size_t(n) + size_t(x)] = osc * u / (L + 1);
    }
  return Weight::from_log(g, std::move(logs));
}

Weight gen_exp_bmo(const GridFunction& b, double lambda) {
  std::vector<double> logs(b.size());
  for (size_t c = 0; c < b.size(); ++c) logs[c] = lambda * b[c];
  return Weight::from_log(b.grid(), std::move(logs));
}

VectorWeight gen_lemma_constructive(uint64_t seed, const ExponentConfig& cfg, const DyadicGrid& g) {
  cfg.validate();
  const auto dx = derived(cfg);
  const size_t m = cfg.m();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eta(0.2, 0.8);
  std::vector<Weight> comps;
  for (size_t i = 0; i + 1 < m; ++i) {
    const auto f = random_point_masses(g, derive_seed(seed, "component-" + std::to_string(i)));
    comps.push_back(gen_coifman_rochberg(f, eta(rng)).pow(d(cfg.p[i] * dx.inv_theta[i])));
  }
  const Weight what = build_what(comps, cfg, dx, g);
  const auto f = random_point_masses(g, derive_seed(seed, "cap"));
  const GridFunction mf = dyadic_maximal(f, &what);
  const double e = eta(rng) * d(cfg.r[m - 1] * dx.inv_delta[m]);
  std::vector<double> logs(mf.size());
  for (size_t c = 0; c < mf.size(); ++c) logs[c] = e * std::log(mf[c]);
  const Weight cap_w = Weight::from_log(g, std::move(logs));
  return lemma_reconstruct(comps, what, cap_w, cfg, g).wv;
}

GridFunction random_point_masses(const DyadicGrid& g, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> cell(0, g.cells() - 1);
  std::uniform_real_distribution<double> mass(1.0, 10.0);
  std::vector<double> v(g.cells(), 0.0);
  const int count = 1 + int(rng() % 3);
  for (int k = 0; k < count; ++k) v[cell(rng)] += mass(rng);
  return GridFunction(g, std::move(v), true);
}

GridFunction random_log_singularity(const DyadicGrid& g, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = g.side();
  std::uniform_int_distribution<int> pt(0, n);
  const double x0 = double(pt(rng)) / n, y0 = g.dim == 2 ? double(pt(rng)) / n : 0.0;
  std::vector<double> v(g.cells());
  const int ny = g.dim == 2 ? n : 1;
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < n; ++x) {
      const double dxv = (x + 0.5) / n - x0, dyv = g.dim == 2 ? (y + 0.5) / n - y0 : 0.0;
      v[size_t(y) * size_t(n) + size_t(x)] = -std::log(std::hypot(dxv, dyv));
    }
  return GridFunction(g, std::move(v));
}

Weight random_weight(const DyadicGrid& g, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const uint64_t family = rng() % 3, sub = rng();
  const double t = u(rng);
  switch (family) {
    case 0: return gen_coifman_rochberg(random_point_masses(g, sub), 0.2 + 0.6 * t);
    case 1: return gen_log_oscillation(g, 0.5 + 2.5 * t, sub);
    default: return gen_exp_bmo(random_log_singularity(g, sub), -0.8 + 1.6 * t);
  }
}

GridFunction random_function(const DyadicGrid& g, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(g.cells());
  for (double& x : v) x = u(rng) < 0.15 ? 0.0 : std::exp(-2.0 + 4.0 * u(rng));
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0; })) v[0] = 1;
  return GridFunction(g, std::move(v), true);
}

uint64_t derive_seed(uint64_t master, const std::string& label) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](unsigned char byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  for (int i = 0; i < 8; ++i) mix((unsigned char)(master >> (8 * i)));
  for (char ch : label) mix((unsigned char)ch);
  return h;
}

}  // namespace mlw
