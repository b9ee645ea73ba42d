#include "mlw/sparse.hpp"

#include "mlw/maximal.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace mlw {

namespace {

double d(const Rational& q) { return to_double(q); }

std::vector<Cube> children(const DyadicGrid& g, const Cube& q) {
  std::vector<Cube> out;
  if (q.level >= g.depth) return out;
  const int ny = g.dim == 2 ? 2 : 1;
  for (int dy = 0; dy < ny; ++dy)
    for (int dx = 0; dx < 2; ++dx)
      out.push_back(dyadic_cube(g, q.level + 1, {2 * q.index[0] + dx, g.dim == 2 ? 2 * q.index[1] + dy : 0}));
  return out;
}

std::vector<size_t> complement(const DyadicGrid& g, const Cube& q, const std::vector<Cube>& holes) {
  std::vector<size_t> out;
  for (size_t c : cells_of(g, q)) {
    const int x = int(c % size_t(g.side())), y = int(c / size_t(g.side()));
    bool inside = false;
    for (const auto& h : holes)
      if (h.contains(x, y)) {
        inside = true;
        break;
      }
    if (!inside) out.push_back(c);
  }
  return out;
}

void validate_r(const std::vector<Rational>& r, size_t m) {
  if (r.size() != m + 1) throw ExponentError("r needs m+1 = " + std::to_string(m + 1) + " entries");
  Rational s = 0;
  for (const auto& x : r) {
    if (x < 1) throw ExponentError("r entries must be >= 1");
    s += Rational(1) / x;
  }
  if (s <= 1) throw ExponentError("sum of 1/r_i must exceed 1");
}

Rational rbar_of(const std::vector<Rational>& r) {
  Rational s = 0;
  for (const auto& x : r) s += Rational(1) / x;
  return Rational(1) / s;
}

void require_sampled(const std::vector<Weight>& ws) {
  for (const auto& w : ws)
    if (w.is_analytic()) throw std::invalid_argument("duality chain needs grid-sampled weights");
}

std::vector<long double> cell_masses(const GridFunction& f) {
  std::vector<long double> out(f.size());
  const long double h = f.grid().cell_volume();
  for (size_t c = 0; c < f.size(); ++c) out[c] = f[c] * h;
  return out;
}

}  // namespace

bool is_sparse(const SparseFamily& s) {
  if (s.cubes.size() != s.eq_sets.size()) return false;
  if (!(s.zeta > 0 && s.zeta < 1)) return false;
  std::vector<char> used(s.grid.cells(), 0);
  for (size_t k = 0; k < s.cubes.size(); ++k) {
    const Cube& q = s.cubes[k];
    if (Rational((long long)s.eq_sets[k].size()) <= s.zeta * Rational(q.cell_count())) return false;
    for (size_t c : s.eq_sets[k]) {
      if (c >= used.size()) return false;
      const int x = int(c % size_t(s.grid.side())), y = int(c / size_t(s.grid.side()));
      if (!q.contains(x, y) || used[c]) return false;
      used[c] = 1;
    }
  }
  return true;
}

SparseFamily random_sparse(const DyadicGrid& g, const Rational& zeta, uint64_t seed) {
  if (!(zeta > 0 && zeta < 1)) throw std::invalid_argument("zeta must lie in (0,1)");
  SparseFamily s{g, {}, {}, zeta};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Cube> queue{root_cube(g)};
  for (size_t at = 0; at < queue.size(); ++at) {
    const Cube q = queue[at];
    const Rational budget = (1 - zeta) * Rational(q.cell_count());
    long long used = 0;
    std::vector<Cube> picked;
    std::vector<Cube> stack = children(g, q);
    std::shuffle(stack.begin(), stack.end(), rng);
    while (!stack.empty()) {
      const Cube c = stack.back();
      stack.pop_back();
      const double t = u(rng);
      if (t < 0.45 && Rational(used + c.cell_count()) < budget) {
        picked.push_back(c);
        used += c.cell_count();
      } else if (t < 0.85) {
        auto more = children(g, c);
        std::shuffle(more.begin(), more.end(), rng);
        stack.insert(stack.end(), more.begin(), more.end());
      }
    }
    s.cubes.push_back(q);
    s.eq_sets.push_back(complement(g, q, picked));
    queue.insert(queue.end(), picked.begin(), picked.end());
  }
  return s;
}

SparseFamily cz_sparse(const std::vector<GridFunction>& fs, const DyadicGrid& grid, double lambda) {
  if (!(lambda > 1)) throw std::invalid_argument("stopping threshold must exceed 1");
  if (fs.empty()) throw std::invalid_argument("need at least one function");
  const DyadicGrid g(grid.dim, grid.depth, grid.dim == 1 ? Policy::MeshIntervals : Policy::Dyadic);
  std::vector<CubeIntegrator> ints;
  for (const auto& f : fs) {
    if (!f.grid().same_mesh(grid)) throw GridError("function and grid meshes differ");
    ints.emplace_back(g, cell_masses(f.abs()));
  }
  auto value = [&](const Cube& q) {
    const long double vol = volume(g, q);
    long double v = 1;
    for (const auto& in : ints) v *= in.over(q) / vol;
    return double(v);
  };

  SparseFamily s{g, {}, {}, Rational(1023, 1024)};
  const Cube root = root_cube(g);
  if (value(root) == 0) {
    s.cubes.push_back(root);
    s.eq_sets.push_back(cells_of(g, root));
    return s;
  }
  std::vector<std::pair<Cube, double>> queue{{root, value(root)}};
  Rational worst = 1;
  for (size_t at = 0; at < queue.size(); ++at) {
    const auto [q, vq] = queue[at];
    std::vector<Cube> picked;
    std::vector<Cube> stack = children(g, q);
    while (!stack.empty()) {
      const Cube c = stack.back();
      stack.pop_back();
      if (value(c) > lambda * vq) {
        picked.push_back(c);
      } else {
        auto more = children(g, c);
        stack.insert(stack.end(), more.begin(), more.end());
      }
    }
    std::sort(picked.begin(), picked.end(), [](const Cube& a, const Cube& b) { return a.lo < b.lo; });
    s.cubes.push_back(q);
    s.eq_sets.push_back(complement(g, q, picked));
    worst = std::min(worst, Rational((long long)s.eq_sets.back().size(), q.cell_count()));
    for (const auto& c : picked) queue.push_back({c, value(c)});
  }
  s.zeta = worst * Rational(1023, 1024);
  return s;
}

GridFunction sparse_operator(const SparseFamily& s, const std::vector<GridFunction>& fs) {
  const DyadicGrid& g = s.grid;
  std::vector<CubeIntegrator> ints;
  for (const auto& f : fs) {
    if (!f.grid().same_mesh(g)) throw GridError("function and family meshes differ");
    ints.emplace_back(g, cell_masses(f.abs()));
  }
  std::vector<long double> acc(g.cells(), 0);
  for (const auto& q : s.cubes) {
    const long double vol = volume(g, q);
    long double v = 1;
    for (const auto& in : ints) v *= in.over(q) / vol;
    for (size_t c : cells_of(g, q)) acc[c] += v;
  }
  std::vector<double> out(acc.begin(), acc.end());
  return GridFunction(g, std::move(out), true);
}

double sparse_form(const SparseFamily& s, const std::vector<Rational>& r, const std::vector<GridFunction>& fs,
                   const GridFunction& h) {
  validate_r(r, fs.size());
  std::vector<const GridFunction*> all;
  for (const auto& f : fs) all.push_back(&f);
  all.push_back(&h);
  for (const auto* f : all)
    if (!f->grid().same_mesh(s.grid)) throw GridError("function and family meshes differ");
  CompensatedSum total;
  for (const auto& q : s.cubes) {
    const auto cells = cells_of(s.grid, q);
    long double prod = 1;
    for (size_t i = 0; i < all.size(); ++i) {
      const long double ri = d(r[i]);
      CompensatedSum acc;
      for (size_t c : cells) acc.add(std::pow((long double)std::fabs((*all[i])[c]), ri));
      prod *= std::pow(acc.value() / (long double)cells.size(), 1.0L / ri);
    }
    total.add((long double)volume(s.grid, q) * prod);
  }
  return double(total.value());
}

namespace {

DualWeightSet dual_sigma(const VectorWeight& wv, const DyadicGrid& grid) {
  const auto nat = natural_exponents(wv.cfg.r);
  if (nat.p != wv.cfg.p) throw ExponentError("dual weights need the natural exponents p_i = r_i/r");
  const size_t m = wv.m();
  const Rational rb = rbar_of(wv.cfg.r);
  const Rational e = rb / (1 - rb);
  DualWeightSet out;
  for (size_t i = 0; i < m; ++i) out.sigma.push_back(wv.weights[i].pow(-d(e)));
  out.sigma.push_back(product_weight(wv).pow(d(e / (nat.p_total - 1))));

  Weight prod = Weight::constant(grid);
  for (size_t i = 0; i <= m; ++i) prod = prod * out.sigma[i].pow(d(rb / wv.cfg.r[i]));
  double dev = std::fabs(prod.power_exponent());
  for (size_t c = 0; c < grid.cells(); ++c) dev = std::max(dev, std::fabs(prod.log_factor(c)));
  out.checks.push_back(check_le("dual.product-identity", "max |log prod sigma_i^{r/r_i}|", dev, kEqualityTolerance, 0));
  return out;
}

}  // namespace

DualWeightSet dual_weights(const VectorWeight& wv, const DyadicGrid& grid) {
  DualWeightSet out = dual_sigma(wv, grid);
  const size_t m = wv.m();
  const Rational rb = rbar_of(wv.cfg.r);

  const ClassTerms t = ml_terms(wv, grid);
  std::vector<CubeIntegrator> sig;
  sig.reserve(m + 1);
  std::vector<engine::AverageTerm> avgs;
  for (size_t i = 0; i <= m; ++i) {
    sig.emplace_back(grid, out.sigma[i].cell_integrals());
    avgs.push_back({&sig.back(), nullptr, d(Rational(1) / wv.cfg.r[i])});
  }
  const double k = d(1 / (1 - rb));
  double worst = 0;
  for_each_cube(grid, [&](const Cube& q) {
    const double a = k * t.log_at(q);
    const double b = engine::log_product(grid, q, avgs, {});
    if (std::isinf(a) && a == b) return;
    worst = std::max(worst, std::fabs(a - b));
  });
  out.checks.push_back(check_le("dual.characteristic-identity",
                                "max over cubes |log [w]_Q^{1/(1-r)} - log prod (avg sigma_i)^{1/r_i}|", worst,
                                kEqualityTolerance, 0));
  return out;
}

FormCertificate form_bound_certificate(const SparseFamily& s, const VectorWeight& wv,
                                       const std::vector<GridFunction>& fs, const GridFunction& h,
                                       const DyadicGrid& grid) {
  if (!is_sparse(s)) throw std::invalid_argument("family is not sparse");
  const size_t m = wv.m();
  if (fs.size() != m) throw std::invalid_argument("need one input per weight");
  require_sampled(wv.weights);
  const auto dual = dual_sigma(wv, grid);
  const auto& r = wv.cfg.r;
  const Rational rb = rbar_of(r);
  const DyadicGrid& g = s.grid;
  if (!g.same_mesh(grid)) throw GridError("family and grid meshes differ");

  FormCertificate cert;
  Rational k = 1 / s.zeta;
  for (size_t i = 0; i <= m; ++i) k /= (1 - rb);
  cert.constant = k;
  const ExtendedReal cw = ml_constant(wv, grid);
  if (cw.is_infinite()) throw std::domain_error("infinite [w]_{A_{p,r}}");
  const double wpow = cw.pow(d(1 / (1 - rb))).value();
  cert.c0 = d(k) * wpow;
  const double front = d(1 / s.zeta) * wpow;

  std::vector<GridFunction> in;
  for (const auto& f : fs) in.push_back(f.abs());
  in.push_back(h.abs());
  std::vector<double> ri(m + 1);
  for (size_t i = 0; i <= m; ++i) ri[i] = d(r[i]);
  const double hcell = g.cell_volume();

  // F^{r_i} and sigma_i per cell, and the masses they carry
  std::vector<std::vector<double>> sig(m + 1), fr(m + 1);
  std::vector<CubeIntegrator> fr_int, sig_int;
  for (size_t i = 0; i <= m; ++i) {
    sig[i] = dual.sigma[i].cell_averages();
    fr[i].resize(g.cells());
    for (size_t c = 0; c < g.cells(); ++c) fr[i][c] = std::pow(in[i][c], ri[i]);
    std::vector<long double> a(g.cells()), b(g.cells());
    for (size_t c = 0; c < g.cells(); ++c) {
      a[c] = (long double)fr[i][c] * hcell;
      b[c] = (long double)sig[i][c] * hcell;
    }
    fr_int.emplace_back(g, a);
    sig_int.emplace_back(g, b);
  }

  const double l0 = sparse_form(s, r, fs, h);
  CompensatedSum l1, l2;
  for (size_t k2 = 0; k2 < s.cubes.size(); ++k2) {
    const Cube& q = s.cubes[k2];
    const long double vol = volume(g, q);
    long double gprod = 1, sprod = 1;
    for (size_t i = 0; i <= m; ++i) {
      const long double fq = fr_int[i].over(q), sq = sig_int[i].over(q);
      gprod *= std::pow(fq / sq, 1.0L / ri[i]);
      sprod *= std::pow(sq / vol, 1.0L / ri[i]);
    }
    l1.add(vol * gprod * sprod);
    l2.add((long double)s.eq_sets[k2].size() * hcell * gprod);
  }

  std::vector<GridFunction> maxf;
  for (size_t i = 0; i <= m; ++i) maxf.push_back(dyadic_maximal_ratio(g, fr_int[i].cells(), sig_int[i].cells()));
  CompensatedSum l3, l4;
  for (size_t c = 0; c < g.cells(); ++c) {
    long double a = 1, b = 1;
    for (size_t i = 0; i <= m; ++i) {
      const long double mv = std::pow((long double)maxf[i][c], 1.0L / ri[i]);
      a *= mv;
      b *= mv * std::pow((long double)sig[i][c], d(rb) / ri[i]);
    }
    l3.add(a * hcell);
    l4.add(b * hcell);
  }

  const double p_rb = d(1 / rb);
  double l5 = front, l6 = front, l7 = front;
  const double doob = std::pow(d(1 / (1 - rb)), double(m + 1));
  l6 *= doob;
  l7 *= doob;
  for (size_t i = 0; i <= m; ++i) {
    l5 *= std::pow(lp_norm(maxf[i], dual.sigma[i], p_rb).value(), 1 / ri[i]);
    std::vector<double> gv(g.cells());
    for (size_t c = 0; c < g.cells(); ++c) gv[c] = fr[i][c] / sig[i][c];
    l6 *= std::pow(lp_norm(GridFunction(g, std::move(gv), true), dual.sigma[i], p_rb).value(), 1 / ri[i]);
  }
  const auto nat = natural_exponents(r);
  const Rational pc = nat.p_total / (nat.p_total - 1);
  l7 *= lp_norm(in[m], product_weight(wv).pow(d(1 - pc)), d(pc)).value();
  for (size_t i = 0; i < m; ++i) l7 *= lp_norm(in[i], wv.weights[i], d(wv.cfg.p[i])).value();

  cert.lines = {l0,
                double(l1.value()),
                front * double(l2.value()),
                front * double(l3.value()),
                front * double(l4.value()),
                l5,
                l6,
                l7};
  const auto& L = cert.lines;
  cert.checks.push_back(check_eq("chain.rewrite", "form = sum |Q| prod (avg_sigma g_i)^{1/r_i} (avg sigma_i)^{1/r_i}",
                                 L[0], L[1]));
  cert.checks.push_back(check_le("chain.sparsity", "|Q| < |E_Q|/zeta and prod (avg sigma_i)^{1/r_i} <= [w]^{1/(1-r)}",
                                 L[1], L[2]));
  cert.checks.push_back(check_le("chain.disjointness", "sum |E_Q| prod ... <= integral of prod M_sigma_i", L[2], L[3]));
  cert.checks.push_back(check_eq("chain.dual-product", "inserting prod sigma_i^{r/r_i} = 1", L[3], L[4]));
  cert.checks.push_back(check_le("chain.holder", "Hoelder with sum r/r_i = 1", L[4], L[5]));
  cert.checks.push_back(check_le("chain.doob", "M_sigma bounded on L^{1/r}(sigma) by (1-r)^{-1}", L[5], L[6]));
  cert.checks.push_back(check_eq("chain.norms", "||g_i||_{L^{1/r}(sigma_i)}^{1/r_i} = ||f_i||_{L^{p_i}(w_i)}", L[6], L[7]));
  cert.checks.push_back(check_le("form.final-bound",
                                 "form <= zeta^{-1} (1-r)^{-(m+1)} [w]^{1/(1-r)} ||h|| prod ||f_i|| with constant " +
                                     to_string(k),
                                 L[0], L[7]));
  return cert;
}

namespace {

struct NecessityData {
  std::vector<long double> inv_r;
  double one_minus_rbar = 0;
  std::vector<CubeIntegrator> sig;    // sigma_i
  std::vector<CubeIntegrator> test;   // f_i^{r_i} with f_i = sigma_i^{1/r_i}
  std::vector<CubeIntegrator> norm;   // f_i^{p_i} times the norm weight
  std::vector<double> norm_p;
  ClassTerms terms;
};

NecessityData necessity_data(const VectorWeight& wv, const DyadicGrid& grid) {
  require_sampled(wv.weights);
  const auto dual = dual_sigma(wv, grid);
  const size_t m = wv.m();
  NecessityData nd;
  const Rational rb = rbar_of(wv.cfg.r);
  for (const auto& x : wv.cfg.r) nd.inv_r.push_back(d(Rational(1) / x));
  nd.one_minus_rbar = d(1 - rb);
  nd.terms = ml_terms(wv, grid);
  const auto nat = natural_exponents(wv.cfg.r);
  const Rational pc = nat.p_total / (nat.p_total - 1);
  nd.sig.reserve(m + 1);
  nd.test.reserve(m + 1);
  nd.norm.reserve(m + 1);
  const long double hcell = grid.cell_volume();
  for (size_t i = 0; i <= m; ++i) {
    const auto sv = dual.sigma[i].cell_averages();
    const Weight nw = i < m ? wv.weights[i] : product_weight(wv).pow(d(1 - pc));
    const auto nwv = nw.cell_averages();
    const double ri = d(wv.cfg.r[i]);
    const double pi = i < m ? d(wv.cfg.p[i]) : d(pc);
    std::vector<long double> a(grid.cells()), b(grid.cells()), c2(grid.cells());
    for (size_t c = 0; c < grid.cells(); ++c) {
      const double f = std::pow(sv[c], 1 / ri);
      a[c] = sv[c] * hcell;
      b[c] = std::pow((long double)f, (long double)ri) * hcell;
      c2[c] = std::pow((long double)f, (long double)pi) * nwv[c] * hcell;
    }
    nd.sig.emplace_back(grid, a);
    nd.test.emplace_back(grid, b);
    nd.norm.emplace_back(grid, c2);
    nd.norm_p.push_back(pi);
  }
  return nd;
}

// lhs/rhs of the four relations at one cube
struct NecessityValues {
  std::array<double, 4> lhs{}, rhs{};
};

NecessityValues necessity_values(const NecessityData& nd, const Cube& q, double c0, const DyadicGrid& grid) {
  const size_t n = nd.inv_r.size();
  const double vol = volume(grid, q), lv = std::log(vol);
  double form = lv, avg = 0, norms = std::log(c0);
  for (size_t i = 0; i < n; ++i) {
    const double e = double(nd.inv_r[i]);
    form += e * (std::log(double(nd.test[i].over(q))) - lv);
    avg += e * (std::log(double(nd.sig[i].over(q))) - lv);
    norms += std::log(double(nd.norm[i].over(q))) / nd.norm_p[i];
  }
  NecessityValues v;
  v.lhs = {std::exp(form), std::exp(form), std::exp(avg), std::exp(nd.terms.log_at(q))};
  v.rhs = {std::exp(lv + avg), std::exp(norms), c0, std::pow(c0, nd.one_minus_rbar)};
  return v;
}

std::vector<Check> necessity_checks(const NecessityValues& v) {
  return {
      check_eq("necessity.identity", "single-cube form = |Q| prod (avg sigma_i)^{1/r_i}", v.lhs[0], v.rhs[0]),
      check_le("necessity.norm-bound", "single-cube form <= C0 ||f_{m+1}|| prod ||f_i||", v.lhs[1], v.rhs[1]),
      check_le("necessity.average-bound", "prod (avg sigma_i)^{1/r_i} <= C0", v.lhs[2], v.rhs[2]),
      check_le("necessity.class-bound", "[w]_Q <= C0^{1-r}", v.lhs[3], v.rhs[3]),
  };
}

// Relative margin, negative exactly when the relation is violated beyond
// rounding; the first relation is an equality.
double relative_margin(const NecessityValues& v, size_t k) {
  const double scale = std::max(std::fabs(v.lhs[k]), std::fabs(v.rhs[k]));
  if (!(scale > 0) || std::isinf(scale)) return v.lhs[k] <= v.rhs[k] ? 0 : -1;
  return (k == 0 ? -std::fabs(v.rhs[k] - v.lhs[k]) : v.rhs[k] - v.lhs[k]) / scale;
}

}  // namespace

std::vector<Check> necessity_extract(const Cube& q, const VectorWeight& wv, double c0, const DyadicGrid& grid) {
  return necessity_checks(necessity_values(necessity_data(wv, grid), q, c0, grid));
}

std::vector<Check> necessity_sweep(const VectorWeight& wv, double c0, const DyadicGrid& grid) {
  const auto nd = necessity_data(wv, grid);
  std::array<double, 4> best;
  best.fill(std::numeric_limits<double>::infinity());
  NecessityValues worst;
  for_each_cube(grid, [&](const Cube& q) {
    const NecessityValues v = necessity_values(nd, q, c0, grid);
    for (size_t k = 0; k < 4; ++k) {
      const double rm = relative_margin(v, k);
      if (rm < best[k]) {
        best[k] = rm;
        worst.lhs[k] = v.lhs[k];
        worst.rhs[k] = v.rhs[k];
      }
    }
  });
  return necessity_checks(worst);
}

std::string sparse_to_json(const SparseFamily& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (size_t k = 0; k < s.cubes.size(); ++k) {
    const Cube& q = s.cubes[k];
    nlohmann::json idx = nlohmann::json::array({q.index[0]});
    if (s.grid.dim == 2) idx.push_back(q.index[1]);
    arr.push_back({{"level", q.level}, {"index", idx}, {"e_cells", s.eq_sets[k]}, {"zeta", to_string(s.zeta)}});
  }
  return arr.dump(2);
}

SparseFamily sparse_from_json(const std::string& text, const DyadicGrid& grid) {
  const auto arr = nlohmann::json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("sparse family JSON must be a list");
  SparseFamily s{grid, {}, {}, Rational(1, 2)};
  bool first = true;
  for (const auto& e : arr) {
    const auto idx = e.at("index").get<std::vector<int>>();
    if (idx.size() != size_t(grid.dim)) throw std::invalid_argument("cube index has the wrong dimension");
    s.cubes.push_back(dyadic_cube(grid, e.at("level").get<int>(), {idx[0], grid.dim == 2 ? idx[1] : 0}));
    s.eq_sets.push_back(e.at("e_cells").get<std::vector<size_t>>());
    const Rational z = parse_rational(e.at("zeta").get<std::string>());
    if (!first && z != s.zeta) throw std::invalid_argument("inconsistent zeta across cubes");
    s.zeta = z;
    first = false;
  }
  return s;
}

}  // namespace mlw
