#include "mlw/bmo.hpp"
#include "mlw/maximal.hpp"
#include "mlw/sparse.hpp"
#include "mlw/verify.hpp"

#include <cmath>
#include <map>
#include <random>

namespace mlw {

namespace {

double d(const Rational& q) { return to_double(q); }

std::vector<Rational> rv(std::initializer_list<long long> xs) {
  std::vector<Rational> out;
  for (long long x : xs) out.push_back(Rational(x));
  return out;
}

std::string vec_str(const std::vector<Rational>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

struct Run {
  const SuiteConfig& cfg;
  DyadicGrid grid;
  std::vector<Check> checks;

  explicit Run(const SuiteConfig& c) : cfg(c), grid(c.dim, c.depth, c.policy) {}
  void add(const Check& c) { keep_worst(checks, c); }
  void add(const std::vector<Check>& cs) {
    for (const auto& c : cs) add(c);
  }
  uint64_t seed(const std::string& label, size_t sample) const {
    return derive_seed(cfg.seed, label + "#" + std::to_string(sample));
  }
};

VectorWeight random_vector(const DyadicGrid& g, const ExponentConfig& ec, uint64_t seed) {
  std::vector<Weight> ws;
  for (size_t i = 0; i < ec.m(); ++i) ws.push_back(random_weight(g, derive_seed(seed, "w" + std::to_string(i))));
  return VectorWeight(std::move(ws), ec);
}

std::vector<GridFunction> random_functions(const DyadicGrid& g, size_t count, uint64_t seed) {
  std::vector<GridFunction> out;
  for (size_t i = 0; i < count; ++i) out.push_back(random_function(g, derive_seed(seed, "f" + std::to_string(i))));
  return out;
}

double log_deviation(const Weight& a, const Weight& b) {
  double dev = std::fabs(a.power_exponent() - b.power_exponent());
  for (size_t c = 0; c < a.grid().cells(); ++c) dev = std::max(dev, std::fabs(a.log_factor(c) - b.log_factor(c)));
  return dev;
}

ExponentConfig config_or(const SuiteConfig& cfg, std::vector<Rational> p, std::vector<Rational> r) {
  ExponentConfig ec{cfg.p.empty() ? std::move(p) : cfg.p, cfg.r.empty() ? std::move(r) : cfg.r};
  ec.validate();
  return ec;
}

// suites ---------------------------------------------------------------------

void lemma_main(Run& run) {
  const ExponentConfig ec = config_or(run.cfg, rv({3, 3}), rv({1, 1, 1}));
  derived(ec);
  const size_t m = ec.m();
  for (size_t s = 0; s < run.cfg.samples; ++s) {
    const uint64_t seed = run.seed("lemma-main", s);
    const VectorWeight wv = random_vector(run.grid, ec, seed);
    const Decomposition dec = lemma_decompose(wv, run.grid);
    run.add(dec.bounds);
    run.add(check_true("decompose.cap-w-consistent", "both expressions for W agree cellwise", dec.cap_w_consistent));
    const std::vector<Weight> comps(wv.weights.begin(), wv.weights.end() - 1);
    const Reconstruction rec = lemma_reconstruct(comps, dec.what, dec.cap_w, ec, run.grid);
    run.add(rec.bound);
    run.add(check_le("reconstruct.roundtrip", "max |log w_m - log rebuilt w_m|",
                     log_deviation(rec.wv.weights[m - 1], wv.weights[m - 1]), kEqualityTolerance, 0));
    run.add(norm_identity_check(random_function(run.grid, derive_seed(seed, "f")), wv, dec).checks);
  }
}

void lemma_two(Run& run) {
  const ExponentConfig ec = config_or(run.cfg, rv({3, 3}), rv({1, 1, 1}));
  for (size_t s = 0; s < run.cfg.samples; ++s) {
    const VectorWeight wv = random_vector(run.grid, ec, run.seed("lemma-two", s));
    run.add(lemma2_check(wv, run.grid, Direction::Decompose));
    run.add(lemma2_check(wv, run.grid, Direction::Reconstruct));
  }
}

void sparse_bound(Run& run) {
  const std::vector<Rational> r = run.cfg.r.empty() ? rv({1, 1, 1}) : run.cfg.r;
  const auto nat = natural_exponents(r);
  const ExponentConfig ec{nat.p, r};
  const size_t m = ec.m();
  const Rational& zeta = run.cfg.zeta;
  const DyadicGrid& g = run.grid;
  for (size_t s = 0; s < run.cfg.samples; ++s) {
    const uint64_t seed = run.seed("sparse-bound", s);
    const VectorWeight wv = random_vector(g, ec, seed);
    const SparseFamily S = random_sparse(g, zeta, derive_seed(seed, "family"));
    run.add(check_true("sparse.family", "E_Q inside Q, pairwise disjoint, |E_Q| > zeta |Q|", is_sparse(S)));
    double total = 0;
    for (const auto& q : S.cubes) total += volume(g, q);
    run.add(check_le("sparse.total-measure", "sum |Q| <= 1/zeta", total, d(1 / zeta)));

    const auto fs = random_functions(g, m, derive_seed(seed, "inputs"));
    const GridFunction h = random_function(g, derive_seed(seed, "h"));
    const FormCertificate cert = form_bound_certificate(S, wv, fs, h, g);
    run.add(cert.checks);
    run.add(check_le("form.constant", "1 <= zeta^{-1} (1-r)^{-(m+1)} = " + to_string(cert.constant), 1,
                     d(cert.constant)));
    run.add(dual_weights(wv, g).checks);
    run.add(necessity_sweep(wv, cert.c0, g));

    const GridFunction t = sparse_operator(S, fs);
    CompensatedSum pairing;
    for (size_t c = 0; c < g.cells(); ++c) pairing.add((long double)h[c] * t[c] * g.cell_volume());
    const std::vector<Rational> ones(m + 1, Rational(1));
    run.add(check_eq("form.duality", "integral of h T_S(f) = form with r = (1,...,1)", double(pairing.value()),
                     sparse_form(S, ones, fs, h)));
  }
}

void maximal_suite(Run& run) {
  const DyadicGrid& g = run.grid;
  const DyadicGrid dy = g.with_policy(Policy::Dyadic);
  for (const Rational& p : {Rational(3), Rational(2), Rational(3, 2)}) {
    const std::string anchor = "maximal.norm-bound[p=" + to_string(p) + "]";
    for (size_t s = 0; s < run.cfg.samples; ++s) {
      const uint64_t seed = run.seed(anchor, s);
      const Weight mu = random_weight(g, derive_seed(seed, "mu"));
      const auto rep = maximal_norm_check(mu, p, 2, derive_seed(seed, "f"));
      run.add(check_le(anchor, "||M_mu f||_{L^p(mu)} <= p' ||f||_{L^p(mu)}, worst ratio", rep.worst_ratio, rep.bound));
    }
  }
  for (size_t s = 0; s < run.cfg.samples; ++s) {
    const uint64_t seed = run.seed("maximal.pointwise", s);
    const auto fs = random_functions(dy, 2, seed);
    const GridFunction mm = multilinear_maximal(fs, dy);
    const GridFunction m0 = dyadic_maximal(fs[0]), m1 = dyadic_maximal(fs[1]);
    std::vector<double> sum(dy.cells());
    for (size_t c = 0; c < sum.size(); ++c) sum[c] = fs[0][c] + fs[1][c];
    const GridFunction msum = dyadic_maximal(GridFunction(dy, std::move(sum), true));
    const double root = double(average(fs[0], root_cube(dy)).value());
    double dom = 0, sub = 0, below = 0;
    for (size_t c = 0; c < dy.cells(); ++c) {
      dom = std::max(dom, mm[c] / (m0[c] * m1[c]));
      sub = std::max(sub, msum[c] / (m0[c] + m1[c]));
      below = std::max(below, root / m0[c]);
    }
    run.add(check_le("maximal.product-domination", "max over cells of M(f,g) / (Mf Mg), dyadic cubes", dom, 1));
    run.add(check_le("maximal.sublinear", "max over cells of M(f+g) / (Mf + Mg)", sub, 1));
    run.add(check_le("maximal.root-average", "max over cells of avg_root f / Mf", below, 1));
  }
}

void commutator_suite(Run& run) {
  const ExponentConfig ec = config_or(run.cfg, rv({3, 3}), rv({1, 1, 1}));
  const size_t m = ec.m();
  const DyadicGrid g(run.cfg.dim, std::min(run.cfg.depth, 7), run.cfg.policy);
  for (size_t s = 0; s < run.cfg.samples; ++s) {
    const uint64_t seed = run.seed("commutator", s);
    const VectorWeight vv = random_vector(g, ec, seed);
    std::vector<BmoFunction> bs;
    for (size_t i = 0; i < m; ++i) {
      const BmoFunction raw = bmo_norms(random_log_singularity(g, derive_seed(seed, "b" + std::to_string(i))), g);
      run.add(check_le("bmo.norm-order", "||b||_BMO <= ||b||_{exp L}", raw.bmo, raw.bmo_exp, 0));
      bs.push_back(normalize_bmo(raw, g));

      std::mt19937_64 rng(derive_seed(seed, "exp" + std::to_string(i)));
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      const Rational qs[] = {Rational(3, 2), Rational(2), Rational(3)};
      const Rational q = qs[rng() % 3];
      const double lambda = u(rng) * std::min(1.0, d(q - 1)) / raw.bmo_exp;
      run.add(exp_weight_check(raw, lambda, q, g).check);
    }
    const CommutatorReport lim = commutator_limits(vv, g);
    std::vector<double> gamma;
    const double sign = s % 2 == 0 ? 1.0 : -1.0;
    for (size_t i = 0; i < m; ++i) gamma.push_back(sign * lim.gamma_max[i] / std::max(1.0, bs[i].bmo_exp));
    run.add(commutator_perturb(vv, bs, gamma, g).report.checks);
  }
}

// Exact rationals with denominator at most 12 in (lo, hi].
std::vector<Rational> rational_grid(long long lo, long long hi) {
  std::vector<Rational> out;
  for (long long den = 1; den <= 12; ++den)
    for (long long num = lo * den + 1; num <= hi * den; ++num) {
      const Rational x(num, den);
      if (boost::multiprecision::denominator(x) == den) out.push_back(x);
    }
  std::sort(out.begin(), out.end());
  return out;
}

Rational inv_conj(const Rational& r) { return 1 - Rational(1) / r; }

// The largest 1/p among p strictly above r on the grid is reached at the grid
// successors of r_1 and r_2, so checking that single p per r is exhaustive.
bool bht_region_holds(std::string& witness) {
  const auto grid = rational_grid(1, 3);
  auto succ = [&](const Rational& x) -> std::optional<Rational> {
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    if (it == grid.end()) return std::nullopt;
    return *it;
  };
  std::vector<Rational> inv_min;
  for (const auto& x : grid) inv_min.push_back(Rational(1) / std::min(x, Rational(2)));
  for (size_t a = 0; a < grid.size(); ++a)
    for (size_t b = a; b < grid.size(); ++b)
      for (size_t c = 0; c < grid.size(); ++c) {
        if (!(inv_min[a] + inv_min[b] + inv_min[c] < 2)) continue;
        const auto p1 = succ(grid[a]), p2 = succ(grid[b]);
        if (!p1 || !p2) continue;
        const Rational inv_p = Rational(1) / *p1 + Rational(1) / *p2;
        if (!(inv_p > inv_conj(grid[c]))) continue;
        if (!(inv_p < Rational(3, 2))) {
          witness = vec_str({grid[a], grid[b], grid[c]});
          return false;
        }
      }
  return true;
}

Rational random_rational(std::mt19937_64& rng, long long lo, long long hi) {
  const long long den = 1 + (long long)(rng() % 12);
  const long long span = (hi - lo) * den;
  return Rational(lo * den + (long long)(rng() % uint64_t(span + 1)), den);
}

void exponents_suite(Run& run) {
  std::mt19937_64 rng(run.seed("exponents", 0));
  const size_t trials = run.cfg.samples * 10;
  for (size_t s = 0; s < trials; ++s) {
    const size_t m = 2 + rng() % 2;
    std::vector<Rational> r, p, q;
    for (size_t i = 0; i <= m; ++i) r.push_back(random_rational(rng, 1, 4));
    for (size_t i = 0; i < m; ++i) {
      p.push_back(r[i] + (rng() % 4 == 0 ? Rational(0) : random_rational(rng, 0, 4)));
      q.push_back(r[i] + random_rational(rng, 0, 4) + Rational(1, 12));
    }
    if (check_order(r, p) == Order::None) {
      --s;
      continue;
    }
    const ExponentConfig ec{p, r};
    const auto dx = derived(ec);
    Rational sum = 0;
    bool theta_pos = true;
    for (size_t i = 0; i <= m; ++i) sum += dx.inv_delta[i];
    for (const auto& t : dx.inv_theta) theta_pos = theta_pos && t > 0;
    run.add(check_true("exponents.delta-sum", "sum 1/delta_i = (1-r)/r", sum == dx.S()));
    run.add(check_true("exponents.conjugate-sum", "sum of 1/p_i over i <= m+1 equals 1", dx.inv_p + dx.inv_pm1 == 1));
    run.add(check_true("exponents.rho", "1/rho = 1/delta_m + 1/delta_{m+1}",
                       dx.inv_rho == dx.inv_delta[m - 1] + dx.inv_delta[m]));
    run.add(check_true("exponents.theta-positive", "1/theta_i > 0", theta_pos));
    const auto nat = natural_exponents(r);
    run.add(check_true("exponents.natural-strict", "natural exponents are strictly above r",
                       Rational(1) / nat.p_total == [&] {
                         Rational t = 0;
                         for (const auto& x : nat.p) t += Rational(1) / x;
                         return t;
                       }() && check_order(r, nat.p) == Order::Strict));

    // paths: q must satisfy the endpoint preconditions
    bool q_ok = true;
    Rational inv_q = 0;
    for (size_t j = 0; j < m; ++j) inv_q += Rational(1) / q[j];
    q_ok = inv_q > inv_conj(r[m]);
    if (q_ok) {
      bool ok = true;
      try {
        const auto path = extrapolation_path(p, q, r);
        std::vector<Rational> cur = p;
        for (const auto& st : path) {
          ok = ok && st.from == cur;
          size_t changed = 0;
          for (size_t j = 0; j < m; ++j) changed += st.from[j] != st.to[j];
          ok = ok && changed == 1;
          Rational inv_s = 0;
          for (const auto& x : st.to) inv_s += Rational(1) / x;
          ok = ok && inv_s > inv_conj(r[m]);
          for (const auto& c : st.certificates) ok = ok && c.holds;
          cur = st.to;
        }
        ok = ok && cur == q;
      } catch (const ExponentError&) {
        ok = false;
      }
      run.add(check_true("exponents.path", "certified one-coordinate path from p to q", ok));
    }

    const Rational qm = q[m - 1];
    std::vector<Rational> pq = p;
    pq[m - 1] = qm;
    if (check_order(r, pq) != Order::None) {
      const auto st = step1_parameters(p, r, qm);
      const auto dq = derived(ExponentConfig{pq, r});
      const Rational a = 1 / st.s - dx.inv_p;
      const Rational b = 1 / st.tau - dx.inv_delta[m];
      const Rational c = 1 / st.s_m - 1 / p[m - 1];
      run.add(check_true("exponents.step1", "1/s - 1/p = 1/tau - 1/delta_{m+1} = 1/s_m - 1/p_m, tau = new delta_{m+1}",
                         a == b && b == c && 1 / st.tau == dq.inv_delta[m]));
    }
  }

  std::string witness;
  const bool region = bht_region_holds(witness);
  run.add(check_true("exponents.bht-region",
                     "bht_admissible(r) and r strictly below p imply 1/p < 3/2 (denominators <= 12)" +
                         (region ? std::string() : ", fails at r=" + witness),
                     region));
  bool half = true;
  const auto grid = rational_grid(1, 6);
  for (const auto& p1 : grid)
    for (const auto& p2 : grid) {
      if (!(Rational(1) / p1 + Rational(1) / p2 < Rational(3, 2))) continue;
      const Interval iv = bh_power_interval({p1, p2});
      half = half && iv.lower <= 0 && iv.upper >= Rational(1, 2);
    }
  run.add(check_true("exponents.bh-half-line", "bh_power_interval contains [0, 1/2)", half));
  const Interval iv = power_weight_interval(rv({3, 3}), rv({1, 1, 1}));
  run.add(check_true("exponents.power-interval", "q=(3,3), r=(1,1,1) gives (-2, 1)",
                     iv.lower == -2 && iv.upper == 1));
}

void power_weights(Run& run) {
  const DyadicGrid g(1, std::min(run.cfg.depth, 10), run.cfg.policy);
  std::mt19937_64 rng(run.seed("power-weights", 0));
  for (const auto& q : {rv({3, 3}), rv({4, 4})})
    for (const auto& r : {rv({1, 1, 1}), rv({2, 2, 2})}) {
      if (check_order(r, q) != Order::Strict) {
        bool rejected = false;
        try {
          power_weight_interval(q, r);
        } catch (const ExponentError&) {
          rejected = true;
        }
        run.add(check_true("power.rejects-inadmissible", "q=" + vec_str(q) + ", r=" + vec_str(r) + " is refused",
                           rejected));
        continue;
      }
      const Interval iv = power_weight_interval(q, r);
      const double lo = d(iv.lower), up = d(iv.upper);
      std::uniform_real_distribution<double> u(lo - 1.0, up + 1.0);
      int agree = 0, taken = 0;
      while (taken < 20) {
        const double a = u(rng);
        if (std::fabs(a - lo) < 0.05 || std::fabs(a - up) < 0.05) continue;
        ++taken;
        std::vector<Weight> ws(q.size(), Weight::power(g, a));
        const bool finite = ml_constant(VectorWeight(std::move(ws), ExponentConfig{q, r}), g).is_finite();
        agree += finite == iv.contains(a);
      }
      Check c = check_true("power.membership[q=" + vec_str(q) + ",r=" + vec_str(r) + "]",
                           "finite [(|x|^{-a},...)] iff a in (" + to_string(iv.lower) + ", " + to_string(iv.upper) +
                               "), agreements out of 20",
                           agree == 20);
      c.lhs = agree;
      c.rhs = 20;
      run.add(c);
    }
}

VectorWeight pair(const Weight& a, const Weight& b) {
  return VectorWeight({a, b}, ExponentConfig{rv({1, 1}), rv({1, 1, 1})});
}

void characterization(Run& run) {
  const DyadicGrid& g = run.grid;
  const ExtendedReal fin = ml_constant(pair(Weight::power(g, 1), Weight::constant(g)), g);
  const ExtendedReal div = ml_constant(pair(Weight::power(g, 1), Weight::power(g, 1)), g);
  run.add(check_true("intro.finite-example", "[(|x|^{-1}, 1)]_{A_(1,1)} is finite", fin.is_finite()));
  run.add(check_true("intro.divergent-example", "[(|x|^{-1}, |x|^{-1})]_{A_(1,1)} is infinite", div.is_infinite()));
  run.add(check_true("intro.strict-inclusion", "[|x|^{-1}]_{A_1} is infinite",
                     scalar_constant(Weight::power(g, 1), ScalarClass::A(1), nullptr, g).is_infinite()));

  const int top = std::max(run.cfg.depth, 10);
  const std::vector<int> depths{top - 6, top - 4, top - 2, top};
  auto verdict = [&](const std::string& anchor, const std::string& what, auto make, Verdict expected) {
    const auto rep = refinement_divergence(make, depths, 1.5, run.cfg.policy, 1);
    Check c = check_true(anchor, what + " classified " + to_string(rep.verdict), rep.verdict == expected);
    c.lhs = rep.ratios.back();
    c.rhs = expected == Verdict::Divergent ? 1.5 : 1.1;
    run.add(c);
  };
  verdict("intro.refinement-finite", "analytic (|x|^{-1}, 1)",
          [](const DyadicGrid& h) { return pair(Weight::power(h, 1), Weight::constant(h)); }, Verdict::Finite);
  verdict("intro.refinement-divergent", "analytic (|x|^{-1}, |x|^{-1})",
          [](const DyadicGrid& h) { return pair(Weight::power(h, 1), Weight::power(h, 1)); }, Verdict::Divergent);
  verdict("intro.refinement-finite-sampled", "sampled (|x|^{-1}, 1)",
          [](const DyadicGrid& h) { return pair(Weight::sampled_power(h, 1), Weight::constant(h)); },
          Verdict::Finite);

  const ExponentConfig ec = config_or(run.cfg, rv({3, 3}), rv({1, 1, 1}));
  for (size_t s = 0; s < run.cfg.samples; ++s) {
    const uint64_t seed = run.seed("characterization", s);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // three-weight A_1 description of A_(1,1)
    const double a1 = -0.5 + 3 * u(rng), a2 = -0.5 + 3 * u(rng);
    const Weight w1 = Weight::power(g, a1) * gen_log_oscillation(g, 1.0, derive_seed(seed, "o1"));
    const Weight w2 = Weight::power(g, a2) * gen_log_oscillation(g, 1.0, derive_seed(seed, "o2"));
    const bool direct = ml_constant(pair(w1, w2), g).is_finite();
    const auto a1c = ScalarClass::A(1);
    const bool three = scalar_constant(w1.pow(0.5), a1c, nullptr, g).is_finite() &&
                       scalar_constant(w2.pow(0.5), a1c, nullptr, g).is_finite() &&
                       scalar_constant(w1.pow(0.5) * w2.pow(0.5), a1c, nullptr, g).is_finite();
    run.add(check_true("class.a11-characterization",
                       "[w]_{A_(1,1)} finite iff w1^{1/2}, w2^{1/2}, (w1 w2)^{1/2} in A_1", direct == three));

    // scalar A_{p,r}(mu) identity
    const Weight v = random_weight(g, derive_seed(seed, "v"));
    const Weight mu = random_weight(g, derive_seed(seed, "mu"));
    const Rational ps[] = {Rational(1), Rational(3, 2), Rational(2), Rational(3), Rational(5, 2)};
    const Rational rs[] = {Rational(1, 2), Rational(1), Rational(2), Rational(3)};
    const Rational p = ps[rng() % 5], r = rs[rng() % 4];
    const double lhs = scalar_constant(v, ScalarClass::Apr(p, d(r)), &mu, g).value();
    const double rhs = scalar_constant(v.pow(d(r)), ScalarClass::A(1 + r * (1 - 1 / p)), &mu, g).value();
    run.add(check_eq("scalar.apr-identity", "[v]_{A_{p,r}(mu)} = [v^r]_{A_{1+r/p'}(mu)}", lhs, rhs));

    // nesting of A_p classes
    const double c2 = scalar_constant(v, ScalarClass::A(2), &mu, g).value();
    const double c3 = scalar_constant(v, ScalarClass::A(3), &mu, g).value();
    run.add(check_le("class.nesting", "[v]_{A_3(mu)} <= [v]_{A_2(mu)}", c3, c2));

    // normalization and scaling of [w]
    const VectorWeight wv = random_vector(g, ec, derive_seed(seed, "wv"));
    const double c = ml_constant(wv, g).value();
    run.add(check_le("class.normalization", "1 <= [w]", 1 - kInequalitySlack, c, 0));
    std::vector<Weight> scaled;
    for (const auto& w : wv.weights) scaled.push_back(w.scaled(std::exp(-3 + 6 * u(rng))));
    run.add(check_eq("class.scaling", "[c w] = [w]", ml_constant(VectorWeight(scaled, ec), g).value(), c));

    // product inclusion at r = (1,...,1)
    std::vector<Rational> ones(ec.m() + 1, Rational(1));
    if (check_order(ones, ec.p) != Order::None) {
      const VectorWeight wp(wv.weights, ExponentConfig{ec.p, ones});
      double bound = 1;
      for (size_t i = 0; i < ec.m(); ++i)
        bound *= std::pow(scalar_constant(wv.weights[i], ScalarClass::A(ec.p[i]), nullptr, g).value(), d(1 / ec.p[i]));
      run.add(check_le("class.product-inclusion", "[w]_{A_p} <= prod [w_i]_{A_{p_i}}^{1/p_i}",
                       ml_constant(wp, g).value(), bound));
    }
  }
}

using SuiteFn = void (*)(Run&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r{
      {"lemma-main", lemma_main},     {"lemma-two", lemma_two},         {"sparse-bound", sparse_bound},
      {"maximal", maximal_suite},     {"commutator", commutator_suite}, {"exponents", exponents_suite},
      {"power-weights", power_weights}, {"characterization", characterization},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma-main", "lemma-two",     "sparse-bound",    "maximal",
                                              "commutator", "exponents",     "power-weights", "characterization"};
  return names;
}

VerificationReport run_suite(const std::string& name, const SuiteConfig& config) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown suite '" + name + "'");
  config.validate();
  Run run(config);
  it->second(run);
  VerificationReport rep{name, config, std::move(run.checks), false};
  rep.finalize();
  return rep;
}

}  // namespace mlw
