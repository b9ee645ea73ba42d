// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include "mlw/bmo.hpp"
#include "mlw/exponents.hpp"
#include "mlw/maximal.hpp"
#include "mlw/sparse.hpp"
#include "mlw/verify.hpp"
#include "mlw/weights.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mlw;

namespace {

using RV = std::vector<Rational>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string vs(const RV& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

VectorWeight random_vector(const DyadicGrid& g, const ExponentConfig& ec, uint64_t seed) {
  std::vector<Weight> ws;
  for (size_t i = 0; i < ec.m(); ++i) ws.push_back(random_weight(g, derive_seed(seed, "w" + std::to_string(i))));
  return VectorWeight(std::move(ws), ec);
}

// Names of failing anchors in a report, empty when it passes.
std::string failures(const VerificationReport& rep) {
  std::string out;
  for (const auto& c : rep.checks)
    if (!c.pass) out += (out.empty() ? "" : ", ") + c.anchor;
  return out;
}

bool has_anchor(const VerificationReport& rep, const std::string& anchor) {
  for (const auto& c : rep.checks)
    if (c.anchor == anchor) return true;
  return false;
}

SuiteConfig suite(int depth, size_t samples, RV p = {}, RV r = {}) {
  SuiteConfig c;
  c.depth = depth;
  c.samples = samples;
  c.p = std::move(p);
  c.r = std::move(r);
  return c;
}

const RV kP33{3, 3}, kP11{1, 1}, kP44{4, 4}, kR1{1, 1, 1}, kR2{2, 2, 2};

// 1 ------------------------------------------------------------------------
Outcome normalization() {
  Outcome o;
  const DyadicGrid g(1, 8);
  std::vector<ExponentConfig> used;
  std::string refused;
  for (const auto& p : {kP33, kP11, kP44})
    for (const auto& r : {kR1, kR2}) {
      if (check_order(r, p) == Order::None) {
        bool thrown = false;
        try {
          ml_constant(VectorWeight({Weight::constant(g), Weight::constant(g)}, ExponentConfig{p, r}), g);
        } catch (const ExponentError&) {
          thrown = true;
        }
        o.pass = o.pass && thrown;
        refused += " " + vs(p) + "x" + vs(r);
        continue;
      }
      used.push_back(ExponentConfig{p, r});
    }
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-3, 3);
  double lowest = INFINITY, worst_rel = 0;
  for (size_t s = 0; s < 200; ++s) {
    const ExponentConfig& ec = used[s % used.size()];
    const VectorWeight wv = random_vector(g, ec, derive_seed(101, std::to_string(s)));
    const ExtendedReal c = ml_constant(wv, g);
    std::vector<Weight> scaled;
    for (const auto& w : wv.weights) scaled.push_back(w.scaled(std::exp(u(rng))));
    const ExtendedReal cs = ml_constant(VectorWeight(scaled, ec), g);
    if (c.is_infinite()) {
      o.pass = o.pass && cs.is_infinite();
      continue;
    }
    lowest = std::min(lowest, c.value());
    const double rel = std::fabs(cs.value() - c.value()) / c.value();
    worst_rel = std::max(worst_rel, rel);
    o.pass = o.pass && c.value() >= 1 - 1e-9 && rel <= 1e-10;
  }
  o.detail = "200 weights over " + std::to_string(used.size()) + " admissible sets, min [w] " + fmt(lowest) +
             ", worst scaling drift " + fmt(worst_rel) + "; order None refused:" + refused;
  return o;
}

// 2 ------------------------------------------------------------------------
Outcome scalar_identity() {
  Outcome o;
  const DyadicGrid g(1, 8);
  std::mt19937_64 rng(202);
  const Rational ps[] = {1, Rational(3, 2), 2, 3, Rational(5, 2)};
  const Rational rs[] = {Rational(1, 2), 1, 2, 3};
  double worst = 0;
  for (size_t s = 0; s < 50; ++s) {
    const Weight v = random_weight(g, derive_seed(202, "v" + std::to_string(s)));
    const Weight mu = random_weight(g, derive_seed(202, "mu" + std::to_string(s)));
    const Rational p = ps[rng() % 5], r = rs[rng() % 4];
    const double lhs = scalar_constant(v, ScalarClass::Apr(p, to_double(r)), &mu, g).value();
    const double rhs = scalar_constant(v.pow(to_double(r)), ScalarClass::A(1 + r * (1 - 1 / p)), &mu, g).value();
    const Check c = check_eq("scalar", "", lhs, rhs);
    worst = std::max(worst, std::fabs(lhs - rhs) / std::max(std::fabs(lhs), std::fabs(rhs)));
    o.pass = o.pass && c.pass;
  }
  o.detail = "50 samples, worst relative gap " + fmt(worst);
  return o;
}

// 3 ------------------------------------------------------------------------
Outcome lemma_main() {
  Outcome o;
  const std::vector<std::pair<RV, RV>> sets{{kP33, kR1}, {kP33, kR2}, {kP44, kR1}, {{3, 2}, {1, 2, 1}}};
  for (const auto& [p, r] : sets) {
    const auto rep = run_suite("lemma-main", suite(8, 50, p, r));
    for (const char* a : {"reconstruct.roundtrip", "reconstruct.product-bound", "norm.lhs-identity",
                          "norm.rhs-identity", "decompose.cap-w-consistent"})
      o.pass = o.pass && has_anchor(rep, a);
    const std::string bad = failures(rep);
    o.pass = o.pass && rep.pass;
    o.detail += vs(p) + "/" + vs(r) + (bad.empty() ? " ok" : " failed: " + bad) + "; ";
  }
  o.detail += "50 members each, (3,2)/(1,2,1) is the endpoint p_m = r_m";
  return o;
}

// 4 ------------------------------------------------------------------------
Outcome lemma_two() {
  Outcome o;
  for (const auto& p : {kP33, kP44})
    for (const auto& r : {kR1, kR2}) {
      if (check_order(r, p) == Order::None) {
        bool thrown = false;
        try {
          run_suite("lemma-two", suite(8, 1, p, r));
        } catch (const std::invalid_argument&) {
          thrown = true;
        }
        o.pass = o.pass && thrown;
        o.detail += vs(p) + "/" + vs(r) + " refused (order None); ";
        continue;
      }
      const auto rep = run_suite("lemma-two", suite(8, 50, p, r));
      const std::string bad = failures(rep);
      o.pass = o.pass && rep.pass;
      o.detail += vs(p) + "/" + vs(r) + (bad.empty() ? " ok" : " failed: " + bad) + "; ";
    }
  o.detail += "50 members each, both directions";
  return o;
}

// 5 ------------------------------------------------------------------------
Outcome sparse_chain() {
  Outcome o;
  for (const auto& r : {kR1, kR2}) {
    const auto rep = run_suite("sparse-bound", suite(8, 100, {}, r));
    const std::string bad = failures(rep);
    o.pass = o.pass && rep.pass;
    o.detail += "r=" + vs(r) + (bad.empty() ? " ok" : " failed: " + bad) + "; ";
  }
  const DyadicGrid g(1, 8);
  const ExponentConfig ec{natural_exponents(kR1).p, kR1};
  const VectorWeight wv = random_vector(g, ec, 505);
  const SparseFamily S = random_sparse(g, Rational(1, 2), 505);
  std::vector<GridFunction> fs{random_function(g, 1), random_function(g, 2)};
  const FormCertificate cert = form_bound_certificate(S, wv, fs, random_function(g, 3), g);
  o.pass = o.pass && cert.constant == Rational(27, 4);
  o.detail += "constant at r=(1,1,1), zeta=1/2 is " + to_string(cert.constant);
  return o;
}

// 6 ------------------------------------------------------------------------
Outcome necessity() {
  Outcome o;
  const DyadicGrid g(1, 8);
  size_t checks = 0;
  for (const auto& r : {kR1, kR2}) {
    const ExponentConfig ec{natural_exponents(r).p, r};
    for (size_t s = 0; s < 20; ++s) {
      const uint64_t seed = derive_seed(606, vs(r) + std::to_string(s));
      const VectorWeight wv = random_vector(g, ec, seed);
      const SparseFamily S = random_sparse(g, Rational(1, 2), seed);
      std::vector<GridFunction> fs;
      for (size_t i = 0; i < ec.m(); ++i) fs.push_back(random_function(g, derive_seed(seed, "f" + std::to_string(i))));
      const FormCertificate cert = form_bound_certificate(S, wv, fs, random_function(g, seed), g);
      for (const auto& c : necessity_sweep(wv, cert.c0, g)) {
        ++checks;
        if (!c.pass) {
          o.pass = false;
          o.detail += c.anchor + " failed at r=" + vs(r) + "; ";
        }
      }
    }
  }
  o.detail += "every cube of 20 weights per r in {(1,1,1),(2,2,2)}, " + std::to_string(checks) + " sweep checks";
  return o;
}

// 7 ------------------------------------------------------------------------
Outcome maximal() {
  Outcome o;
  const DyadicGrid g(1, 10);
  for (const Rational& p : {Rational(3), Rational(2), Rational(3, 2)}) {
    double worst = 0, bound = 0;
    for (size_t s = 0; s < 100; ++s) {
      const uint64_t seed = derive_seed(707, to_string(p) + "/" + std::to_string(s));
      const auto rep = maximal_norm_check(random_weight(g, seed), p, 1, derive_seed(seed, "f"));
      worst = std::max(worst, rep.worst_ratio);
      bound = rep.bound;
      o.pass = o.pass && rep.pass;
    }
    if (p == 3) o.pass = o.pass && bound == 1.5 && worst <= 1.5;
    o.detail += "p=" + to_string(p) + " worst " + fmt(worst) + " <= " + fmt(bound) + "; ";
  }
  o.detail += "100 (f, mu) each";
  return o;
}

// 8 ------------------------------------------------------------------------
VectorWeight pair(const Weight& a, const Weight& b) { return VectorWeight({a, b}, ExponentConfig{kP11, kR1}); }

Outcome introduction() {
  Outcome o;
  const std::vector<int> depths{8, 10, 12, 14};
  const auto fin = refinement_divergence(
      [](const DyadicGrid& h) { return pair(Weight::power(h, 1), Weight::constant(h)); }, depths);
  const auto div = refinement_divergence(
      [](const DyadicGrid& h) { return pair(Weight::power(h, 1), Weight::power(h, 1)); }, depths);
  o.pass = fin.verdict == Verdict::Finite && div.verdict == Verdict::Divergent;
  o.detail = "(|x|^-1, 1) " + to_string(fin.verdict) + ", (|x|^-1, |x|^-1) " + to_string(div.verdict);

  const auto sampled = refinement_divergence(
      [](const DyadicGrid& h) { return pair(Weight::sampled_power(h, 1), Weight::sampled_power(h, 1)); }, depths);
  o.detail += " (grid-sampled variant: " + to_string(sampled.verdict) + ", last ratio " + fmt(sampled.ratios.back()) +
              ")";

  const DyadicGrid g(1, 10);
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(0, 1);
  int agree = 0, finite = 0;
  const auto a1 = ScalarClass::A(1);
  for (size_t s = 0; s < 30; ++s) {
    const double e1 = -0.5 + 3 * u(rng), e2 = -0.5 + 3 * u(rng);
    const Weight w1 = Weight::power(g, e1) * gen_log_oscillation(g, 1.0, derive_seed(808, "o1" + std::to_string(s)));
    const Weight w2 = Weight::power(g, e2) * gen_log_oscillation(g, 1.0, derive_seed(808, "o2" + std::to_string(s)));
    const bool direct = ml_constant(pair(w1, w2), g).is_finite();
    const bool three = scalar_constant(w1.pow(0.5), a1, nullptr, g).is_finite() &&
                       scalar_constant(w2.pow(0.5), a1, nullptr, g).is_finite() &&
                       scalar_constant(w1.pow(0.5) * w2.pow(0.5), a1, nullptr, g).is_finite();
    agree += direct == three;
    finite += direct;
  }
  o.pass = o.pass && agree == 30;
  o.detail += "; A_(1,1) characterization agrees on " + std::to_string(agree) + "/30 pairs (" +
              std::to_string(finite) + " finite)";
  return o;
}

// 9 ------------------------------------------------------------------------
Outcome power_weights() {
  Outcome o;
  const auto rep = run_suite("power-weights", suite(10, 1));
  o.pass = rep.pass;
  for (const auto& c : rep.checks) {
    if (c.anchor == "power.rejects-inadmissible")
      o.detail += "inadmissible set refused; ";
    else
      o.detail += c.anchor.substr(c.anchor.find('[')) + " " + fmt(c.lhs) + "/20; ";
  }
  const std::string bad = failures(rep);
  o.detail += bad.empty() ? "20 values of a per set" : "failed: " + bad;
  return o;
}

// 10 -----------------------------------------------------------------------
Outcome exponent_region() {
  Outcome o;
  const auto rep = run_suite("exponents", suite(10, 1));
  for (const char* a : {"exponents.bht-region", "exponents.bh-half-line"}) {
    bool found = false;
    for (const auto& c : rep.checks)
      if (c.anchor == a) {
        found = true;
        o.pass = o.pass && c.pass;
        o.detail += std::string(a) + (c.pass ? " holds" : " FAILS") + "; ";
      }
    o.pass = o.pass && found;
  }
  o.detail += "rational sweep with denominators <= 12";
  return o;
}

// 11 -----------------------------------------------------------------------
Rational random_exponent(std::mt19937_64& rng) {
  const long long den = 1 + (long long)(rng() % 6);
  return Rational(den + (long long)(rng() % (5 * den)), den);
}

Outcome extrapolation() {
  Outcome o;
  std::mt19937_64 rng(1111);
  int paths = 0, steps = 0;
  for (int t = 0; t < 400000 && paths < 500; ++t) {
    const RV p{random_exponent(rng), random_exponent(rng)};
    const RV q{random_exponent(rng), random_exponent(rng)};
    const RV r{random_exponent(rng), random_exponent(rng), random_exponent(rng)};
    if (check_order(r, p) == Order::None || check_order(r, q) == Order::None) continue;
    bool pre = true;
    for (size_t j = 0; j < 2; ++j) pre = pre && (r[j] < q[j] || (r[j] == q[j] && r[j] == p[j]));
    if (!pre) continue;
    ++paths;
    try {
      RV at = p;
      for (const auto& st : extrapolation_path(p, q, r)) {
        o.pass = o.pass && st.from == at;
        for (const auto& c : st.certificates) o.pass = o.pass && c.holds;
        at = st.to;
      }
      o.pass = o.pass && at == q;
    } catch (const ExponentError& e) {
      o.pass = false;
      o.detail += "path " + vs(p) + "->" + vs(q) + " r=" + vs(r) + " threw: " + e.what() + "; ";
    }
    RV pq = p;
    pq[1] = q[1];
    if (check_order(r, pq) == Order::None || q[1] == p[1]) continue;
    ++steps;
    const auto st = step1_parameters(p, r, q[1]);
    const auto dp = derived(ExponentConfig{p, r});
    const auto dq = derived(ExponentConfig{pq, r});
    const Rational a = 1 / st.s - dp.inv_p, b = 1 / st.tau - dp.inv_delta[2], c = 1 / st.s_m - 1 / p[1];
    o.pass = o.pass && a == b && b == c && 1 / st.tau == dq.inv_delta[2];
  }
  o.pass = o.pass && paths == 500;
  o.detail += std::to_string(paths) + " certified paths, step1 equalities exact on " + std::to_string(steps) +
              " last-coordinate moves";
  return o;
}

// 12 -----------------------------------------------------------------------
Outcome commutator() {
  Outcome o;
  const auto rep = run_suite("commutator", suite(7, 50));
  const std::string bad = failures(rep);
  o.pass = rep.pass;
  o.detail = "commutator suite over 50 (v, b, gamma_max)" + (bad.empty() ? std::string(" ok") : " failed: " + bad);

  const DyadicGrid g(1, 7);
  std::mt19937_64 rng(1212);
  std::uniform_real_distribution<double> u(-1, 1);
  const Rational qs[] = {Rational(3, 2), 2, 3};
  int exp_ok = 0, order_ok = 0;
  for (size_t s = 0; s < 200; ++s) {
    const BmoFunction b = bmo_norms(random_log_singularity(g, derive_seed(1212, std::to_string(s))), g);
    if (s < 100) order_ok += b.bmo <= b.bmo_exp;
    const Rational q = qs[rng() % 3];
    const double lambda = u(rng) * std::min(1.0, to_double(q - 1)) / b.bmo_exp;
    exp_ok += exp_weight_check(b, lambda, q, g).check.pass;
  }
  o.pass = o.pass && exp_ok == 200 && order_ok == 100;
  o.detail += "; exp_weight_check " + std::to_string(exp_ok) + "/200; BMO <= exp L " + std::to_string(order_ok) + "/100";
  return o;
}

// 13 -----------------------------------------------------------------------
Outcome holder() {
  Outcome o;
  const std::vector<RV> ss{{2, 2}, {3, Rational(3, 2)}, {1, 4}, {Rational(5, 4), 5}, {2, 3, 6}};
  int single = 0, dbl = 0;
  for (uint64_t t = 0; t < 200; ++t) {
    const RV& s = ss[t % ss.size()];
    const RV& tt = ss[(t / 5) % 4];
    bool ok = true;
    for (const auto& c : holder_vv_check(NormTable::random(s.size(), 16, 1, 1300 + t), s, Nesting::Single))
      ok = ok && c.pass;
    single += ok;
    ok = true;
    const RV& s2 = ss[t % 4];
    for (const auto& c : holder_vv_check(NormTable::random(2, 8, 6, 1700 + t), s2, Nesting::Double, tt))
      ok = ok && c.pass;
    dbl += ok;
  }
  o.pass = single == 200 && dbl == 200;
  o.detail = "single " + std::to_string(single) + "/200, double-nested " + std::to_string(dbl) + "/200";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"normalization and scaling", normalization},
      {"scalar A_{p,r}(mu) identity", scalar_identity},
      {"main factorization lemma", lemma_main},
      {"second factorization lemma", lemma_two},
      {"sparse-form chain", sparse_chain},
      {"necessity", necessity},
      {"maximal bounds", maximal},
      {"introduction examples", introduction},
      {"power-weight iff", power_weights},
      {"exponent region", exponent_region},
      {"extrapolation bookkeeping", extrapolation},
      {"commutator chain", commutator},
      {"vector-valued Hoelder", holder},
  };
  int failed = 0;
  double total = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += secs;
    failed += !o.pass;
    std::printf("criterion %2zu %s %s: %s (%.1f s)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed, %.1f s total\n", failed, criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
