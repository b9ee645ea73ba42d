#include "mlw/exponents.hpp"

#include <algorithm>

namespace mlw {

namespace {

Rational sum_reciprocals(const std::vector<Rational>& v, size_t count) {
  Rational s = 0;
  for (size_t i = 0; i < count; ++i) s += Rational(1) / v[i];
  return s;
}

// 1/r' for r >= 1; zero when r = 1.
Rational inv_conjugate(const Rational& r) { return Rational(1) - Rational(1) / r; }

std::string vec_str(const std::vector<Rational>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

void require_at_least_one(const std::vector<Rational>& v, const char* name) {
  for (const auto& x : v)
    if (x < 1) throw ExponentError(std::string(name) + " entries must be >= 1, got " + vec_str(v));
}

}  // namespace

std::string to_string(Order o) {
  switch (o) {
    case Order::Strict: return "Strict";
    case Order::Weak: return "Weak";
    case Order::None: return "None";
  }
  return "None";
}

void ExponentConfig::validate() const {
  if (p.size() < 2) throw ExponentError("need m >= 2 exponents p_i");
  if (r.size() != p.size() + 1)
    throw ExponentError("r must have m+1 = " + std::to_string(p.size() + 1) + " entries");
  require_at_least_one(p, "p");
  require_at_least_one(r, "r");
}

Order check_order(const std::vector<Rational>& r, const std::vector<Rational>& p) {
  if (r.size() != p.size() + 1)
    throw ExponentError("length mismatch: r has " + std::to_string(r.size()) + " entries, p has " +
                        std::to_string(p.size()));
  require_at_least_one(p, "p");
  require_at_least_one(r, "r");
  const size_t m = p.size();
  bool strict = true;
  for (size_t i = 0; i < m; ++i) {
    if (r[i] > p[i]) return Order::None;
    if (r[i] == p[i]) strict = false;
  }
  // r_{m+1}' > p  <=>  1/p > 1/r_{m+1}'
  if (!(sum_reciprocals(p, m) > inv_conjugate(r[m]))) return Order::None;
  return strict ? Order::Strict : Order::Weak;
}

DerivedExponents derived(const ExponentConfig& cfg) {
  cfg.validate();
  if (check_order(cfg.r, cfg.p) == Order::None)
    throw ExponentError("order violation: r=" + vec_str(cfg.r) + " is not below p=" + vec_str(cfg.p));
  const size_t m = cfg.m();
  DerivedExponents d;
  d.m = m;
  d.inv_rbar = sum_reciprocals(cfg.r, m + 1);
  d.rbar = Rational(1) / d.inv_rbar;
  d.inv_p = sum_reciprocals(cfg.p, m);
  d.inv_pm1 = Rational(1) - d.inv_p;
  for (size_t i = 0; i < m; ++i) d.inv_delta.push_back(Rational(1) / cfg.r[i] - Rational(1) / cfg.p[i]);
  d.inv_delta.push_back(Rational(1) / cfg.r[m] - d.inv_pm1);
  const Rational S = d.S();
  for (size_t i = 0; i < m; ++i) d.inv_theta.push_back(S - d.inv_delta[i]);
  Rational partial = 0;
  for (size_t i = 0; i + 1 < m; ++i) partial += Rational(1) / cfg.p[i];
  d.inv_rho = Rational(1) / cfg.r[m - 1] - inv_conjugate(cfg.r[m]) + partial;
  return d;
}

NaturalExponents natural_exponents(const std::vector<Rational>& r) {
  if (r.size() < 3) throw ExponentError("need at least three exponents r_i");
  require_at_least_one(r, "r");
  const Rational inv_rbar = sum_reciprocals(r, r.size());
  if (!(inv_rbar > 1)) throw ExponentError("inadmissible r=" + vec_str(r) + ": sum of 1/r_i must exceed 1");
  const Rational rbar = Rational(1) / inv_rbar;
  NaturalExponents out;
  for (size_t i = 0; i + 1 < r.size(); ++i) out.p.push_back(r[i] / rbar);
  out.p_total = Rational(1) / (Rational(1) - rbar / r.back());
  return out;
}

bool bht_admissible(const std::vector<Rational>& r) {
  if (r.size() != 3) throw ExponentError("bht_admissible expects three exponents");
  Rational s = 0;
  for (const auto& x : r) {
    if (!(x > 1)) throw ExponentError("bht_admissible needs r_i > 1, got " + vec_str(r));
    s += Rational(1) / std::min(x, Rational(2));
  }
  return s < 2;
}

std::vector<Rational> gamma_to_r(const std::vector<Rational>& gamma) {
  if (gamma.size() != 3) throw ExponentError("gamma must have three entries");
  Rational s = 0;
  for (const auto& g : gamma) {
    if (g < 0 || g >= 1) throw ExponentError("gamma entries must lie in [0,1), got " + vec_str(gamma));
    s += g;
  }
  if (s != 1) throw ExponentError("gamma entries must sum to 1, got " + to_string(s));
  std::vector<Rational> r;
  for (const auto& g : gamma) r.push_back(Rational(2) / (1 + g));
  return r;
}

Interval power_weight_interval(const std::vector<Rational>& q, const std::vector<Rational>& r) {
  if (check_order(r, q) != Order::Strict)
    throw ExponentError("order violation: power_weight_interval needs r=" + vec_str(r) +
                        " strictly below q=" + vec_str(q));
  Rational mn = q[0] / r[0];
  for (size_t i = 1; i < q.size(); ++i) mn = std::min(mn, q[i] / r[i]);
  const Rational qq = Rational(1) / sum_reciprocals(q, q.size());
  return {Rational(1) - mn, Rational(1) - qq * inv_conjugate(r.back())};
}

Interval bh_power_interval(const std::vector<Rational>& p, const std::optional<std::vector<Rational>>& s) {
  if (p.size() != 2) throw ExponentError("bh_power_interval expects two exponents");
  for (const auto& x : p)
    if (!(x > 1)) throw ExponentError("bh_power_interval needs 1 < p_i, got " + vec_str(p));
  const Rational inv_p = sum_reciprocals(p, 2);
  if (!(inv_p < Rational(3, 2))) throw ExponentError("bh_power_interval needs 1/p < 3/2");
  if (s) {
    if (s->size() != 2) throw ExponentError("s must have two entries");
    for (const auto& x : *s)
      if (!(x > 1)) throw ExponentError("bh_power_interval needs 1 < s_i, got " + vec_str(*s));
    if (!(sum_reciprocals(*s, 2) < Rational(3, 2))) throw ExponentError("bh_power_interval needs 1/s < 3/2");
  }
  const Rational half(1, 2);
  Rational low_min, up_sum = 0;
  for (size_t i = 0; i < 2; ++i) {
    Rational lo = std::max(Rational(1), p[i] / 2);
    Rational up = std::max(Rational(0), Rational(1) / p[i] - half);
    if (s) {
      lo = std::max(lo, p[i] / (*s)[i]);
      up = std::max(up, Rational(1) / (*s)[i] - half);
    }
    low_min = i == 0 ? lo : std::min(low_min, lo);
    up_sum += up;
  }
  return {Rational(1) - low_min, Rational(1) - up_sum / inv_p};
}

Step1Parameters step1_parameters(const std::vector<Rational>& p, const std::vector<Rational>& r,
                                 const Rational& q_m) {
  const ExponentConfig cfg{p, r};
  const DerivedExponents d = derived(cfg);
  const size_t m = p.size();
  if (!(q_m > r[m - 1]))
    throw ExponentError("step1 needs q_m > r_m, got q_m=" + to_string(q_m) + ", r_m=" + to_string(r[m - 1]));
  Step1Parameters out;
  out.s_m = q_m;
  const Rational inv_s = d.inv_p + (Rational(1) / q_m - Rational(1) / p[m - 1]);
  const Rational inv_tau = d.inv_delta[m] + (inv_s - d.inv_p);
  if (!(inv_tau > 0))
    throw ExponentError("order violation: moving p_m to " + to_string(q_m) + " leaves r_{m+1}' <= s");
  out.s = Rational(1) / inv_s;
  out.tau = Rational(1) / inv_tau;
  return out;
}

std::vector<PathStep> extrapolation_path(const std::vector<Rational>& p, const std::vector<Rational>& q,
                                         const std::vector<Rational>& r) {
  if (q.size() != p.size()) throw ExponentError("p and q must have the same length");
  if (check_order(r, p) == Order::None)
    throw ExponentError("order violation: r=" + vec_str(r) + " is not below p=" + vec_str(p));
  require_at_least_one(q, "q");
  const size_t m = p.size();
  for (size_t j = 0; j < m; ++j) {
    if (r[j] > q[j])
      throw ExponentError("precondition r_" + std::to_string(j + 1) + " <= q_" + std::to_string(j + 1) +
                          " fails: " + to_string(r[j]) + " > " + to_string(q[j]));
    if (r[j] < p[j] && !(r[j] < q[j]))
      throw ExponentError("precondition r_" + std::to_string(j + 1) + " < q_" + std::to_string(j + 1) +
                          " fails (needed since r_j < p_j)");
  }
  const Rational inv_rc = inv_conjugate(r[m]);
  if (!(sum_reciprocals(q, m) > inv_rc))
    throw ExponentError("precondition sum 1/q_j > 1/r_{m+1}' fails for q=" + vec_str(q));

  std::vector<size_t> order;
  for (size_t i = 0; i < m; ++i)
    if (p[i] > q[i]) order.push_back(i);
  for (size_t i = 0; i < m; ++i)
    if (!(p[i] > q[i])) order.push_back(i);

  std::vector<PathStep> path;
  std::vector<Rational> cur = p;
  for (size_t i : order) {
    if (p[i] == q[i]) continue;
    PathStep step;
    step.from = cur;
    cur[i] = q[i];
    step.to = cur;
    step.changed_index = i;
    for (size_t j = 0; j < m; ++j)
      step.certificates.push_back({"r_" + std::to_string(j + 1) + " <= s_" + std::to_string(j + 1), r[j], "<=",
                                   cur[j], r[j] <= cur[j]});
    const Rational inv_s = sum_reciprocals(cur, m);
    step.certificates.push_back({"sum 1/s_j > 1/r_{m+1}'", inv_s, ">", inv_rc, inv_s > inv_rc});
    step.certificates.push_back({"r_" + std::to_string(i + 1) + " < s_" + std::to_string(i + 1), r[i], "<",
                                 cur[i], r[i] < cur[i]});
    for (const auto& c : step.certificates)
      if (!c.holds) throw ExponentError("path certificate failed: " + c.name);
    path.push_back(std::move(step));
  }
  return path;
}

}  // namespace mlw
