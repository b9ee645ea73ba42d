#include "mlw/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <random>
#include <sstream>

namespace mlw {

namespace {

using nlohmann::json;

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw std::invalid_argument("not a number: " + s);
}

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::vector<Rational> rationals_from(const json& j) {
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(parse_rational(x.get<std::string>()));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double x) {
  const json j = number(x);
  return j.is_string() ? j.get<std::string>() : j.dump();
}

double pow_sum(const std::vector<double>& xs, double e) {
  CompensatedSum s;
  for (double x : xs) s.add(std::pow((long double)x, (long double)e));
  return double(std::pow(s.value(), 1.0L / e));
}

}  // namespace

void SuiteConfig::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
  if (depth < 1 || depth * dim > 24) throw std::invalid_argument("depth must satisfy 1 <= depth and dim*depth <= 24");
  if (samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (!(zeta > 0 && zeta < 1)) throw std::invalid_argument("zeta must lie in (0,1)");
  if (!p.empty() && !r.empty()) {
    ExponentConfig{p, r}.validate();
  } else if (!r.empty() && r.size() < 3) {
    throw std::invalid_argument("r needs at least three entries");
  }
}

void VerificationReport::finalize() {
  pass = !checks.empty();
  for (const auto& c : checks) pass = pass && c.pass;
}

std::string VerificationReport::to_json() const {
  json cfg = {{"dim", config.dim},
              {"depth", config.depth},
              {"policy", to_string(config.policy)},
              {"seed", config.seed},
              {"samples", config.samples},
              {"p", rationals(config.p)},
              {"r", rationals(config.r)},
              {"zeta", to_string(config.zeta)}};
  json cs = json::array();
  for (const auto& c : checks)
    cs.push_back({{"anchor", c.anchor},
                  {"description", c.description},
                  {"lhs", number(c.lhs)},
                  {"rhs", number(c.rhs)},
                  {"margin", number(c.margin)},
                  {"pass", c.pass}});
  return json{{"suite", suite}, {"config", cfg}, {"checks", cs}, {"pass", pass}}.dump(2);
}

std::string VerificationReport::to_csv() const {
  std::ostringstream os;
  os << "suite,anchor,description,lhs,rhs,margin,pass\n";
  for (const auto& c : checks)
    os << csv_field(suite) << ',' << csv_field(c.anchor) << ',' << csv_field(c.description) << ','
       << csv_number(c.lhs) << ',' << csv_number(c.rhs) << ',' << csv_number(c.margin) << ','
       << (c.pass ? "true" : "false") << '\n';
  return os.str();
}

VerificationReport VerificationReport::from_json(const std::string& text) {
  const json j = json::parse(text);
  VerificationReport rep;
  rep.suite = j.at("suite").get<std::string>();
  const json& cfg = j.at("config");
  rep.config.dim = cfg.at("dim").get<int>();
  rep.config.depth = cfg.at("depth").get<int>();
  rep.config.policy = parse_policy(cfg.at("policy").get<std::string>());
  rep.config.seed = cfg.at("seed").get<uint64_t>();
  rep.config.samples = cfg.at("samples").get<size_t>();
  if (cfg.contains("p")) rep.config.p = rationals_from(cfg.at("p"));
  if (cfg.contains("r")) rep.config.r = rationals_from(cfg.at("r"));
  if (cfg.contains("zeta")) rep.config.zeta = parse_rational(cfg.at("zeta").get<std::string>());
  for (const auto& c : j.at("checks"))
    rep.checks.push_back(Check{c.at("anchor").get<std::string>(), c.at("description").get<std::string>(),
                               number_from(c.at("lhs")), number_from(c.at("rhs")), number_from(c.at("margin")),
                               c.at("pass").get<bool>()});
  rep.pass = j.at("pass").get<bool>();
  return rep;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite: return "Finite";
    case Verdict::Divergent: return "Divergent";
    default: return "Inconclusive";
  }
}

DivergenceReport refinement_divergence(const std::function<VectorWeight(const DyadicGrid&)>& make,
                                       const std::vector<int>& depths, double threshold, Policy policy, int dim) {
  if (depths.size() < 3) throw std::invalid_argument("refinement needs at least three depths");
  for (size_t k = 1; k < depths.size(); ++k)
    if (depths[k] <= depths[k - 1]) throw std::invalid_argument("depths must increase");
  if (!(threshold > 1.1)) throw std::invalid_argument("growth threshold must exceed 1.1");

  DivergenceReport rep;
  rep.depths = depths;
  for (int L : depths) {
    const DyadicGrid g(dim, L, policy);
    rep.constants.push_back(ml_constant(make(g), g).value());
  }
  const size_t n = rep.constants.size();
  for (size_t k = 1; k < n; ++k) rep.ratios.push_back(rep.constants[k] / rep.constants[k - 1]);

  if (std::isinf(rep.constants[n - 1]) && std::isinf(rep.constants[n - 2])) {
    rep.verdict = Verdict::Divergent;
    return rep;
  }
  const double a = rep.ratios[rep.ratios.size() - 2], b = rep.ratios.back();
  auto near_one = [](double x) { return x <= 1.1 && x >= 1 / 1.1; };
  if (a >= threshold && b >= threshold)
    rep.verdict = Verdict::Divergent;
  else if (near_one(a) && near_one(b))
    rep.verdict = Verdict::Finite;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

NormTable NormTable::random(size_t m, size_t outer, size_t inner, uint64_t seed) {
  NormTable t{m, outer, inner, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  t.values.resize(m * outer * inner);
  for (double& x : t.values) x = u(rng) < 0.1 ? 0.0 : std::exp(-3.0 + 6.0 * u(rng));
  return t;
}

std::vector<Check> holder_vv_check(const NormTable& table, const std::vector<Rational>& s, Nesting nesting,
                                   const std::optional<std::vector<Rational>>& t) {
  const size_t m = table.m;
  if (s.size() != m) throw std::invalid_argument("need one exponent s_i per component");
  for (const auto& x : s)
    if (x < 1) throw std::invalid_argument("s_i must be >= 1");
  Rational inv_s = 0;
  for (const auto& x : s) inv_s += Rational(1) / x;
  const double sd = to_double(Rational(1) / inv_s);

  // (sum over idx of prod_i a_i(idx)^e)^{1/e} and prod_i (sum a_i(idx)^{e_i})^{1/e_i}
  auto sides = [&](const std::vector<std::vector<double>>& rows, double e, const std::vector<double>& ei) {
    std::vector<double> prods(rows.front().size(), 1.0);
    double rhs = 1;
    for (size_t i = 0; i < m; ++i) {
      for (size_t k = 0; k < prods.size(); ++k) prods[k] *= rows[i][k];
      rhs *= pow_sum(rows[i], ei[i]);
    }
    return std::pair{pow_sum(prods, e), rhs};
  };
  std::vector<double> sv;
  for (const auto& x : s) sv.push_back(to_double(x));

  std::vector<Check> out;
  if (nesting == Nesting::Single) {
    std::vector<std::vector<double>> rows(m, std::vector<double>(table.outer));
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < table.outer; ++j) rows[i][j] = table.at(i, j);
    const auto [lhs, rhs] = sides(rows, sd, sv);
    out.push_back(check_le("vv.single", "(sum_j prod_i a_ij^s)^{1/s} <= prod_i (sum_j a_ij^{s_i})^{1/s_i}", lhs, rhs));
    return out;
  }

  if (!t || t->size() != m) throw std::invalid_argument("double nesting needs one exponent t_i per component");
  Rational inv_t = 0;
  for (const auto& x : *t) {
    if (x < 1) throw std::invalid_argument("t_i must be >= 1");
    inv_t += Rational(1) / x;
  }
  const double td = to_double(Rational(1) / inv_t);
  std::vector<double> tv;
  for (const auto& x : *t) tv.push_back(to_double(x));

  // inner level per j, then the outer level on the inner norms
  std::vector<std::vector<double>> inner_norm(m, std::vector<double>(table.outer));
  std::vector<double> inner_lhs(table.outer);
  for (size_t j = 0; j < table.outer; ++j) {
    std::vector<std::vector<double>> rows(m, std::vector<double>(table.inner));
    for (size_t i = 0; i < m; ++i)
      for (size_t k = 0; k < table.inner; ++k) rows[i][k] = table.at(i, j, k);
    const auto [lhs, rhs] = sides(rows, sd, sv);
    inner_lhs[j] = lhs;
    for (size_t i = 0; i < m; ++i) inner_norm[i][j] = pow_sum(rows[i], sv[i]);
    keep_worst(out, check_le("vv.iterated-inner",
                               "per j: (sum_k prod_i a_ijk^s)^{1/s} <= prod_i (sum_k a_ijk^{s_i})^{1/s_i}", lhs, rhs));
  }
  const auto [olhs, orhs] = sides(inner_norm, td, tv);
  out.push_back(check_le("vv.iterated-outer", "(sum_j prod_i A_ij^t)^{1/t} <= prod_i (sum_j A_ij^{t_i})^{1/t_i}",
                         olhs, orhs));
  out.push_back(check_le("vv.iterated",
                         "(sum_j (sum_k prod_i a_ijk^s)^{t/s})^{1/t} <= prod_i (sum_j (sum_k a_ijk^{s_i})^{t_i/s_i})^{1/t_i}",
                         pow_sum(inner_lhs, td), orhs));
  return out;
}

}  // namespace mlw
