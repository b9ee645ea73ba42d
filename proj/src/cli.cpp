#include "mlw/cli.hpp"

#include "mlw/sparse.hpp"
#include "mlw/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace mlw {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double parse_real(const std::string& s, const std::string& what) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isfinite(v)) throw UsageError("bad " + what + ": '" + s + "'");
  return v;
}

uint64_t parse_seed(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw UsageError("bad seed: '" + s + "'");
  return std::stoull(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

json rjson(const Rational& q) { return to_string(q); }

json rjson(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Flat key/value records become a two-line CSV; anything nested stays JSON.
std::string to_csv(const json& j) {
  if (!j.is_object()) return j.dump() + "\n";
  std::string head, row;
  for (auto it = j.begin(); it != j.end(); ++it) {
    head += (head.empty() ? "" : ",") + it.key();
    const std::string v = it->is_string() ? it->get<std::string>() : it->dump();
    const bool quote = v.find_first_of(",\"") != std::string::npos;
    std::string cell = v;
    if (quote) {
      cell = "\"";
      for (char c : v) cell += c == '"' ? std::string("\"\"") : std::string(1, c);
      cell += "\"";
    }
    row += (it == j.begin() ? "" : ",") + cell;
  }
  return head + "\n" + row + "\n";
}

struct Options {
  int dim = 1;
  int depth = 10;
  std::string policy = "MeshIntervals";
  std::string seed = "42";
  size_t samples = 50;
  std::string out = "json";
  std::string output;

  std::string p, q, r, s, zeta = "1/2";
  std::vector<std::string> weights;
  std::vector<std::string> inputs;
  std::string family;
  std::string in;
  std::string suite;
  double lambda = 4;
  bool bh = false;
  bool cz = false;

  DyadicGrid grid() const { return DyadicGrid(dim, depth, parse_policy(policy)); }
};

std::vector<Rational> need_list(const std::string& text, const char* name) {
  if (text.empty()) throw UsageError(std::string("missing --") + name);
  return parse_rational_list(text);
}

class Emitter {
 public:
  Emitter(const Options& o, std::ostream& out) : o_(o), out_(out) {}
  void emit(const std::string& json_text, const std::string& csv_text) const {
    const std::string& body = o_.out == "csv" ? csv_text : json_text;
    if (o_.output.empty()) {
      out_ << body;
      if (!body.empty() && body.back() != '\n') out_ << '\n';
      return;
    }
    std::ofstream f(o_.output);
    if (!f) throw UsageError("cannot write '" + o_.output + "'");
    f << body;
  }
  void emit(const json& j) const { emit(j.dump(2), to_csv(j)); }

 private:
  const Options& o_;
  std::ostream& out_;
};

std::vector<GridFunction> read_inputs(const std::vector<std::string>& paths, const DyadicGrid& g) {
  std::vector<GridFunction> out;
  for (const auto& p : paths) out.push_back(read_grid_csv(p, g));
  return out;
}

// commands -------------------------------------------------------------------

int cmd_constants(const Options& o, const Emitter& em) {
  const DyadicGrid g = o.grid();
  std::vector<Weight> ws;
  for (const auto& spec : o.weights) ws.push_back(parse_weight_spec(spec, g));
  const ExponentConfig cfg{need_list(o.p, "p"), need_list(o.r, "r")};
  if (ws.size() != cfg.m()) throw UsageError("need one weight per exponent p_i");
  const Order order = check_order(cfg.r, cfg.p);
  if (order == Order::None) throw ExponentError("order violation: r is not below p");
  const VectorWeight wv(std::move(ws), cfg);
  const auto res = ml_constant_detail(wv, g);
  json j = {{"constant", num(res.value.value())},
            {"order", to_string(order)},
            {"cube_lo", res.argmax.lo[0]},
            {"cube_hi", res.argmax.hi[0]}};
  em.emit(j);
  return res.value.is_infinite() ? kExitInfinite : kExitPass;
}

json derived_json(const ExponentConfig& cfg) {
  const auto dx = derived(cfg);
  json delta = json::array(), theta = json::array();
  for (size_t i = 0; i <= dx.m; ++i) delta.push_back(dx.delta(i).str());
  for (size_t i = 0; i < dx.m; ++i) theta.push_back(to_string(dx.theta(i)));
  return {{"m", dx.m},
          {"order", to_string(check_order(cfg.r, cfg.p))},
          {"inv_rbar", rjson(dx.inv_rbar)},
          {"rbar", rjson(dx.rbar)},
          {"inv_p", rjson(dx.inv_p)},
          {"p", rjson(dx.p())},
          {"inv_pm1", rjson(dx.inv_pm1)},
          {"S", rjson(dx.S())},
          {"inv_delta", rjson(dx.inv_delta)},
          {"delta", delta},
          {"inv_theta", rjson(dx.inv_theta)},
          {"theta", theta},
          {"inv_rho", rjson(dx.inv_rho)},
          {"rho", rjson(dx.rho())}};
}

int cmd_exponents(const std::string& what, const Options& o, const Emitter& em) {
  if (what == "derive") {
    em.emit(derived_json(ExponentConfig{need_list(o.p, "p"), need_list(o.r, "r")}));
  } else if (what == "path") {
    const auto path = extrapolation_path(need_list(o.p, "p"), need_list(o.q, "q"), need_list(o.r, "r"));
    json steps = json::array();
    for (const auto& st : path) {
      json certs = json::array();
      for (const auto& c : st.certificates)
        certs.push_back({{"name", c.name},
                         {"lhs", rjson(c.lhs)},
                         {"relation", c.relation},
                         {"rhs", rjson(c.rhs)},
                         {"holds", c.holds}});
      steps.push_back(
          {{"from", rjson(st.from)}, {"to", rjson(st.to)}, {"changed_index", st.changed_index}, {"certificates", certs}});
    }
    em.emit(steps);
  } else if (what == "interval") {
    Interval iv;
    if (o.bh) {
      std::optional<std::vector<Rational>> s;
      if (!o.s.empty()) s = parse_rational_list(o.s);
      iv = bh_power_interval(need_list(o.p, "p"), s);
    } else {
      iv = power_weight_interval(need_list(o.q, "q"), need_list(o.r, "r"));
    }
    em.emit(json{{"lower", rjson(iv.lower)}, {"upper", rjson(iv.upper)}, {"empty", iv.empty()}});
  } else {
    const auto r = need_list(o.r, "r");
    const auto nat = natural_exponents(r);
    json j = {{"natural_p", rjson(nat.p)}, {"natural_p_total", rjson(nat.p_total)}};
    if (r.size() == 3 && std::all_of(r.begin(), r.end(), [](const Rational& x) { return x > 1; }))
      j["bht_admissible"] = bht_admissible(r);
    if (!o.p.empty()) j["order"] = to_string(check_order(r, parse_rational_list(o.p)));
    em.emit(j);
  }
  return kExitPass;
}

int cmd_verify(const Options& o, const Emitter& em) {
  SuiteConfig cfg;
  cfg.dim = o.dim;
  cfg.depth = o.depth;
  cfg.policy = parse_policy(o.policy);
  cfg.seed = parse_seed(o.seed);
  cfg.samples = o.samples;
  if (!o.p.empty()) cfg.p = parse_rational_list(o.p);
  if (!o.r.empty()) cfg.r = parse_rational_list(o.r);
  cfg.zeta = parse_rational(o.zeta);
  const auto rep = run_suite(o.suite, cfg);
  em.emit(rep.to_json(), rep.to_csv());
  return rep.pass ? kExitPass : kExitCheckFailed;
}

int cmd_sparse(const std::string& what, const Options& o, const Emitter& em) {
  const DyadicGrid g = o.grid();
  if (what == "build") {
    SparseFamily s = o.cz ? cz_sparse(read_inputs(o.inputs, g), g, o.lambda)
                          : random_sparse(g, parse_rational(o.zeta), parse_seed(o.seed));
    const std::string text = sparse_to_json(s);
    em.emit(text, text);
    return is_sparse(s) ? kExitPass : kExitCheckFailed;
  }
  if (o.family.empty()) throw UsageError("missing --family");
  const SparseFamily s = sparse_from_json(read_file(o.family), g);
  const auto r = need_list(o.r, "r");
  std::vector<GridFunction> fs;
  if (o.inputs.empty()) {
    for (size_t i = 0; i < r.size(); ++i) fs.push_back(GridFunction::constant(g, 1.0));
  } else {
    fs = read_inputs(o.inputs, g);
  }
  if (fs.size() != r.size()) throw UsageError("need one input per exponent r_i (the last one is h)");
  const GridFunction h = fs.back();
  fs.pop_back();
  const bool sparse = is_sparse(s);
  em.emit(json{{"form", num(sparse_form(s, r, fs, h))}, {"is_sparse", sparse}, {"zeta", rjson(s.zeta)}});
  return sparse ? kExitPass : kExitCheckFailed;
}

int cmd_report(const Options& o, const Emitter& em) {
  if (o.in.empty()) throw UsageError("missing --in");
  auto rep = VerificationReport::from_json(read_file(o.in));
  const bool recorded = rep.pass;
  rep.finalize();
  if (recorded != rep.pass) throw UsageError("report's pass flag disagrees with its checks");
  em.emit(rep.to_json(), rep.to_csv());
  return rep.pass ? kExitPass : kExitCheckFailed;
}

}  // namespace

Weight parse_weight_spec(const std::string& spec, const DyadicGrid& grid) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw UsageError("empty weight spec");
  auto value = [&](const std::string& part, const std::string& key) {
    if (part.rfind(key + "=", 0) != 0) throw UsageError("weight spec '" + spec + "' expects " + key + "=");
    return part.substr(key.size() + 1);
  };
  if (parts[0] == "power" && parts.size() == 2) return Weight::power(grid, parse_real(value(parts[1], "a"), "a"));
  if (parts[0] == "grid" && parts.size() >= 2) return Weight::sampled(read_grid_csv(spec.substr(5), grid));
  if (parts[0] == "gen" && parts.size() == 4) {
    const uint64_t seed = parse_seed(value(parts[3], "seed"));
    if (parts[1] == "cr")
      return gen_coifman_rochberg(random_point_masses(grid, seed), parse_real(value(parts[2], "eta"), "eta"));
    if (parts[1] == "logu") return gen_log_oscillation(grid, parse_real(value(parts[2], "osc"), "osc"), seed);
    if (parts[1] == "expbmo")
      return gen_exp_bmo(random_log_singularity(grid, seed), parse_real(value(parts[2], "lambda"), "lambda"));
  }
  throw UsageError("unknown weight spec '" + spec + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of multilinear weight inequalities on dyadic grids", "mlw"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--dim", o.dim, "dimension (1 or 2)")->check(CLI::IsMember({1, 2}));
    sub->add_option("--depth", o.depth, "grid depth L")->check(CLI::Range(1, 24));
    sub->add_option("--policy", o.policy, "Dyadic, ShiftedDyadic or MeshIntervals");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--samples", o.samples, "sample count")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", o.output, "write to this file instead of stdout");
  };

  auto* constants = app.add_subcommand("constants", "vector weight characteristic constant");
  common(constants);
  constants->add_option("--weights", o.weights, "comma-separated weight specs")->delimiter(',')->required();
  constants->add_option("--p", o.p, "p_1,...,p_m")->required();
  constants->add_option("--r", o.r, "r_1,...,r_{m+1}")->required();

  auto* exponents = app.add_subcommand("exponents", "exact exponent arithmetic");
  exponents->require_subcommand(1);
  std::string exp_what;
  for (const char* name : {"derive", "path", "interval", "admissible"}) {
    auto* sub = exponents->add_subcommand(name);
    common(sub);
    sub->add_option("--p", o.p);
    sub->add_option("--q", o.q);
    sub->add_option("--r", o.r);
    if (std::string(name) == "interval") {
      sub->add_option("--s", o.s, "vector-valued exponents for --bh");
      sub->add_flag("--bh", o.bh, "bilinear Hilbert transform range in terms of --p");
    }
    sub->callback([&exp_what, name] { exp_what = name; });
  }

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option("suite", o.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--p", o.p);
  verify->add_option("--r", o.r);
  verify->add_option("--zeta", o.zeta);

  auto* sparse = app.add_subcommand("sparse", "sparse families and forms");
  sparse->require_subcommand(1);
  std::string sparse_what;
  auto* build = sparse->add_subcommand("build", "random or stopping-time family");
  common(build);
  build->add_option("--zeta", o.zeta);
  build->add_flag("--cz", o.cz, "stopping-time family from --inputs");
  build->add_option("--inputs", o.inputs, "comma-separated CSV grid functions")->delimiter(',');
  build->add_option("--lambda", o.lambda, "stopping threshold");
  build->callback([&] { sparse_what = "build"; });
  auto* eval = sparse->add_subcommand("eval", "evaluate the sparse form");
  common(eval);
  eval->add_option("--family", o.family, "family JSON file")->required();
  eval->add_option("--r", o.r)->required();
  eval->add_option("--inputs", o.inputs, "f_1,...,f_m,h as CSV files")->delimiter(',');
  eval->callback([&] { sparse_what = "eval"; });

  auto* report = app.add_subcommand("report", "re-emit a saved report");
  common(report);
  report->add_option("--in", o.in, "report JSON file")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const Emitter em(o, out);
    if (*constants) return cmd_constants(o, em);
    if (*exponents) return cmd_exponents(exp_what, o, em);
    if (*verify) return cmd_verify(o, em);
    if (*sparse) return cmd_sparse(sparse_what, o, em);
    return cmd_report(o, em);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfinite;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace mlw
