#pragma once

#include "mlw/check.hpp"
#include "mlw/weights.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mlw {

struct SuiteConfig {
  int dim = 1;
  int depth = 10;
  Policy policy = Policy::MeshIntervals;
  uint64_t seed = 42;
  size_t samples = 50;
  std::vector<Rational> p;  // empty: suite default
  std::vector<Rational> r;
  Rational zeta{1, 2};

  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

struct VerificationReport {
  std::string suite;
  SuiteConfig config;
  std::vector<Check> checks;
  bool pass = false;

  /// pass = every check passes.
  void finalize();
  std::string to_json() const;
  std::string to_csv() const;
  static VerificationReport from_json(const std::string& text);
};

const std::vector<std::string>& suite_names();

/// Deterministic for a fixed config. One record per anchor, holding the
/// worst sample. Throws std::invalid_argument for an unknown suite.
VerificationReport run_suite(const std::string& name, const SuiteConfig& config);

enum class Verdict { Finite, Divergent, Inconclusive };
std::string to_string(Verdict v);

struct DivergenceReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<int> depths;
  std::vector<double> constants;
  std::vector<double> ratios;  // constants[k+1] / constants[k]
};

/// Rebuilds the vector weight at each depth and classifies the growth of
/// [w]: Divergent when it is infinite at the last two depths or both final
/// ratios reach the threshold, Finite when both final ratios lie within a
/// factor 1.1, Inconclusive otherwise.
DivergenceReport refinement_divergence(const std::function<VectorWeight(const DyadicGrid&)>& make,
                                       const std::vector<int>& depths, double threshold = 1.5,
                                       Policy policy = Policy::MeshIntervals, int dim = 1);

/// a_{ijk}: i = component (m of them), j = outer index, k = inner index.
struct NormTable {
  size_t m = 0, outer = 0, inner = 1;
  std::vector<double> values;

  double at(size_t i, size_t j, size_t k = 0) const { return values[(i * outer + j) * inner + k]; }
  static NormTable random(size_t m, size_t outer, size_t inner, uint64_t seed);
};

enum class Nesting { Single, Double };

/// Single: (sum_j prod_i a_ij^s)^{1/s} <= prod_i (sum_j a_ij^{s_i})^{1/s_i}
/// with 1/s = sum 1/s_i. Double: the same with inner exponents s over k and
/// outer exponents t over j, checked at both levels and end to end.
std::vector<Check> holder_vv_check(const NormTable& table, const std::vector<Rational>& s, Nesting nesting,
                                   const std::optional<std::vector<Rational>>& t = std::nullopt);

}  // namespace mlw
