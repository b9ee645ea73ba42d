#pragma once

#include "mlw/check.hpp"
#include "mlw/exponents.hpp"
#include "mlw/weight.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mlw {

/// m weights together with their exponent configuration.
struct VectorWeight {
  std::vector<Weight> weights;
  ExponentConfig cfg;

  VectorWeight(std::vector<Weight> w, ExponentConfig c);
  size_t m() const { return weights.size(); }
  const DyadicGrid& grid() const { return weights.front().grid(); }
};

enum class ClassKind { Ap, A1, Apr };

/// A_p(mu), A_1(mu) or A_{p,r}(mu).
struct ScalarClass {
  ClassKind kind = ClassKind::A1;
  Rational p = 1;
  double r = 1;

  /// A_q for q >= 1 (A_1 when q = 1).
  static ScalarClass A(const Rational& q);
  static ScalarClass Apr(const Rational& p, double r);
};

namespace engine {

/// (num(Q) / den(Q))^exponent; den == nullptr means |Q|.
struct AverageTerm {
  const CubeIntegrator* num = nullptr;
  const CubeIntegrator* den = nullptr;
  double exponent = 1;
};

/// exp(exponent * max over Q of log_values).
struct SupTerm {
  const CubeMaximum* log_values = nullptr;
  double exponent = 1;
};

struct SupResult {
  ExtendedReal value;
  Cube argmax;
};

/// Supremum over the grid's cubes of the product of the terms, computed in
/// log space. Exponents must be nonnegative.
SupResult sup_product(const DyadicGrid& grid, std::span<const AverageTerm> avgs, std::span<const SupTerm> sups);

/// Log of the per-cube product for one cube.
double log_product(const DyadicGrid& grid, const Cube& q, std::span<const AverageTerm> avgs,
                   std::span<const SupTerm> sups);

}  // namespace engine

/// sup over cubes of the defining quantity of the class.
/// A_p:     avg_mu v * (avg_mu v^{1-p'})^{p-1}
/// A_1:     avg_mu v * esssup v^{-1}
/// A_{p,r}: avg_mu v^r * (avg_mu v^{-p'})^{r/p'}   (esssup v^{-r} when p = 1)
ExtendedReal scalar_constant(const Weight& v, const ScalarClass& cls, const Weight* mu, const DyadicGrid& grid);

/// w = prod_i w_i^{p/p_i}.
Weight product_weight(const VectorWeight& wv);

/// The per-cube terms of [w]_{A_{p,r}}, kept for cube-by-cube evaluation.
/// Not copyable: the terms point into the owned integrators.
struct ClassTerms {
  DyadicGrid grid;
  std::vector<CubeIntegrator> ints;
  std::vector<CubeMaximum> maxs;
  std::vector<engine::AverageTerm> avgs;
  std::vector<engine::SupTerm> sups;

  ClassTerms() = default;
  ClassTerms(ClassTerms&&) = default;
  ClassTerms(const ClassTerms&) = delete;
  ClassTerms& operator=(const ClassTerms&) = delete;
  ClassTerms& operator=(ClassTerms&&) = default;

  /// log of the per-cube quantity at q.
  double log_at(const Cube& q) const { return engine::log_product(grid, q, avgs, sups); }
};

ClassTerms ml_terms(const VectorWeight& wv, const DyadicGrid& grid);

/// [w]_{A_{p,r}}; requires r below p.
ExtendedReal ml_constant(const VectorWeight& wv, const DyadicGrid& grid);
/// Same, also reporting the maximizing cube.
engine::SupResult ml_constant_detail(const VectorWeight& wv, const DyadicGrid& grid);

struct Decomposition {
  Weight what;                      // (prod_{i<m} w_i^{1/p_i})^rho
  Weight cap_w;                     // w^{r_m/p} what^{-r_m/delta_{m+1}}
  ExtendedReal vector_constant;     // [w]_{A_{p,r}}
  bool cap_w_consistent = false;    // both expressions for W agree cellwise
  std::vector<Check> bounds;        // component, what and W class bounds
};

/// Requires a finite [w]_{A_{p,r}}.
Decomposition lemma_decompose(const VectorWeight& wv, const DyadicGrid& grid);

/// w_m = W^{p_m/r_m} what^{-p_m/delta_m}. With corrected = false the sign
/// of the second exponent is flipped (kept only to pin the correct sign).
Weight rebuild_last_weight(const Weight& cap_w, const Weight& what, const ExponentConfig& cfg,
                           bool corrected = true);

struct Reconstruction {
  VectorWeight wv;
  Check bound;  // [w] <= [W]^{1/delta_{m+1}} [what]^{1/rho} prod [w_i^{theta_i/p_i}]^{1/theta_i}
};

Reconstruction lemma_reconstruct(const std::vector<Weight>& components, const Weight& what, const Weight& cap_w,
                                 const ExponentConfig& cfg, const DyadicGrid& grid);

struct NormIdentityReport {
  double lhs_direct = 0, lhs_rewritten = 0;
  double rhs_direct = 0, rhs_rewritten = 0;
  std::vector<Check> checks;
};

/// ||f||_{L^p(w)} and ||f||_{L^{p_m}(w_m)} against their rewritten forms in
/// terms of what and W. last_weight overrides w_m on the direct side.
NormIdentityReport norm_identity_check(const GridFunction& f, const VectorWeight& wv, const Decomposition& dec,
                                       const Weight* last_weight = nullptr);

enum class Direction { Decompose, Reconstruct };

/// The variant with all of w_1..w_m split off; needs every p_i > 1.
std::vector<Check> lemma2_check(const VectorWeight& wv, const DyadicGrid& grid, Direction direction);

// generators ----------------------------------------------------------------

/// (M^D f)^eta with Lebesgue dyadic maximal function, 0 < eta < 1.
Weight gen_coifman_rochberg(const GridFunction& f, double eta);
/// exp(osc * u) with u a multiscale random field, |u| <= 1.
Weight gen_log_oscillation(const DyadicGrid& g, double osc, uint64_t seed);
/// exp(lambda * b).
Weight gen_exp_bmo(const GridFunction& b, double lambda);
/// Vector weight assembled through lemma_reconstruct from Coifman-Rochberg
/// pieces, so that every piece of the factorization is an A_1-type weight.
VectorWeight gen_lemma_constructive(uint64_t seed, const ExponentConfig& cfg, const DyadicGrid& g);

/// A few random point masses, positive everywhere after maximal averaging.
GridFunction random_point_masses(const DyadicGrid& g, uint64_t seed);
/// log(1/|x - x0|) type function, a typical BMO element.
GridFunction random_log_singularity(const DyadicGrid& g, uint64_t seed);
/// Draws one of the three generator families with random parameters.
Weight random_weight(const DyadicGrid& g, uint64_t seed);
/// Random positive grid function.
GridFunction random_function(const DyadicGrid& g, uint64_t seed);

/// FNV-1a based seed derivation from a master seed and a label.
uint64_t derive_seed(uint64_t master, const std::string& label);

}  // namespace mlw
