#pragma once

#include "mlw/check.hpp"
#include "mlw/weights.hpp"

#include <vector>

namespace mlw {

struct BmoFunction {
  GridFunction b;
  double bmo = 0;      // sup_Q avg_Q |b - b_Q|
  double bmo_exp = 0;  // sup_Q of the exp L Luxemburg norm of b - b_Q
};

/// Both norms over the grid's cubes. The per-cube Luxemburg value is the
/// feasible end of a bisection bracket, so bmo <= bmo_exp holds exactly.
BmoFunction bmo_norms(const GridFunction& b, const DyadicGrid& grid);

struct ExpWeightReport {
  double constant = 0;  // [e^{lambda b}]_{A_q}
  double bound = 0;     // 4^{|lambda| ||b||}
  Check check;
};

/// Requires |lambda| * bmo_exp <= min(1, q - 1).
ExpWeightReport exp_weight_check(const BmoFunction& b, double lambda, const Rational& q, const DyadicGrid& grid);

struct ReverseHolderResult {
  double eta = 1;
  double eta_prime = 0;  // +infinity when eta = 1
};

/// Largest eta in [1, cap] (to 1e-6) with (avg v^eta)^{1/eta} <= 2 avg v on
/// every cube.
ReverseHolderResult reverse_holder_eta(const Weight& v, const DyadicGrid& grid, double cap = 64);

struct CommutatorReport {
  double eta_prime = 0;
  std::vector<double> gamma_max;  // (1/eta') min{1/delta_i, s/(delta_{m+1} s_i)}
  double v_constant = 0;
  double w_constant = 0;
  std::vector<Check> checks;
};

struct CommutatorResult {
  VectorWeight wv;
  CommutatorReport report;
};

/// w_i = v_i exp(-gamma_i s_i b_i) and [w] <= 2^{(1-r)/r + 2 sum |gamma_i|} [v].
/// Needs strict order, every ||b_i||_exp = 1 and |gamma_i| <= gamma_max_i.
CommutatorResult commutator_perturb(const VectorWeight& vv, const std::vector<BmoFunction>& b,
                                    const std::vector<double>& gamma, const DyadicGrid& grid);

/// Just the admissible |gamma_i| bounds and eta' for vv.
CommutatorReport commutator_limits(const VectorWeight& vv, const DyadicGrid& grid);

/// b / ||b||_exp; requires b non-constant.
BmoFunction normalize_bmo(const BmoFunction& b, const DyadicGrid& grid);

}  // namespace mlw
