#pragma once

#include "mlw/rational.hpp"
#include "mlw/weight.hpp"

#include <cstdint>
#include <vector>

namespace mlw {

/// M^D_mu f(x): max over dyadic cubes Q containing x of ∫_Q |f| dmu / mu(Q).
/// Lebesgue measure when mu is null.
GridFunction dyadic_maximal(const GridFunction& f, const Weight* mu = nullptr);

/// max over dyadic Q containing the cell of num(Q)/den(Q), for cell masses
/// num and den (den strictly positive and finite).
GridFunction dyadic_maximal_ratio(const DyadicGrid& g, const std::vector<long double>& num,
                                  const std::vector<long double>& den);

/// Per cell: max over the grid's cubes containing it of prod_i avg_Q |f_i|.
GridFunction multilinear_maximal(const std::vector<GridFunction>& fs, const DyadicGrid& grid);

struct MaximalNormReport {
  double worst_ratio = 0;
  double bound = 0;  // p'
  size_t samples = 0;
  bool pass = false;
};

/// ||M^D_mu f||_{L^p(mu)} <= p' ||f||_{L^p(mu)} on random f.
MaximalNormReport maximal_norm_check(const Weight& mu, const Rational& p, size_t samples, uint64_t seed);

}  // namespace mlw
