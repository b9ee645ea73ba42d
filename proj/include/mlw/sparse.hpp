#pragma once

#include "mlw/check.hpp"
#include "mlw/weights.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mlw {

/// Dyadic cubes Q with explicit sets E_Q of finest cells and constant zeta.
struct SparseFamily {
  DyadicGrid grid;
  std::vector<Cube> cubes;
  std::vector<std::vector<size_t>> eq_sets;
  Rational zeta;
};

/// E_Q inside Q, |E_Q| > zeta |Q| and the E_Q pairwise disjoint.
bool is_sparse(const SparseFamily& s);

/// Stopping-tree family with the requested zeta, deterministic per seed.
SparseFamily random_sparse(const DyadicGrid& g, const Rational& zeta, uint64_t seed);

/// Maximal dyadic subcubes where prod avg|f_i| exceeds lambda times the
/// value at the selecting cube. The reported zeta is 1023/1024 of the
/// smallest |E_Q|/|Q|.
SparseFamily cz_sparse(const std::vector<GridFunction>& fs, const DyadicGrid& grid, double lambda);

/// sum over Q of prod avg_Q|f_i| chi_Q.
GridFunction sparse_operator(const SparseFamily& s, const std::vector<GridFunction>& fs);

/// sum_Q |Q| prod_{i<=m+1} (avg_Q |f_i|^{r_i})^{1/r_i} with f_{m+1} = h.
double sparse_form(const SparseFamily& s, const std::vector<Rational>& r, const std::vector<GridFunction>& fs,
                   const GridFunction& h);

struct DualWeightSet {
  std::vector<Weight> sigma;  // m+1 weights
  std::vector<Check> checks;  // product identity and characteristic identity
};

/// sigma_i = w_i^{-r/(1-r)}, sigma_{m+1} = w^{(p'-1) r/(1-r)}. Needs natural
/// exponents p_i = r_i/r.
DualWeightSet dual_weights(const VectorWeight& wv, const DyadicGrid& grid);

struct FormCertificate {
  std::vector<double> lines;  // successive members of the duality chain
  Rational constant;          // zeta^{-1} (1-r)^{-(m+1)}
  double c0 = 0;              // constant [w]^{1/(1-r)}
  std::vector<Check> checks;
};

/// Evaluates the duality chain for one sparse family and its inputs.
FormCertificate form_bound_certificate(const SparseFamily& s, const VectorWeight& wv,
                                       const std::vector<GridFunction>& fs, const GridFunction& h,
                                       const DyadicGrid& grid);

/// Test functions f_i = sigma_i^{1/r_i} chi_Q on the single-cube family {Q}.
std::vector<Check> necessity_extract(const Cube& q, const VectorWeight& wv, double c0, const DyadicGrid& grid);

/// Worst case of necessity_extract over every cube of the grid.
std::vector<Check> necessity_sweep(const VectorWeight& wv, double c0, const DyadicGrid& grid);

std::string sparse_to_json(const SparseFamily& s);
SparseFamily sparse_from_json(const std::string& text, const DyadicGrid& grid);

}  // namespace mlw
