#include "mlw/maximal.hpp"

#include "mlw/weights.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mlw {

GridFunction dyadic_maximal_ratio(const DyadicGrid& g, const std::vector<long double>& num,
                                  const std::vector<long double>& den) {
  if (num.size() != g.cells() || den.size() != g.cells()) throw GridError("cell mass size mismatch");
  for (long double x : den)
    if (!(x > 0) || std::isinf(x)) throw std::domain_error("maximal function needs finite positive cell masses");
  const int L = g.depth;
  // sums per level, finest first; level k has 2^k cells per axis
  std::vector<std::vector<long double>> ns(size_t(L) + 1), ds(size_t(L) + 1);
  ns[size_t(L)] = num;
  ds[size_t(L)] = den;
  for (int k = L - 1; k >= 0; --k) {
    const size_t side = size_t(1) << k, fine = side * 2;
    const size_t rows = g.dim == 2 ? side : 1;
    ns[size_t(k)].assign(rows * side, 0);
    ds[size_t(k)].assign(rows * side, 0);
    for (size_t y = 0; y < rows; ++y)
      for (size_t x = 0; x < side; ++x) {
        long double a = 0, b = 0;
        const size_t ny = g.dim == 2 ? 2 : 1;
        for (size_t dy = 0; dy < ny; ++dy)
          for (size_t dx = 0; dx < 2; ++dx) {
            const size_t at = (g.dim == 2 ? (2 * y + dy) * fine : 0) + 2 * x + dx;
            a += ns[size_t(k) + 1][at];
            b += ds[size_t(k) + 1][at];
          }
        ns[size_t(k)][y * side + x] = a;
        ds[size_t(k)][y * side + x] = b;
      }
  }
  std::vector<double> best{double(ns[0][0] / ds[0][0])};
  for (int k = 1; k <= L; ++k) {
    const size_t side = size_t(1) << k;
    const size_t rows = g.dim == 2 ? side : 1;
    std::vector<double> next(rows * side);
    for (size_t y = 0; y < rows; ++y)
      for (size_t x = 0; x < side; ++x) {
        const size_t parent = (g.dim == 2 ? (y / 2) * (side / 2) : 0) + x / 2;
        const size_t at = y * side + x;
        next[at] = std::max(best[parent], double(ns[size_t(k)][at] / ds[size_t(k)][at]));
      }
    best = std::move(next);
  }
  return GridFunction(g, std::move(best), true);
}

GridFunction dyadic_maximal(const GridFunction& f, const Weight* mu) {
  const DyadicGrid& g = f.grid();
  std::vector<long double> num(g.cells()), den(g.cells());
  if (mu) {
    if (!mu->grid().same_mesh(g)) throw GridError("measure and function meshes differ");
    den = mu->cell_integrals();
  } else {
    std::fill(den.begin(), den.end(), (long double)g.cell_volume());
  }
  for (size_t c = 0; c < num.size(); ++c) num[c] = std::fabs(f[c]) * den[c];
  return dyadic_maximal_ratio(g, num, den);
}

GridFunction multilinear_maximal(const std::vector<GridFunction>& fs, const DyadicGrid& grid) {
  if (fs.empty()) throw std::invalid_argument("need at least one function");
  std::vector<CubeIntegrator> ints;
  ints.reserve(fs.size());
  for (const auto& f : fs) {
    if (!f.grid().same_mesh(grid)) throw GridError("function and grid meshes differ");
    const auto a = f.abs();
    const long double h = grid.cell_volume();
    std::vector<long double> mass(a.size());
    for (size_t c = 0; c < a.size(); ++c) mass[c] = a[c] * h;
    ints.emplace_back(grid, mass);
  }
  auto value = [&](const Cube& q) {
    const long double vol = volume(grid, q);
    long double v = 1;
    for (const auto& in : ints) v *= in.over(q) / vol;
    return double(v);
  };
  std::vector<double> out(grid.cells(), 0.0);
  if (grid.policy == Policy::MeshIntervals) {
    // cell x lies in [a,b) iff a <= x < b: suffix maxima over b for each a
    const int n = grid.side();
    std::vector<double> suffix(size_t(n) + 1);
    Cube q;
    q.level = -1;
    for (int a = 0; a < n; ++a) {
      suffix[size_t(n)] = 0;
      for (int b = n; b > a; --b) {
        q.lo[0] = a;
        q.hi[0] = b;
        suffix[size_t(b) - 1] = std::max(suffix[size_t(b)], value(q));
      }
      for (int x = a; x < n; ++x) out[size_t(x)] = std::max(out[size_t(x)], suffix[size_t(x)]);
    }
  } else {
    for_each_cube(grid, [&](const Cube& q) {
      const double v = value(q);
      for (size_t c : cells_of(grid, q)) out[c] = std::max(out[c], v);
    });
  }
  return GridFunction(grid, std::move(out), true);
}

MaximalNormReport maximal_norm_check(const Weight& mu, const Rational& p, size_t samples, uint64_t seed) {
  if (p <= 1) throw std::invalid_argument("maximal norm check needs p > 1");
  const DyadicGrid& g = mu.grid();
  const double pd = to_double(p);
  MaximalNormReport rep;
  rep.bound = to_double(p / (p - 1));
  std::mt19937_64 rng(seed);
  for (size_t s = 0; s < samples; ++s) {
    // alternate between spread-out data and indicators of random dyadic cubes
    GridFunction f = GridFunction::constant(g, 1.0);
    if (s % 2 == 0) {
      f = random_function(g, rng());
    } else {
      const int level = int(rng() % uint64_t(g.depth + 1));
      const int count = 1 << level;
      const std::array<int, 2> idx{int(rng() % uint64_t(count)), g.dim == 2 ? int(rng() % uint64_t(count)) : 0};
      std::vector<double> v(g.cells(), 0.0);
      for (size_t c : cells_of(g, dyadic_cube(g, level, idx))) v[c] = 1.0;
      f = GridFunction(g, std::move(v), true);
    }
    const double lhs = lp_norm(dyadic_maximal(f, &mu), mu, pd).value();
    const double rhs = lp_norm(f, mu, pd).value();
    if (rhs > 0) rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
    ++rep.samples;
  }
  rep.pass = rep.worst_ratio <= rep.bound * (1 + kInequalitySlack);
  return rep;
}

}  // namespace mlw
