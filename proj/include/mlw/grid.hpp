#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace mlw {

enum class Policy { Dyadic, ShiftedDyadic, MeshIntervals };

std::string to_string(Policy p);
Policy parse_policy(const std::string& s);

struct GridError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Uniform mesh of 2^{nL} cells on [0,1)^n together with the family of
/// cubes that suprema range over.
struct DyadicGrid {
  int dim = 1;
  int depth = 1;
  Policy policy = Policy::MeshIntervals;

  DyadicGrid() = default;
  DyadicGrid(int dim, int depth, Policy policy = Policy::MeshIntervals);

  int side() const { return 1 << depth; }
  size_t cells() const { return size_t(1) << (dim * depth); }
  double cell_volume() const { return std::ldexp(1.0, -dim * depth); }
  DyadicGrid with_policy(Policy p) const { return DyadicGrid(dim, depth, p); }
  bool same_mesh(const DyadicGrid& o) const { return dim == o.dim && depth == o.depth; }
  bool operator==(const DyadicGrid& o) const = default;
};

/// A box [lo, hi) in finest-cell coordinates. Dyadic cubes carry their level
/// and index; ShiftedDyadic cubes also carry the translate they come from;
/// mesh intervals have level -1.
struct Cube {
  int level = 0;
  int shift = 0;
  std::array<int, 2> index{0, 0};
  std::array<int, 2> lo{0, 0};
  std::array<int, 2> hi{1, 1};

  long long cell_count() const { return (long long)(hi[0] - lo[0]) * (hi[1] - lo[1]); }
  bool contains(int x, int y = 0) const { return lo[0] <= x && x < hi[0] && lo[1] <= y && y < hi[1]; }
  bool operator==(const Cube& o) const { return lo == o.lo && hi == o.hi; }
};

Cube root_cube(const DyadicGrid& g);
Cube dyadic_cube(const DyadicGrid& g, int level, std::array<int, 2> index);
/// Row-major cell indices covered by the cube.
std::vector<size_t> cells_of(const DyadicGrid& g, const Cube& q);
double volume(const DyadicGrid& g, const Cube& q);

/// Visits every cube of the grid's policy. MeshIntervals is enumerated
/// lazily so that deep grids never materialize the full family. A visitor
/// returning bool stops the enumeration by returning false.
template <class F>
void for_each_cube(const DyadicGrid& g, F&& visit);

std::vector<Cube> cubes(const DyadicGrid& g);

/// Nonnegative real or +infinity.
class ExtendedReal {
 public:
  ExtendedReal() = default;
  ExtendedReal(double v);
  static ExtendedReal infinity() { return ExtendedReal(std::numeric_limits<double>::infinity()); }

  bool is_infinite() const { return std::isinf(v_); }
  bool is_finite() const { return !is_infinite(); }
  double value() const { return v_; }
  explicit operator double() const { return v_; }

  ExtendedReal operator*(const ExtendedReal& o) const;
  ExtendedReal pow(double e) const;
  auto operator<=>(const ExtendedReal& o) const = default;

 private:
  double v_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x);

/// One real value per finest cell, row-major.
class GridFunction {
 public:
  GridFunction(const DyadicGrid& g, std::vector<double> values, bool nonnegative = false);
  static GridFunction constant(const DyadicGrid& g, double c);

  const DyadicGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](size_t c) const { return values_[c]; }
  size_t size() const { return values_.size(); }
  bool nonnegative() const { return nonnegative_; }

  GridFunction abs() const;

 private:
  DyadicGrid grid_;
  std::vector<double> values_;
  bool nonnegative_;
};

GridFunction read_grid_csv(const std::string& path, const DyadicGrid& g);
void write_grid_csv(const std::string& path, const GridFunction& f);

/// Neumaier-compensated running sum in extended precision.
class CompensatedSum {
 public:
  void add(long double x) {
    long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0;
  long double comp_ = 0;
};

/// Per-cell masses (possibly +infinity) with O(1) sums over any cube.
class CubeIntegrator {
 public:
  CubeIntegrator() = default;
  CubeIntegrator(const DyadicGrid& g, const std::vector<long double>& cell_mass);

  long double over(const Cube& q) const;
  long double total() const;
  const std::vector<long double>& cells() const { return mass_; }

 private:
  DyadicGrid grid_;
  std::vector<long double> mass_;
  std::vector<long double> prefix_;
  std::vector<int> inf_prefix_;
};

/// Per-cell values with O(1) (1D) range maxima.
class CubeMaximum {
 public:
  CubeMaximum() = default;
  CubeMaximum(const DyadicGrid& g, std::vector<double> cell_values);

  double over(const Cube& q) const;

 private:
  DyadicGrid grid_;
  std::vector<std::vector<double>> table_;
};

// ---------------------------------------------------------------------------

namespace detail {
void shifted_offsets(const DyadicGrid& g, std::vector<int>& offsets);

template <class F>
bool visit_cube(F& f, const Cube& q) {
  if constexpr (std::is_same_v<std::invoke_result_t<F&, const Cube&>, bool>) {
    return f(q);
  } else {
    f(q);
    return true;
  }
}
}  // namespace detail

template <class F>
void for_each_cube(const DyadicGrid& g, F&& visit) {
  const int n = g.side();
  if (g.policy == Policy::MeshIntervals) {
    Cube q;
    q.level = -1;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b <= n; ++b) {
        q.lo[0] = a;
        q.hi[0] = b;
        q.index[0] = a;
        if (!detail::visit_cube(visit, q)) return;
      }
    return;
  }
  if (g.policy == Policy::Dyadic) {
    for (int k = 0; k <= g.depth; ++k) {
      const int s = n >> k, count = 1 << k;
      const int ycount = g.dim == 2 ? count : 1;
      for (int j = 0; j < ycount; ++j)
        for (int i = 0; i < count; ++i) {
          Cube q;
          q.level = k;
          q.index = {i, j};
          q.lo = {i * s, g.dim == 2 ? j * s : 0};
          q.hi = {(i + 1) * s, g.dim == 2 ? (j + 1) * s : 1};
          if (!detail::visit_cube(visit, q)) return;
        }
    }
    return;
  }
  // ShiftedDyadic: the dyadic grid translated by t/3 (t = 0,1,2 per axis),
  // clipped to the domain; boxes already produced by an earlier translate
  // are skipped.
  std::vector<int> offsets;
  detail::shifted_offsets(g, offsets);
  const int translates = g.dim == 2 ? 9 : 3;
  std::set<std::array<int, 4>> seen;
  for (int t = 0; t < translates; ++t) {
    const int ox = offsets[t % 3], oy = g.dim == 2 ? offsets[t / 3] : 0;
    for (int k = 0; k <= g.depth; ++k) {
      const int s = n >> k;
      auto spans = [&](int o) {
        std::vector<std::array<int, 3>> out;  // idx, lo, hi
        for (int i = -1;; ++i) {
          int lo = i * s + o, hi = lo + s;
          if (lo >= n) break;
          lo = std::max(lo, 0);
          hi = std::min(hi, n);
          if (hi > lo) out.push_back({i, lo, hi});
        }
        return out;
      };
      const auto xs = spans(ox);
      const auto ys = g.dim == 2 ? spans(oy) : std::vector<std::array<int, 3>>{{0, 0, 1}};
      for (const auto& y : ys)
        for (const auto& x : xs) {
          Cube q;
          q.level = k;
          q.shift = t;
          q.index = {x[0], y[0]};
          q.lo = {x[1], y[1]};
          q.hi = {x[2], y[2]};
          if (!seen.insert({q.lo[0], q.hi[0], q.lo[1], q.hi[1]}).second) continue;
          if (!detail::visit_cube(visit, q)) return;
        }
    }
  }
}

}  // namespace mlw
