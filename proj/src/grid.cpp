#include "mlw/grid.hpp"

#include <bit>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mlw {

std::string to_string(Policy p) {
  switch (p) {
    case Policy::Dyadic: return "Dyadic";
    case Policy::ShiftedDyadic: return "ShiftedDyadic";
    case Policy::MeshIntervals: return "MeshIntervals";
  }
  return "Dyadic";
}

Policy parse_policy(const std::string& s) {
  if (s == "Dyadic" || s == "dyadic") return Policy::Dyadic;
  if (s == "ShiftedDyadic" || s == "shifted") return Policy::ShiftedDyadic;
  if (s == "MeshIntervals" || s == "mesh") return Policy::MeshIntervals;
  throw GridError("unknown enumeration policy '" + s + "'");
}

DyadicGrid::DyadicGrid(int dim_, int depth_, Policy policy_) : dim(dim_), depth(depth_), policy(policy_) {
  if (dim != 1 && dim != 2) throw GridError("dimension must be 1 or 2");
  if (depth < 1 || depth > (dim == 1 ? 20 : 10)) throw GridError("depth out of range");
  if (policy == Policy::MeshIntervals && dim == 2)
    throw GridError("unsupported policy: MeshIntervals needs dimension 1");
}

Cube root_cube(const DyadicGrid& g) { return dyadic_cube(g, 0, {0, 0}); }

Cube dyadic_cube(const DyadicGrid& g, int level, std::array<int, 2> index) {
  if (level < 0 || level > g.depth) throw GridError("level out of range");
  const int s = g.side() >> level, count = 1 << level;
  if (index[0] < 0 || index[0] >= count || (g.dim == 2 && (index[1] < 0 || index[1] >= count)) ||
      (g.dim == 1 && index[1] != 0))
    throw GridError("cube index out of range");
  Cube q;
  q.level = level;
  q.index = index;
  q.lo = {index[0] * s, g.dim == 2 ? index[1] * s : 0};
  q.hi = {(index[0] + 1) * s, g.dim == 2 ? (index[1] + 1) * s : 1};
  return q;
}

std::vector<size_t> cells_of(const DyadicGrid& g, const Cube& q) {
  std::vector<size_t> out;
  out.reserve(size_t(q.cell_count()));
  const size_t n = size_t(g.side());
  for (int y = q.lo[1]; y < q.hi[1]; ++y)
    for (int x = q.lo[0]; x < q.hi[0]; ++x) out.push_back(size_t(y) * n + size_t(x));
  return out;
}

double volume(const DyadicGrid& g, const Cube& q) { return double(q.cell_count()) * g.cell_volume(); }

std::vector<Cube> cubes(const DyadicGrid& g) {
  std::vector<Cube> out;
  for_each_cube(g, [&](const Cube& q) { out.push_back(q); });
  return out;
}

namespace detail {
void shifted_offsets(const DyadicGrid& g, std::vector<int>& offsets) {
  const int n = g.side();
  offsets = {0, n / 3, (2 * n) / 3};
}
}  // namespace detail

// ---------------------------------------------------------------------------

ExtendedReal::ExtendedReal(double v) : v_(v) {
  if (std::isnan(v) || v < 0) throw std::domain_error("ExtendedReal must be nonnegative");
}

ExtendedReal ExtendedReal::operator*(const ExtendedReal& o) const {
  if (is_infinite() || o.is_infinite()) {
    if (v_ == 0 || o.v_ == 0) throw std::domain_error("0 * infinity is undefined");
    return infinity();
  }
  return ExtendedReal(v_ * o.v_);
}

ExtendedReal ExtendedReal::pow(double e) const {
  if (is_infinite()) {
    if (e > 0) return infinity();
    if (e < 0) return ExtendedReal(0.0);
    return ExtendedReal(1.0);
  }
  return ExtendedReal(std::pow(v_, e));
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) {
  if (x.is_infinite()) return os << "inf";
  return os << x.value();
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(const DyadicGrid& g, std::vector<double> values, bool nonnegative)
    : grid_(g), values_(std::move(values)), nonnegative_(nonnegative) {
  if (values_.size() != g.cells())
    throw GridError("grid function needs " + std::to_string(g.cells()) + " values, got " +
                    std::to_string(values_.size()));
  for (double v : values_) {
    if (!std::isfinite(v)) throw GridError("grid function values must be finite");
    if (nonnegative_ && v < 0) throw GridError("negative value in a nonnegative grid function");
  }
}

GridFunction GridFunction::constant(const DyadicGrid& g, double c) {
  return GridFunction(g, std::vector<double>(g.cells(), c), c >= 0);
}

GridFunction GridFunction::abs() const {
  std::vector<double> v(values_.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = std::fabs(values_[i]);
  return GridFunction(grid_, std::move(v), true);
}

GridFunction read_grid_csv(const std::string& path, const DyadicGrid& g) {
  std::ifstream in(path);
  if (!in) throw GridError("cannot open '" + path + "'");
  std::vector<double> v;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream ss(line);
    double x;
    if (!(ss >> x)) throw GridError(path + ":" + std::to_string(lineno) + ": not a number");
    v.push_back(x);
  }
  bool nonneg = true;
  for (double x : v) nonneg = nonneg && x >= 0;
  return GridFunction(g, std::move(v), nonneg);
}

void write_grid_csv(const std::string& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw GridError("cannot write '" + path + "'");
  out.precision(17);
  for (double x : f.values()) out << x << '\n';
}

// ---------------------------------------------------------------------------

CubeIntegrator::CubeIntegrator(const DyadicGrid& g, const std::vector<long double>& cell_mass)
    : grid_(g), mass_(cell_mass) {
  if (mass_.size() != g.cells()) throw GridError("cell mass size mismatch");
  const size_t n = size_t(g.side());
  if (g.dim == 1) {
    prefix_.assign(n + 1, 0);
    inf_prefix_.assign(n + 1, 0);
    CompensatedSum acc;
    for (size_t i = 0; i < n; ++i) {
      const bool inf = std::isinf(mass_[i]);
      if (!inf) acc.add(mass_[i]);
      prefix_[i + 1] = acc.value();
      inf_prefix_[i + 1] = inf_prefix_[i] + (inf ? 1 : 0);
    }
  } else {
    prefix_.assign((n + 1) * (n + 1), 0);
    inf_prefix_.assign((n + 1) * (n + 1), 0);
    for (size_t y = 0; y < n; ++y)
      for (size_t x = 0; x < n; ++x) {
        const long double m = mass_[y * n + x];
        const bool inf = std::isinf(m);
        const size_t at = (y + 1) * (n + 1) + (x + 1);
        prefix_[at] = (inf ? 0 : m) + prefix_[at - 1] + prefix_[at - (n + 1)] - prefix_[at - (n + 1) - 1];
        inf_prefix_[at] = (inf ? 1 : 0) + inf_prefix_[at - 1] + inf_prefix_[at - (n + 1)] -
                          inf_prefix_[at - (n + 1) - 1];
      }
  }
}

long double CubeIntegrator::over(const Cube& q) const {
  if (grid_.dim == 1) {
    if (inf_prefix_[q.hi[0]] - inf_prefix_[q.lo[0]] > 0) return std::numeric_limits<long double>::infinity();
    return prefix_[q.hi[0]] - prefix_[q.lo[0]];
  }
  const size_t w = size_t(grid_.side()) + 1;
  auto at = [&](int y, int x) { return size_t(y) * w + size_t(x); };
  const int infs = inf_prefix_[at(q.hi[1], q.hi[0])] - inf_prefix_[at(q.lo[1], q.hi[0])] -
                   inf_prefix_[at(q.hi[1], q.lo[0])] + inf_prefix_[at(q.lo[1], q.lo[0])];
  if (infs > 0) return std::numeric_limits<long double>::infinity();
  if (q.cell_count() <= 64) {
    CompensatedSum s;
    const size_t n = size_t(grid_.side());
    for (int y = q.lo[1]; y < q.hi[1]; ++y)
      for (int x = q.lo[0]; x < q.hi[0]; ++x) s.add(mass_[size_t(y) * n + size_t(x)]);
    return s.value();
  }
  return prefix_[at(q.hi[1], q.hi[0])] - prefix_[at(q.lo[1], q.hi[0])] - prefix_[at(q.hi[1], q.lo[0])] +
         prefix_[at(q.lo[1], q.lo[0])];
}

long double CubeIntegrator::total() const { return over(root_cube(grid_)); }

CubeMaximum::CubeMaximum(const DyadicGrid& g, std::vector<double> cell_values) : grid_(g) {
  if (cell_values.size() != g.cells()) throw GridError("cell value size mismatch");
  table_.push_back(std::move(cell_values));
  if (g.dim != 1) return;
  const size_t n = table_[0].size();
  for (size_t len = 2; len <= n; len *= 2) {
    const auto& prev = table_.back();
    std::vector<double> next(n - len + 1);
    for (size_t i = 0; i + len <= n; ++i) next[i] = std::max(prev[i], prev[i + len / 2]);
    table_.push_back(std::move(next));
  }
}

double CubeMaximum::over(const Cube& q) const {
  if (grid_.dim == 1) {
    const unsigned len = unsigned(q.hi[0] - q.lo[0]);
    const int k = std::bit_width(len) - 1;
    const auto& row = table_[size_t(k)];
    return std::max(row[size_t(q.lo[0])], row[size_t(q.hi[0]) - (size_t(1) << k)]);
  }
  const size_t n = size_t(grid_.side());
  double m = -std::numeric_limits<double>::infinity();
  for (int y = q.lo[1]; y < q.hi[1]; ++y)
    for (int x = q.lo[0]; x < q.hi[0]; ++x) m = std::max(m, table_[0][size_t(y) * n + size_t(x)]);
  return m;
}

}  // namespace mlw
