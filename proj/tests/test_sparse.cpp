#include "mlw/sparse.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mlw;

namespace {

std::vector<Rational> V(std::initializer_list<Rational> xs) { return xs; }

std::vector<size_t> all_cells(const DyadicGrid& g, const Cube& q) { return cells_of(g, q); }

GridFunction indicator(const DyadicGrid& g, size_t from, size_t to) {
  std::vector<double> v(g.cells(), 0.0);
  for (size_t k = from; k < to; ++k) v[k] = 1;
  return GridFunction(g, v, true);
}

double avg_pow(const GridFunction& f, const Cube& q, double r) {
  const auto cs = cells_of(f.grid(), q);
  double s = 0;
  for (size_t c : cs) s += std::pow(std::fabs(f[c]), r);
  return std::pow(s / cs.size(), 1 / r);
}

VectorWeight sampled_vector(const DyadicGrid& g, const std::vector<Rational>& r, uint64_t seed) {
  const auto nat = natural_exponents(r);
  std::vector<Weight> ws;
  for (size_t i = 0; i < nat.p.size(); ++i) {
    Weight w = random_weight(g, derive_seed(seed, "w" + std::to_string(i)));
    if (w.is_analytic()) w = Weight::sampled(g, w.cell_averages());
    ws.push_back(w);
  }
  return VectorWeight(ws, {nat.p, r});
}

}  // namespace

TEST_CASE("is_sparse examples") {
  const DyadicGrid g(1, 3, Policy::Dyadic);
  const Cube root = root_cube(g);
  CHECK(is_sparse({g, {root}, {all_cells(g, root)}, Rational(1, 2)}));
  const Cube a = dyadic_cube(g, 1, {0, 0}), b = dyadic_cube(g, 1, {1, 0});
  CHECK(is_sparse({g, {a, b}, {all_cells(g, a), all_cells(g, b)}, Rational(1, 2)}));
  CHECK_FALSE(is_sparse({g, {root, a}, {all_cells(g, root), all_cells(g, a)}, Rational(1, 2)}));
  // |E_Q| must exceed zeta |Q| strictly
  CHECK_FALSE(is_sparse({g, {root}, {{0, 1, 2, 3}}, Rational(1, 2)}));
  CHECK(is_sparse({g, {root}, {{0, 1, 2, 3, 4}}, Rational(1, 2)}));
  // E_Q inside Q
  CHECK_FALSE(is_sparse({g, {a}, {{3, 4}}, Rational(1, 4)}));
}

TEST_CASE("random_sparse examples") {
  const DyadicGrid g(1, 8, Policy::Dyadic);
  for (const Rational z : {Rational(1, 2), Rational(1, 6), Rational(9, 10)}) {
    for (uint64_t s = 0; s < 10; ++s) {
      const SparseFamily f = random_sparse(g, z, s);
      CHECK(is_sparse(f));
      CHECK(f.zeta == z);
      double total = 0;
      for (const auto& q : f.cubes) total += volume(g, q);
      CHECK(total <= to_double(1 / z) + 1e-12);
    }
  }
  const SparseFamily a = random_sparse(g, Rational(1, 2), 4), b = random_sparse(g, Rational(1, 2), 4);
  CHECK(a.cubes == b.cubes);
  CHECK(a.eq_sets == b.eq_sets);
  CHECK_THROWS(random_sparse(g, 1, 4));
  CHECK_THROWS(random_sparse(g, 0, 4));
}

TEST_CASE("cz_sparse examples") {
  const DyadicGrid g(1, 9, Policy::Dyadic);
  const GridFunction one = GridFunction::constant(g, 1);
  const SparseFamily flat = cz_sparse({one, one}, g, 4);
  REQUIRE(flat.cubes.size() == 1);
  CHECK(flat.cubes[0] == root_cube(g));

  const SparseFamily zero = cz_sparse({GridFunction::constant(g, 0), one}, g, 4);
  CHECK(zero.cubes.size() == 1);
  CHECK(is_sparse(zero));

  std::vector<double> v(g.cells(), 0.0);
  v[0] = double(g.cells());
  const SparseFamily chain = cz_sparse({GridFunction(g, v, true), one}, g, 4);
  CHECK(chain.cubes.size() > 2);
  CHECK(is_sparse(chain));
  for (size_t k = 0; k < chain.cubes.size(); ++k) {
    CHECK(chain.cubes[k].lo[0] == 0);  // every cube contains the mass
    CHECK(4 * chain.eq_sets[k].size() >= 3 * size_t(chain.cubes[k].cell_count()));
    if (k > 0) CHECK(chain.cubes[k].hi[0] < chain.cubes[k - 1].hi[0]);
  }
  CHECK_THROWS(cz_sparse({one, one}, g, 1.0));

  for (uint64_t s = 0; s < 10; ++s) {
    const SparseFamily f = cz_sparse({random_function(g, s), random_function(g, s + 100)}, g, 2);
    CHECK(is_sparse(f));
  }
}

TEST_CASE("sparse_operator examples") {
  const DyadicGrid g(1, 3, Policy::Dyadic);
  const Cube root = root_cube(g);
  const SparseFamily r{g, {root}, {all_cells(g, root)}, Rational(1, 2)};
  const GridFunction one = GridFunction::constant(g, 1);
  const GridFunction t1 = sparse_operator(r, {one, one});
  for (size_t k = 0; k < g.cells(); ++k) CHECK(t1[k] == doctest::Approx(1));
  const GridFunction t2 = sparse_operator(r, {indicator(g, 0, 4), indicator(g, 4, 8)});
  for (size_t k = 0; k < g.cells(); ++k) CHECK(t2[k] == doctest::Approx(0.25));

  // additivity over families with disjoint supports
  const Cube a = dyadic_cube(g, 1, {0, 0}), b = dyadic_cube(g, 1, {1, 0});
  const SparseFamily fa{g, {a}, {all_cells(g, a)}, Rational(1, 2)}, fb{g, {b}, {all_cells(g, b)}, Rational(1, 2)};
  const SparseFamily fab{g, {a, b}, {all_cells(g, a), all_cells(g, b)}, Rational(1, 2)};
  const std::vector<GridFunction> fs{random_function(g, 1), random_function(g, 2)};
  const GridFunction ta = sparse_operator(fa, fs), tb = sparse_operator(fb, fs), tab = sparse_operator(fab, fs);
  for (size_t k = 0; k < g.cells(); ++k) CHECK(tab[k] == doctest::Approx(ta[k] + tb[k]).epsilon(1e-12));
}

TEST_CASE("sparse_form examples") {
  const DyadicGrid g(1, 6, Policy::Dyadic);
  const Cube root = root_cube(g);
  const SparseFamily r{g, {root}, {all_cells(g, root)}, Rational(1, 2)};
  const GridFunction one = GridFunction::constant(g, 1);
  CHECK(sparse_form(r, V({1, 1, 1}), {one, one}, one) == doctest::Approx(1));
  CHECK_THROWS(sparse_form(r, V({3, 3, 3}), {one, one}, one));

  for (uint64_t s = 0; s < 20; ++s) {
    const SparseFamily f = random_sparse(g, Rational(1, 2), s);
    const std::vector<GridFunction> fs{random_function(g, 10 + s), random_function(g, 20 + s)};
    const GridFunction h = random_function(g, 30 + s);
    double direct = 0;
    for (const auto& q : f.cubes)
      direct += volume(g, q) * avg_pow(h, q, 1) * avg_pow(fs[0], q, 1) * avg_pow(fs[1], q, 1);
    CHECK(sparse_form(f, V({1, 1, 1}), fs, h) == doctest::Approx(direct).epsilon(1e-12));
    double direct2 = 0;
    for (const auto& q : f.cubes)
      direct2 += volume(g, q) * avg_pow(h, q, 2) * avg_pow(fs[0], q, 2) * avg_pow(fs[1], q, 2);
    CHECK(sparse_form(f, V({2, 2, 2}), fs, h) == doctest::Approx(direct2).epsilon(1e-12));

    const GridFunction t = sparse_operator(f, fs);
    double pairing = 0;
    for (size_t c = 0; c < g.cells(); ++c) pairing += h[c] * t[c] * g.cell_volume();
    CHECK(pairing == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("property: the form is monotone and homogeneous in each input") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 10);
  const DyadicGrid g(1, 6, Policy::Dyadic);
  for (uint64_t s = 0; s < 20; ++s) {
    const SparseFamily f = random_sparse(g, Rational(1, 3), s);
    std::vector<GridFunction> fs{random_function(g, 40 + s), random_function(g, 50 + s)};
    const GridFunction h = random_function(g, 60 + s);
    const auto r = s % 2 ? V({1, 1, 1}) : V({2, Rational(3, 2), 2});
    const double base = sparse_form(f, r, fs, h);
    const double c = u(rng);
    std::vector<double> scaled(fs[0].values());
    for (double& x : scaled) x *= c;
    CHECK(sparse_form(f, r, {GridFunction(g, scaled, true), fs[1]}, h) == doctest::Approx(c * base).epsilon(1e-12));
    std::vector<double> bigger(h.values());
    for (double& x : bigger) x += u(rng);
    CHECK(sparse_form(f, r, fs, GridFunction(g, bigger, true)) >= base);
  }
}

TEST_CASE("dual_weights examples") {
  const DyadicGrid g(1, 6);
  const VectorWeight ones({Weight::constant(g), Weight::constant(g)}, {V({3, 3}), V({1, 1, 1})});
  const DualWeightSet du = dual_weights(ones, g);
  REQUIRE(du.sigma.size() == 3);
  for (const auto& s : du.sigma) CHECK(s.approx_equal(Weight::constant(g)));
  for (const auto& c : du.checks) CHECK(c.pass);

  const VectorWeight wv = sampled_vector(g, V({1, 1, 1}), 3);
  const DualWeightSet dw = dual_weights(wv, g);
  CHECK(dw.sigma[0].approx_equal(wv.weights[0].pow(-0.5)));
  CHECK(dw.sigma[1].approx_equal(wv.weights[1].pow(-0.5)));
  CHECK(dw.sigma[2].approx_equal(product_weight(wv)));  // (p'-1)/2 = 1 at p = 3/2

  const VectorWeight off({Weight::constant(g), Weight::constant(g)}, {V({4, 4}), V({1, 1, 1})});
  CHECK_THROWS_AS(dual_weights(off, g), ExponentError);

  for (uint64_t s = 0; s < 10; ++s)
    for (const auto& r : {V({1, 1, 1}), V({2, 2, 2}), V({1, 1, 2})})
      for (const auto& c : dual_weights(sampled_vector(g, r, 10 + s), g).checks) CHECK_MESSAGE(c.pass, c.anchor);
}

TEST_CASE("form_bound_certificate examples") {
  const DyadicGrid g(1, 6, Policy::Dyadic);
  const Cube root = root_cube(g);
  const SparseFamily r{g, {root}, {all_cells(g, root)}, Rational(1, 2)};
  const GridFunction one = GridFunction::constant(g, 1);
  const VectorWeight ones({Weight::constant(g), Weight::constant(g)}, {V({3, 3}), V({1, 1, 1})});
  const FormCertificate c = form_bound_certificate(r, ones, {one, one}, one, g);
  CHECK(c.constant == Rational(27, 4));
  CHECK(c.lines.front() == doctest::Approx(1));
  CHECK(c.lines.back() == doctest::Approx(27.0 / 4));
  for (const auto& ch : c.checks) CHECK_MESSAGE(ch.pass, ch.anchor);

  const VectorWeight w2({Weight::constant(g), Weight::constant(g)}, {V({3, 3}), V({2, 2, 2})});
  const SparseFamily r6{g, {root}, {all_cells(g, root)}, Rational(1, 6)};
  CHECK(form_bound_certificate(r6, w2, {one, one}, one, g).constant == 6 * 27);
}

TEST_CASE("property: the duality chain holds on random data") {
  const DyadicGrid g(1, 7);
  for (const auto& r : {V({1, 1, 1}), V({2, 2, 2})})
    for (uint64_t s = 0; s < 15; ++s) {
      const VectorWeight wv = sampled_vector(g, r, 70 + s);
      const SparseFamily f = random_sparse(g.with_policy(Policy::Dyadic), Rational(1, 2), s);
      const FormCertificate c =
          form_bound_certificate(f, wv, {random_function(g, 80 + s), random_function(g, 90 + s)},
                                 random_function(g, 100 + s), g);
      for (size_t k = 1; k < c.lines.size(); ++k) CHECK(c.lines[k - 1] <= c.lines[k] * (1 + 1e-9));
      for (const auto& ch : c.checks) CHECK_MESSAGE(ch.pass, ch.anchor);
    }
}

TEST_CASE("necessity examples") {
  const DyadicGrid g(1, 6);
  const VectorWeight ones({Weight::constant(g), Weight::constant(g)}, {V({3, 3}), V({1, 1, 1})});
  for (const Cube& q : {root_cube(g), dyadic_cube(g, 3, {2, 0})})
    for (const auto& c : necessity_extract(q, ones, 1.0, g)) {
      CHECK_MESSAGE(c.pass, c.anchor);
      if (c.anchor == "necessity.average-bound") CHECK(c.lhs == doctest::Approx(1));
    }

  for (const auto& r : {V({1, 1, 1}), V({2, 2, 2})})
    for (uint64_t s = 0; s < 5; ++s) {
      const VectorWeight wv = sampled_vector(g, r, 120 + s);
      const SparseFamily f = random_sparse(g.with_policy(Policy::Dyadic), Rational(1, 2), s);
      const GridFunction one = GridFunction::constant(g, 1);
      const FormCertificate cert = form_bound_certificate(f, wv, {one, one}, one, g);
      const auto checks = necessity_sweep(wv, cert.c0, g);
      REQUIRE(checks.size() == 4);
      for (const auto& c : checks) CHECK_MESSAGE(c.pass, c.anchor);
      // a constant below the true one must be caught
      const double too_small = 0.5 * std::pow(ml_constant(wv, g).value(), 1 / (1 - to_double(Rational(1) / 3)));
      bool caught = false;
      for (const auto& c : necessity_sweep(wv, too_small, g)) caught = caught || !c.pass;
      if (r == V({1, 1, 1})) CHECK(caught);
    }
}

TEST_CASE("sparse families round-trip through JSON") {
  const DyadicGrid g(1, 6, Policy::Dyadic);
  const SparseFamily f = random_sparse(g, Rational(1, 3), 8);
  const SparseFamily back = sparse_from_json(sparse_to_json(f), g);
  CHECK(back.cubes == f.cubes);
  CHECK(back.eq_sets == f.eq_sets);
  CHECK(back.zeta == f.zeta);
  CHECK_THROWS(sparse_from_json("{\"level\": 0}", g));
}
