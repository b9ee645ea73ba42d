#include "mlw/exponents.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace mlw;

namespace {

Rational Q(long long n, long long d = 1) { return Rational(n) / d; }
std::vector<Rational> V(std::initializer_list<Rational> xs) { return xs; }

Rational inv_sum(const std::vector<Rational>& v, size_t n) {
  Rational s = 0;
  for (size_t i = 0; i < n; ++i) s += 1 / v[i];
  return s;
}

// A rational >= 1 with denominator <= 6 and value <= 7.
Rational random_exponent(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den(1, 6);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(d, 7 * d);
  return Q(num(rng), d);
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Q(1, 2));
  CHECK(parse_rational("-0.125") == Q(-1, 8));
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("010") == 10);
  CHECK(parse_rational("08/012") == Q(2, 3));
  CHECK(parse_rational("0.5") == Q(1, 2));
  CHECK_THROWS(parse_rational("1e3"));
  CHECK_THROWS(parse_rational("inf"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK(parse_rational_list("1/2,4/3") == V({Q(1, 2), Q(4, 3)}));
  CHECK(to_string(Q(6, 4)) == "3/2");
  CHECK(conjugate(Q(1)).infinite);
  CHECK(conjugate(Q(3)).value == Q(3, 2));
}

TEST_CASE("check_order examples") {
  CHECK(check_order(V({1, 1, 1}), V({3, 3})) == Order::Strict);
  CHECK(check_order(V({1, 1, 1}), V({1, 1})) == Order::Weak);
  CHECK(check_order(V({2, 2, 2}), V({2, 3})) == Order::Weak);
  CHECK(check_order(V({2, 2, 2}), V({1, 1})) == Order::None);
  CHECK(check_order(V({2, 2, 2}), V({4, 4})) == Order::None);
  CHECK_THROWS_AS(check_order(V({1, 1}), V({3, 3})), ExponentError);
}

TEST_CASE("derived examples") {
  const auto d = derived({V({3, 3}), V({1, 1, 1})});
  CHECK(d.rbar == Q(1, 3));
  for (size_t i = 0; i < 3; ++i) CHECK(d.delta(i).value == Q(3, 2));
  CHECK(d.theta(0) == Q(3, 4));
  CHECK(d.rho() == Q(3, 4));

  const auto e = derived({V({1, 1}), V({1, 1, 1})});
  CHECK(e.delta(0).infinite);
  CHECK(e.delta(1).infinite);
  CHECK(e.delta(2).value == Q(1, 2));
  CHECK(e.rho() == Q(1, 2));
  CHECK(e.S() * e.rho() == 1);

  const auto f = derived({V({2, 5, 3}), V({2, 5, 3, 1})});
  for (size_t i = 0; i < 3; ++i) CHECK(f.inv_delta[i] == 0);

  CHECK_THROWS_AS(derived({V({1, 1}), V({2, 2, 2})}), ExponentError);
}

TEST_CASE("natural_exponents examples") {
  auto n = natural_exponents(V({1, 1, 1}));
  CHECK(n.p == V({3, 3}));
  CHECK(n.p_total == Q(3, 2));
  n = natural_exponents(V({2, 2, 2}));
  CHECK(n.p == V({3, 3}));
  CHECK(n.p_total == Q(3, 2));
  n = natural_exponents(V({1, 1, 2}));
  CHECK(n.p == V({Q(5, 2), Q(5, 2)}));
  CHECK(n.p_total == Q(5, 4));
  CHECK_THROWS_AS(natural_exponents(V({3, 3, 3})), ExponentError);
}

TEST_CASE("bht_admissible examples") {
  CHECK(bht_admissible(V({2, 2, 2})));
  CHECK_FALSE(bht_admissible(V({Q(6, 5), Q(6, 5), Q(6, 5)})));
  CHECK(bht_admissible(V({4, 4, 4})));
  CHECK_THROWS_AS(bht_admissible(V({1, 2, 2})), ExponentError);
}

TEST_CASE("gamma_to_r examples") {
  CHECK(gamma_to_r(V({Q(1, 3), Q(1, 3), Q(1, 3)})) == V({Q(3, 2), Q(3, 2), Q(3, 2)}));
  CHECK(gamma_to_r(V({0, Q(1, 2), Q(1, 2)})) == V({2, Q(4, 3), Q(4, 3)}));
  CHECK_THROWS_AS(gamma_to_r(V({Q(1, 2), Q(1, 2), Q(1, 2)})), ExponentError);
  CHECK_THROWS_AS(gamma_to_r(V({1, 0, 0})), ExponentError);
}

TEST_CASE("power_weight_interval examples") {
  const Interval a = power_weight_interval(V({3, 3}), V({1, 1, 1}));
  CHECK(a.lower == -2);
  CHECK(a.upper == 1);
  // (4,4) with r = (2,2,2) gives q = 2 = r_3', so r is not strictly below q.
  CHECK_THROWS_AS(power_weight_interval(V({4, 4}), V({2, 2, 2})), ExponentError);
  const Interval b = power_weight_interval(V({4, 4}), V({1, 1, 1}));
  CHECK(b.lower == -3);
  CHECK(b.upper == 1);
}

TEST_CASE("bh_power_interval examples") {
  const Interval a = bh_power_interval(V({2, 2}));
  CHECK(a.lower == 0);
  CHECK(a.upper == 1);
  CHECK_THROWS_AS(bh_power_interval(V({1, 2})), ExponentError);
  CHECK_THROWS_AS(bh_power_interval(V({Q(5, 4), Q(5, 4)})), ExponentError);
  const Interval b = bh_power_interval(V({2, 2}), V({Q(3, 2), Q(3, 2)}));
  CHECK(b.lower <= 0);
  CHECK(b.upper >= Q(1, 2));
}

TEST_CASE("step1_parameters examples") {
  auto s = step1_parameters(V({3, 3}), V({1, 1, 1}), 6);
  CHECK(s.s == 2);
  CHECK(s.s_m == 6);
  CHECK(s.tau == 2);
  s = step1_parameters(V({3, 3}), V({1, 1, 1}), 2);
  CHECK(s.s == Q(6, 5));
  CHECK(s.tau == Q(6, 5));
  const auto d = derived({V({3, 3}), V({1, 1, 1})});
  s = step1_parameters(V({3, 3}), V({1, 1, 1}), 3);
  CHECK(s.s == d.p());
  CHECK(s.tau == d.delta(2).value);
  CHECK_THROWS_AS(step1_parameters(V({3, 3}), V({1, 1, 1}), 1), ExponentError);
}

TEST_CASE("extrapolation_path examples") {
  auto path = extrapolation_path(V({3, 3}), V({2, 4}), V({1, 1, 1}));
  REQUIRE(path.size() == 2);
  CHECK(path[0].changed_index == 0);
  CHECK(path[0].to == V({2, 3}));
  CHECK(path[1].to == V({2, 4}));
  for (const auto& st : path)
    for (const auto& c : st.certificates) CHECK(c.holds);

  path = extrapolation_path(V({3, 3}), V({4, 4}), V({1, 1, 1}));
  REQUIRE(path.size() == 2);
  CHECK(path[0].to == V({4, 3}));
  CHECK(path[1].to == V({4, 4}));

  CHECK(extrapolation_path(V({3, 3}), V({3, 3}), V({1, 1, 1})).empty());
  CHECK_THROWS_AS(extrapolation_path(V({3, 3}), V({1, 4}), V({2, 1, 1})), ExponentError);
}

TEST_CASE("property: exact identities of the derived exponents") {
  std::mt19937_64 rng(11);
  int tested = 0;
  for (int t = 0; t < 4000 && tested < 300; ++t) {
    const std::vector<Rational> p{random_exponent(rng), random_exponent(rng)};
    const std::vector<Rational> r{random_exponent(rng), random_exponent(rng), random_exponent(rng)};
    if (check_order(r, p) == Order::None) continue;
    ++tested;
    const auto d = derived({p, r});
    CHECK(d.inv_p + d.inv_pm1 == 1);
    Rational sd = 0;
    for (const auto& x : d.inv_delta) sd += x;
    CHECK(sd == (1 - d.rbar) / d.rbar);
    CHECK(d.inv_rho == d.inv_delta[1] + d.inv_delta[2]);
    for (const auto& x : d.inv_theta) CHECK(x > 0);
  }
  CHECK(tested >= 100);
}

TEST_CASE("property: natural exponents are strictly above r") {
  std::mt19937_64 rng(12);
  int tested = 0;
  for (int t = 0; t < 3000; ++t) {
    const std::vector<Rational> r{random_exponent(rng), random_exponent(rng), random_exponent(rng)};
    if (!(inv_sum(r, 3) > 1)) continue;
    ++tested;
    CHECK(check_order(r, natural_exponents(r).p) == Order::Strict);
  }
  CHECK(tested >= 50);
}

TEST_CASE("property: certified extrapolation paths") {
  std::mt19937_64 rng(13);
  int tested = 0;
  for (int t = 0; t < 200000 && tested < 500; ++t) {
    const std::vector<Rational> p{random_exponent(rng), random_exponent(rng)};
    const std::vector<Rational> q{random_exponent(rng), random_exponent(rng)};
    const std::vector<Rational> r{random_exponent(rng), random_exponent(rng), random_exponent(rng)};
    if (check_order(r, p) == Order::None || check_order(r, q) == Order::None) continue;
    bool ok = true;
    for (size_t j = 0; j < 2; ++j) ok = ok && (r[j] < q[j] || (r[j] == q[j] && r[j] == p[j]));
    if (!ok) continue;
    ++tested;
    const auto path = extrapolation_path(p, q, r);
    std::vector<Rational> at = p;
    for (const auto& st : path) {
      CHECK(st.from == at);
      size_t diff = 0;
      for (size_t j = 0; j < 2; ++j) diff += st.from[j] != st.to[j];
      CHECK(diff == 1);
      CHECK(inv_sum(st.to, 2) > 1 - 1 / r[2]);
      for (const auto& c : st.certificates) CHECK(c.holds);
      at = st.to;
    }
    CHECK(at == q);
  }
  CHECK(tested == 500);
}

TEST_CASE("property: bht region forces p > 2/3") {
  std::vector<Rational> grid;
  for (int d = 1; d <= 6; ++d)
    for (int n = d + 1; n <= 3 * d; ++n) {
      const Rational x = Q(n, d);
      if (std::find(grid.begin(), grid.end(), x) == grid.end()) grid.push_back(x);
    }
  std::sort(grid.begin(), grid.end());
  size_t admissible = 0;
  for (const auto& a : grid)
    for (const auto& b : grid)
      for (const auto& c : grid) {
        const std::vector<Rational> r{a, b, c};
        if (!bht_admissible(r)) continue;
        ++admissible;
        // smallest grid p strictly above r in each coordinate
        auto succ = [&](const Rational& x) { return *std::upper_bound(grid.begin(), grid.end(), x); };
        if (a == grid.back() || b == grid.back()) continue;
        const std::vector<Rational> p{succ(a), succ(b)};
        if (check_order(r, p) != Order::Strict) continue;
        CHECK(inv_sum(p, 2) < Q(3, 2));
      }
  CHECK(admissible > 0);
}
