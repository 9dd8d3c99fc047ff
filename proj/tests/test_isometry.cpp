#include <doctest.h>

#include <algorithm>
#include <memory>
#include <numeric>

#include "egh/errors.hpp"
#include "egh/isometry.hpp"
#include "egh/metric.hpp"
#include "egh/scenarios.hpp"
#include "small_spaces.hpp"

using namespace egh;

namespace {

std::shared_ptr<const FiniteMetricSpace> cycle_graph(int n) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = std::min(std::abs(i - j), n - std::abs(i - j));
  return std::make_shared<const FiniteMetricSpace>(d, 0);
}

// Counts isometries by trying every permutation.
int brute_isometry_count(const FiniteMetricSpace& m) {
  Perm p(m.size());
  std::iota(p.begin(), p.end(), 0);
  int count = 0;
  do {
    bool iso = true;
    for (int i = 0; i < m.size() && iso; ++i)
      for (int j = 0; j < m.size() && iso; ++j) iso = m.d(p[i], p[j]) == m.d(i, j);
    count += iso;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// inf over r of 1/r + sup over the open ball, with r on the distance values
// and r -> infinity.
double dp_ref(const FiniteMetricSpace& m, const Perm& g, const Perm& h) {
  const int p = m.basepoint();
  std::vector<double> rs;
  for (int x = 0; x < m.size(); ++x)
    if (m.d(p, x) > 0) rs.push_back(m.d(p, x));
  double all = 0.0;
  for (int x = 0; x < m.size(); ++x) all = std::max(all, m.d(g[x], h[x]));
  double best = all;
  for (double r : rs) {
    double s = 0.0;
    for (int x = 0; x < m.size(); ++x)
      if (m.d(p, x) < r) s = std::max(s, m.d(g[x], h[x]));
    best = std::min(best, 1.0 / r + s);
  }
  return best;
}

}  // namespace

TEST_CASE("isometry group orders match brute force") {
  for (int n = 3; n <= 7; ++n) CHECK(full_isometry_group(cycle_graph(n)).order() == 2 * n);
  for (const auto& m : testing::small_pointed_spaces(4, {1, 2, 3})) {
    auto sp = std::make_shared<const FiniteMetricSpace>(m);
    CHECK(full_isometry_group(sp).order() == brute_isometry_count(m));
  }
}

TEST_CASE("group tables are consistent") {
  IsometryGroup G = full_isometry_group(cycle_graph(6));
  for (int a = 0; a < G.order(); ++a) {
    CHECK(G.mul(a, G.inv(a)) == G.index_of(identity_perm(6)));
    CHECK(G.element(G.mul(a, a)) == compose(G.element(a), G.element(a)));
    CHECK(G.power(a, G.element_order(a)) == G.index_of(identity_perm(6)));
  }
}

TEST_CASE("closure of a non-isometry is rejected") {
  auto m = cycle_graph(5);
  CHECK_THROWS_AS(closure(m, {Perm{1, 0, 2, 3, 4}}), DomainError);
}

TEST_CASE("d_p matches the definition and is left-invariant") {
  for (int n : {5, 6, 8}) {
    IsometryGroup G = full_isometry_group(cycle_graph(n));
    for (int a = 0; a < G.order(); ++a)
      for (int b = 0; b < G.order(); ++b) {
        double d = dp_distance(G, a, b);
        CHECK(d == doctest::Approx(dp_ref(G.space(), G.element(a), G.element(b))));
        CHECK((d == 0.0) == (a == b));
        CHECK(d == dp_distance(G, b, a));
        for (int k = 0; k < G.order(); ++k) CHECK(dp_distance(G, G.mul(k, a), G.mul(k, b)) == d);
      }
  }
}

TEST_CASE("quotient of the hexagon graph by {e, (b c)}") {
  Triple t = hexagon_graph(2);
  Subgroup H = hexagon_small_subgroup(t);
  CHECK(is_subgroup(t.G(), H));
  CHECK_FALSE(is_normal(t.G(), H));
  CHECK(normality_violation(t.G(), H).has_value());
  CHECK_THROWS_AS(quotient_group(t.G(), H), DomainError);
  QuotientSpace q = quotient(t.X(), elements_of(t.G(), H));
  // x, a, {b, c}, {y, z}
  REQUIRE(q.space.size() == 4);
  const auto& X = t.X();
  int b = q.class_of[X.index_of("b")], y = q.class_of[X.index_of("y")], x = q.class_of[X.index_of("x")];
  CHECK(q.class_of[X.index_of("c")] == b);
  CHECK(q.space.d(b, y) == 2.0);
  CHECK(q.space.d(x, b) == 4.0);
  CHECK(q.space.d(x, y) == 6.0);
}

TEST_CASE("subgroup enumeration of the dihedral group of order 12") {
  IsometryGroup G = full_isometry_group(cycle_graph(6));
  // D6 has 16 subgroups.
  CHECK(enumerate_subgroups(G).size() == 16);
  for (const Subgroup& H : enumerate_subgroups(G)) CHECK(is_subgroup(G, H));
}

TEST_CASE("cycle strings use point labels") {
  Triple t = hexagon_graph(1);
  Subgroup H = hexagon_small_subgroup(t);
  REQUIRE(H.size() == 2);
  CHECK(cycle_string(t.X(), t.G().element(H[0])) == "e");
  CHECK(cycle_string(t.X(), t.G().element(H[1])) == "(b c)(y z)");
}
