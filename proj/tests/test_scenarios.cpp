#include <doctest.h>

#include <cmath>
#include <numbers>

#include "egh/errors.hpp"
#include "egh/io.hpp"
#include "egh/scenarios.hpp"

using namespace egh;

namespace {

Json map_dump(const ApproximationMap& a) {
  Json rows = Json::array();
  for (const Elem& g : a.A_src) rows.push_back({to_json(*a.source, g), to_json(*a.target, a.phi(g))});
  return rows;
}

}  // namespace

TEST_CASE("generators are deterministic") {
  for (int i : {1, 3}) {
    CHECK(to_json(hexagon_graph(i)) == to_json(hexagon_graph(i)));
    CHECK(to_json(collapsing_sphere(i, 1, 16)) == to_json(collapsing_sphere(i, 1, 16)));
    CHECK(to_json(torus_collapse(i, 16, 4).triple) == to_json(torus_collapse(i, 16, 4).triple));
  }
  for (Bullet b : {Bullet::I, Bullet::II, Bullet::III, Bullet::IV, Bullet::V})
    CHECK(map_dump(counterexample(b, 10)) == map_dump(counterexample(b, 10)));
  NormScenario s = norm_scenario("T2");
  auto w1 = gleason_words(s, 50, 7), w2 = gleason_words(s, 50, 7);
  REQUIRE(w1.size() == w2.size());
  for (size_t k = 0; k < w1.size(); ++k) {
    REQUIRE(w1[k].size() == w2[k].size());
    for (size_t j = 0; j < w1[k].size(); ++j) CHECK(s.group->dist(w1[k][j], w2[k][j]) == 0.0);
  }
  auto d1 = unit_directions(3, 20, 5), d2 = unit_directions(3, 20, 5);
  for (size_t k = 0; k < d1.size(); ++k) {
    CHECK(d1[k] == d2[k]);
    CHECK(d1[k].norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("hexagon graph distances") {
  Triple t = hexagon_graph(2);
  const auto& X = t.X();
  auto d = [&](const char* u, const char* v) { return X.d(X.index_of(u), X.index_of(v)); };
  CHECK(d("x", "a") == 2);
  CHECK(d("a", "b") == 2);
  CHECK(d("x", "y") == 6);
  CHECK(d("y", "z") == 6);
  CHECK(X.basepoint() == X.index_of("x"));
  CHECK(t.G().order() == 6);
  CHECK_THROWS_AS(hexagon_graph(0), DomainError);
}

TEST_CASE("collapsing spheres") {
  Triple c = collapsing_sphere(2, 1, 16);
  CHECK(c.X().size() == 16);
  CHECK(c.G().order() == 32);
  CHECK(c.X().diameter() == doctest::Approx(std::numbers::pi / 2));
  Triple s = collapsing_sphere(1, 2, 1);
  CHECK(s.G().order() == 24);
  CHECK(s.X().diameter() == doctest::Approx(std::numbers::pi));
}

TEST_CASE("condition names round trip") {
  for (Bullet b : {Bullet::I, Bullet::II, Bullet::III, Bullet::IV, Bullet::V}) CHECK(parse_bullet(bullet_name(b)) == b);
  CHECK_THROWS_AS(parse_bullet("VI"), DomainError);
}

TEST_CASE("cyclic tower levels") {
  for (int i = 1; i <= 6; ++i) {
    TowerLevel t = tower_level(2, i);
    CHECK(t.k == (i + 1) / 2);
    CHECK(t.H_order == static_cast<size_t>(1) << (i - t.k));
    CHECK(t.larger_order == 2 * t.H_order);
    CHECK(t.unstable());
  }
  CHECK_THROWS_AS(cyclic_tower(4, 2), DomainError);
}

TEST_CASE("torus collapse layout") {
  TorusCollapse tc = torus_collapse(3, 16, 4);
  CHECK(tc.triple.X().size() == 64);
  CHECK(tc.triple.G().order() == 64);
  CHECK(tc.H.size() == 4);
  CHECK(tc.limit.X().size() == 16);
  // Second-factor circle has radius 1/3.
  CHECK(tc.triple.X().d(0, 2) == doctest::Approx(std::numbers::pi / 3));
  CHECK_THROWS_AS(torus_collapse(1, 4), DomainError);
}

TEST_CASE("norm scenarios") {
  for (const auto& name : norm_scenario_names()) {
    NormScenario s = norm_scenario(name);
    CHECK(s.group->algebra_dim() >= 1);
    CHECK(s.B.contains(s.group->identity()));
  }
  CHECK_THROWS_AS(norm_scenario("R7"), DomainError);
  PuncturedCircle pc = punctured_circle(10);
  CHECK(pc.g_seq.size() == 10);
  CHECK_FALSE(pc.A.contains(pc.g));
  for (const Elem& g : pc.g_seq) CHECK(pc.A.contains(g));
}

TEST_CASE("rotation approximation neighbourhood is the open half circle") {
  ApproximationMap a = rotation_approximation(16);
  // |k| < 4 of 16.
  CHECK(a.A_src.size() == 7);
  CHECK_THROWS_AS(rotation_approximation(1), DomainError);
}
