#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "egh/errors.hpp"
#include "egh/gh.hpp"
#include "egh/scenarios.hpp"
#include "small_spaces.hpp"

using namespace egh;

namespace {

FiniteMetricSpace two(double a) { return FiniteMetricSpace({{0, a}, {a, 0}}, 0); }

// Two-point spaces at distances a and b: the cheapest of matching the far
// points, or pushing one or both of them outside the 1/eps ball; capped at 0.2.
double two_point_gh(double a, double b) {
  return std::min({0.2, std::abs(a - b) / 2, std::max(1 / b, a / 2), std::max(1 / a, b / 2),
                   std::max(1 / a, 1 / b)});
}

FiniteMetricSpace random_space(std::mt19937_64& rng, int n) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = 0.1 * (1 + static_cast<int>(rng() % 20));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return FiniteMetricSpace(d, 0);
}

// Same space with the non-base points relabelled.
FiniteMetricSpace shuffled(const FiniteMetricSpace& m, std::mt19937_64& rng) {
  std::vector<int> p(m.size());
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin() + 1, p.end(), rng);
  std::vector<std::vector<double>> d(m.size(), std::vector<double>(m.size()));
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) d[i][j] = m.d(p[i], p[j]);
  return FiniteMetricSpace(d, 0);
}

}  // namespace

TEST_CASE("two-point spaces follow the closed form") {
  std::vector<double> v{0.05, 0.1, 0.25, 0.5, 1, 2, 3, 4.5, 5, 6, 8, 10, 20};
  for (double a : v)
    for (double b : v) CHECK(pointed_gh(two(a), two(b)).value == doctest::Approx(two_point_gh(a, b)).epsilon(1e-5));
}

TEST_CASE("branch and bound agrees with the exhaustive oracle on random 5-point spaces") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    auto X = random_space(rng, 2 + rep % 4), Y = random_space(rng, 2 + (rep / 4) % 4);
    GhResult r = pointed_gh(X, Y);
    REQUIRE(r.exact);
    CHECK(r.lower <= r.value + 1e-12);
    CHECK(r.value == doctest::Approx(pointed_gh_oracle(X, Y)).epsilon(1e-6));
    CHECK(pointed_gh_oracle(X, Y, true) == pointed_gh_oracle(X, Y, false));
  }
}

// Only identical inputs short-circuit to 0; otherwise the bisection tolerance applies.
TEST_CASE("isometric copies are within tolerance of zero and the value is symmetric") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 10; ++rep) {
    auto X = random_space(rng, 5);
    CHECK(pointed_gh(X, shuffled(X, rng)).value <= 1e-6);
    CHECK(pointed_gh(X, X).value == 0.0);
    auto Y = random_space(rng, 4);
    CHECK(pointed_gh(X, Y).value == doctest::Approx(pointed_gh(Y, X).value).epsilon(1e-6));
  }
}

TEST_CASE("witnesses pass their own audit and the almost-morphism bound") {
  auto spaces = testing::small_pointed_spaces(3, {1, 2, 3});
  std::vector<Triple> triples;
  for (const auto& m : spaces)
    for (Triple& t : testing::small_group_triples(m, 6)) triples.push_back(std::move(t));
  int audited = 0;
  for (size_t a = 0; a < triples.size(); a += 2)
    for (size_t b = 0; b < triples.size(); b += 3) {
      GhResult r = equivariant_gh(triples[a], triples[b]);
      CHECK(r.value == doctest::Approx(equivariant_gh_oracle(triples[a], triples[b])).epsilon(1e-6));
      if (!r.witness) continue;
      ApproximationAudit au = audit(*r.witness);
      CHECK(au.ok());
      CHECK(min_almost_morphism_slack(*r.witness) >= 0.0);
      ++audited;
    }
  CHECK(audited > 0);
}

TEST_CASE("the equivariant distance dominates the pointed one") {
  for (int i : {1, 2})
    for (int j : {1, 2, 3}) {
      Triple a = hexagon_graph(i), b = hexagon_graph(j);
      CHECK(equivariant_gh(a, b).value + 1e-6 >= pointed_gh(a.X(), b.X()).value);
    }
  Triple s = collapsing_sphere(8, 1, 16);
  CHECK(equivariant_gh(s, point_triple()).value >= pointed_gh(s.X(), point_triple().X()).value - 1e-6);
}

TEST_CASE("bounds mode brackets the value on larger inputs") {
  Triple a = collapsing_sphere(1, 1, 24), b = collapsing_sphere(1, 1, 20);
  GhOptions opt;
  opt.node_budget = 20000;
  GhResult r = pointed_gh(a.X(), b.X(), opt);
  CHECK(r.lower <= r.upper + 1e-12);
  CHECK(r.value == r.upper);
}

TEST_CASE("regular radius stays away from displacement jumps") {
  Triple t = hexagon_graph(1);  // displacements {0, 3}
  auto spec = displacement_spectrum(t);
  CHECK(std::is_sorted(spec.begin(), spec.end()));
  CHECK(spec.front() == 0.0);
  CHECK(spec == std::vector<double>{0.0, 3.0});
  CHECK(regular_radius(t, {0.5, 1.5, 2.9}) == 1.5);
  CHECK(regular_radius(t, {2.9, 4.5}) == 4.5);
  // 1 and 2 both sit 1 from a boundary of (0, 3).
  CHECK(regular_radius(t, {2.0, 1.0}) == 1.0);
  // Only the identity: no jumps, so the first candidate.
  CHECK(regular_radius(trivial_triple(two(1.0)), {3.0, 0.5, 9.0}) == 0.5);
  CHECK_THROWS_AS(regular_radius(t, {}), DomainError);
}

TEST_CASE("almost-morphism check rejects elements outside its range") {
  // The swap moves the basepoint by 10, far beyond 1/(6 eps).
  GhResult r = equivariant_gh(full_triple(two(10.0)), full_triple(two(10.1)));
  REQUIRE(r.witness);
  const auto& G = r.witness->X.G();
  int far = -1;
  for (int g = 0; g < G.order(); ++g)
    if (G.displacement(g) >= 1.0 / (6.0 * r.witness->eps)) far = g;
  REQUIRE(far >= 0);
  CHECK_THROWS_AS(check_almost_morphism(*r.witness, far, 0, r.witness->Y.X().basepoint()), DomainError);
}
