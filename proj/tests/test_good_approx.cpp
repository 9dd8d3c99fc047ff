#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "egh/errors.hpp"
#include "egh/good_approx.hpp"
#include "egh/scenarios.hpp"

using namespace egh;

namespace {

std::vector<ApproximationMap> corpus(int i) {
  std::vector<ApproximationMap> maps;
  for (Bullet b : {Bullet::I, Bullet::II, Bullet::III, Bullet::IV, Bullet::V}) maps.push_back(counterexample(b, i));
  maps.push_back(rotation_approximation(64));
  maps.push_back(cyclic_tower(2, 4));
  return maps;
}

// Rotation map with an uneven bump, so phi(g^-1) != phi(g)^-1.
ApproximationMap bumped_rotation(int n) {
  ApproximationMap a = rotation_approximation(n);
  auto C = std::static_pointer_cast<const CyclicGroup>(a.source);
  auto base = a.phi;
  a.phi = [base, C](const Elem& g) {
    Elem x = base(g);
    if (C->signed_rep(g) > 0) x[0] = wrap_angle(x[0] + 0.01);
    return x;
  };
  return a;
}

}  // namespace

TEST_CASE("symmetric sets") {
  auto C = std::make_shared<CyclicGroup>(5, CyclicGroup::Metric::Arc);
  std::vector<Elem> s{Elem{0}, Elem{1}};
  CHECK_THROWS_AS(require_symmetric(*C, s), StructuralError);
  auto closed = symmetric_closure(*C, s);
  CHECK(closed.size() == 3);
  CHECK_NOTHROW(require_symmetric(*C, closed));
}

TEST_CASE("symmetrize makes phi odd and is idempotent") {
  ApproximationMap a = symmetrize(bumped_rotation(40));
  ApproximationMap b = symmetrize(a);
  const auto& S1 = *a.target;
  for (const Elem& g : a.A_src) {
    CHECK(S1.dist(a.phi(a.source->inv(g)), S1.inv(a.phi(g))) < 1e-12);
    CHECK(S1.dist(a.phi(g), b.phi(g)) == 0.0);
  }
}

TEST_CASE("conditions I to IV only get easier as delta grows") {
  const std::vector<double> deltas{0.01, 0.02, 0.05, 0.1, 0.2, 0.4, 0.8};
  for (const ApproximationMap& a : corpus(10)) {
    std::array<bool, 4> passed{};
    for (double d : deltas) {
      ConditionReport r = check_conditions(a, d);
      for (int c = 0; c < 4; ++c) {
        INFO(a.label << " condition " << c + 1 << " delta " << d);
        if (passed[c]) CHECK(r.cond[c].pass);
        passed[c] = passed[c] || r.cond[c].pass;
      }
      for (const auto& cr : r.cond) CHECK(cr.witness.empty() == cr.pass);
    }
  }
}

TEST_CASE("each counterexample fails its own condition") {
  int expect = 1;
  for (Bullet b : {Bullet::I, Bullet::II, Bullet::III, Bullet::IV, Bullet::V}) {
    ConditionReport r = check_conditions(counterexample(b, 10), 0.05);
    CHECK(r.failing() == std::vector<int>{expect++});
  }
  CHECK(check_conditions(rotation_approximation(128), 0.05).all_pass());
}

TEST_CASE("localize restricts both neighbourhoods") {
  ApproximationMap a = rotation_approximation(64);
  Region box = angle_box_region(a.target, {0.5});
  ApproximationMap loc = localize(a, box);
  CHECK(loc.A_src.size() < a.A_src.size());
  for (const Elem& g : loc.A_src) CHECK(box.contains(loc.phi(g)));
  CHECK_NOTHROW(require_symmetric(*loc.source, loc.A_src));
  CHECK_THROWS_AS(localize(a, angle_box_region(a.target, {2.0})), DomainError);
}

TEST_CASE("small subgroups in the collapsing torus") {
  TorusCollapse tc = torus_collapse(2, 64, 4);
  ApproximationMap loc = localize(tc.map, angle_box_region(tc.map.target, {0.5}));
  MaximalSmall ms = maximal_small(loc, 0.05);
  CHECK(ms.is_subgroup);
  CHECK(ms.small);
  CHECK(ms.maximal);
  CHECK(ms.method == "cyclic");
  REQUIRE(ms.H.size() == 4);
  for (const Elem& h : ms.H) CHECK(tc.group->angle(h, 0) == 0.0);

  // Preimages of e are small, and the displacement bound is the second-factor diameter.
  SmallVerdict v = detect_small(tc.triple, tc.H, {0.5, 1.0, 2.0, 4.0}, 2.0, std::numbers::pi / 2 + 1e-9);
  CHECK(v.small);
  CHECK(std::is_sorted(v.curve.begin(), v.curve.end()));
}

TEST_CASE("maximality against all subgroups on a small group") {
  ApproximationMap a = counterexample(Bullet::III, 10);  // Heisenberg mod 5, order 125
  MaximalSmall ms = maximal_small(a, 0.05, 200);
  CHECK(ms.method == "all-subgroups");
  CHECK(ms.H.size() >= 1);
}

TEST_CASE("quotients need a normal subgroup") {
  Triple t = hexagon_graph(1);
  CHECK_THROWS_AS(quotient_sequence({t}, {hexagon_small_subgroup(t)}), DomainError);
  TorusCollapse tc = torus_collapse(4, 16, 4);
  auto q = quotient_sequence({tc.triple}, {tc.H});
  REQUIRE(q.size() == 1);
  CHECK(q[0].triple.X().size() == 16);
  CHECK(q[0].triple.G().order() == 16);
}

TEST_CASE("blow-up keeps the kernel at zero and passes at delta 0.1") {
  TorusCollapse tc = torus_collapse(2, 128, 4);
  BlowupResult bl = blowup({tc.map}, 1, {2});
  REQUIRE(bl.feasible);
  CHECK(bl.diagnostics[0].empty());
  const ApproximationMap& b = bl.maps[0];
  for (const Elem& g : b.A_src) {
    Elem psi = b.phi(g);
    CHECK(std::abs(psi[0]) < 1.0);
    CHECK(psi[0] == doctest::Approx(2.0 * tc.group->angle(g, 0)));
  }
  for (const Elem& h : *tc.group->elements())
    if (tc.group->angle(h, 0) == 0.0) CHECK(b.phi(h)[0] == 0.0);
  CHECK(check_conditions(b, 0.1).all_pass());
  BlowupBoundsReport br = verify_blowup_bounds(b, 0.25, unit_directions(2, 8, 1));
  CHECK(br.ok);
  CHECK(br.inner_samples > 0);
}

TEST_CASE("eps-continuity separates a smooth map from a jump") {
  CHECK(check_eps_continuity(rotation_approximation(64), 2, 0.2).pass);
  ApproximationMap jump = rotation_approximation(64);
  auto C = std::static_pointer_cast<const CyclicGroup>(jump.source);
  auto base = jump.phi;
  jump.phi = [base, C](const Elem& g) {
    Elem x = base(g);
    if (C->rep(g) == 3) x[0] += 0.5;
    return x;
  };
  ContinuityReport r = check_eps_continuity(jump, 1, 0.2);
  CHECK_FALSE(r.pass);
  CHECK(r.witness);
}

TEST_CASE("displacement neighbourhoods of the hexagon") {
  Triple t = hexagon_graph(3);
  ApproximationMap a = approximation_from_displacement(t, point_triple(), std::vector<int>(6, 0), 1.0);
  CHECK(a.A_src.size() == 2);
  CHECK(check_conditions(a, 0.05).all_pass());
}
