#include "egh/verdicts.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "egh/io.hpp"
#include "egh/scenarios.hpp"

namespace egh {

namespace {

std::string subgroup_text(const Triple& t, const Subgroup& H) {
  std::string s = "{";
  for (size_t k = 0; k < H.size(); ++k) s += (k ? ", " : "") + cycle_string(t.X(), t.G().element(H[k]));
  return s + "}";
}

}  // namespace

CheckOutcome check_hexagon(int i, double delta, int nmax) {
  CheckOutcome c;
  Triple t = hexagon_graph(i);
  const auto& G = t.G();
  Subgroup H = hexagon_small_subgroup(t);
  std::vector<double> radii;
  for (int r = 1; r <= 4 * i; ++r) radii.push_back(r);
  SmallVerdict v = detect_small(t, H, radii, i, 0.0);
  double others = std::numeric_limits<double>::infinity();
  for (const Subgroup& K : enumerate_subgroups(G))
    if (K.size() > 1 && K != H) others = std::min(others, displacement_sup(G, K, 4.0 * i));
  bool normal = is_normal(G, H);

  ApproximationMap a = approximation_from_displacement(t, point_triple(), std::vector<int>(G.order(), 0), 1.0);
  CheckOptions opt;
  opt.n_max = nmax;
  ConditionReport rep = check_conditions(a, delta, opt);
  MaximalSmall ms = maximal_small(a, delta);

  Json curve = Json::array();
  for (size_t k = 0; k < radii.size(); ++k) curve.push_back({radii[k], v.curve[k]});
  c.record = Json{{"index", i},
                  {"group_order", G.order()},
                  {"H", subgroup_text(t, H)},
                  {"small", v.small},
                  {"curve", curve},
                  {"min_other_displacement", others},
                  {"normal", normal},
                  {"conditions", to_json(rep, *a.source, *a.target)},
                  {"zero_set_order", ms.H.size()},
                  {"zero_set_maximal", ms.maximal}};
  c.match = G.order() == 6 && H.size() == 2 && v.small && others >= 3.0 * i && !normal && rep.all_pass() &&
            ms.H.size() == 2 && ms.maximal && ms.small;
  return c;
}

CheckOutcome check_counterexample(Bullet b, int i, double delta, int nmax) {
  ApproximationMap a = counterexample(b, i);
  CheckOptions opt;
  opt.n_max = nmax;
  ConditionReport rep = check_conditions(a, delta, opt);
  CheckOutcome c;
  c.record = Json{{"index", i}, {"expected_failure", bullet_name(b)}, {"failing", rep.failing()},
                  {"conditions", to_json(rep, *a.source, *a.target)}};
  c.match = rep.failing() == std::vector<int>{static_cast<int>(b) + 1};
  return c;
}

CheckOutcome check_torus(int i, int grid, int minor, double delta, int nmax, std::uint64_t seed) {
  TorusCollapse tc = torus_collapse(i, grid, minor);
  CheckOutcome c;
  // Localize to a short arc so the escape-norm zero set sees only the collapsed factor.
  auto arc = angle_box_region(tc.map.target, {0.5});
  ApproximationMap loc = localize(tc.map, arc);
  MaximalSmall ms = maximal_small(loc, delta);
  bool second_factor = ms.H.size() == static_cast<size_t>(tc.minor);
  for (const Elem& h : ms.H) second_factor = second_factor && tc.group->angle(h, 0) == 0.0;
  bool normal = is_normal(tc.triple.G(), tc.H);
  auto q = quotient_sequence({tc.triple}, {tc.H});
  GhResult gh = equivariant_gh(q[0].triple, tc.limit);

  BlowupResult bl = blowup({tc.map}, 1, {2});
  CheckOptions opt;
  opt.n_max = nmax;
  ConditionReport rep = check_conditions(bl.maps[0], 0.1, opt);
  BlowupBoundsReport bounds = verify_blowup_bounds(bl.maps[0], 0.25, unit_directions(2, 24, seed));
  c.record = Json{{"index", i},
                  {"H_order", ms.H.size()},
                  {"H_is_second_factor", second_factor},
                  {"H_small", ms.small},
                  {"H_maximal", ms.maximal},
                  {"maximality_method", ms.method},
                  {"normal", normal},
                  {"quotient_points", q[0].triple.X().size()},
                  {"quotient_gh_to_limit", to_json(gh)},
                  {"blowup_diagnostic", bl.diagnostics[0]},
                  {"blowup_conditions", to_json(rep, *bl.maps[0].source, *bl.maps[0].target)},
                  {"blowup_bounds", {{"worst_inner", bounds.worst_inner}, {"worst_outer", bounds.worst_outer},
                                     {"ok", bounds.ok}}}};
  c.match = second_factor && ms.small && ms.maximal && normal && bl.feasible && rep.all_pass() && bounds.ok;
  return c;
}

CheckOutcome check_tower(int i) {
  TowerLevel t = tower_level(2, i);
  CheckOutcome c;
  c.record = Json{{"index", i},          {"delta", t.delta},
                  {"H_order", t.H_order}, {"H_maximal", t.H_maximal},
                  {"larger_order", t.larger_order}, {"larger_small_next_level", t.larger_small_next},
                  {"unstable", t.unstable()}};
  c.match = t.unstable();
  return c;
}

CheckOutcome check_sphere(int i) {
  Triple s = collapsing_sphere(i, 1, 16);
  GhResult r = equivariant_gh(s, point_triple());
  double bound = std::numbers::pi / i + 2 * std::numbers::pi / (16.0 * i);
  CheckOutcome c;
  c.record = Json{{"index", i}, {"group_order", s.G().order()}, {"gh_to_point", to_json(r)}, {"bound", bound}};
  c.match = r.value <= bound + 1e-6;
  return c;
}

CheckOutcome check_rotation(int i, double delta, int nmax) {
  ApproximationMap a = rotation_approximation(64 * i);
  CheckOptions opt;
  opt.n_max = nmax;
  ConditionReport rep = check_conditions(a, delta, opt);
  CheckOutcome c;
  c.record = Json{{"index", i}, {"n", 64 * i}, {"conditions", to_json(rep, *a.source, *a.target)}};
  c.match = rep.all_pass();
  return c;
}

}  // namespace egh
