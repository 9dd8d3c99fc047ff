// Acceptance runner: one PASS/FAIL line per criterion. Pass criterion ids on
// the command line to run a subset.
#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "egh/borsuk.hpp"
#include "egh/errors.hpp"
#include "egh/escape.hpp"
#include "egh/gh.hpp"
#include "egh/good_approx.hpp"
#include "egh/isometry.hpp"
#include "egh/scenarios.hpp"
#include "egh/verdicts.hpp"
#include "small_spaces.hpp"

using namespace egh;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records the first failure message only.
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

std::string num(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.6g", x);
  return b;
}

// ---- 1 ------------------------------------------------------------------

void hexagon(Outcome& o) {
  for (int i : {1, 2, 4, 8}) {
    CheckOutcome c = check_hexagon(i, 0.05, 3);
    const Json& r = c.record;
    o.require(r["group_order"] == 6, "hexagon i=" + std::to_string(i) + " group order");
    for (const auto& pt : r["curve"])
      if (pt[0].get<double>() <= i) o.require(pt[1].get<double>() == 0.0, "displacement of H nonzero below r=i");
    o.require(r["small"] && !r["normal"].get<bool>(), "H small and not normal at i=" + std::to_string(i));
    o.require(r["min_other_displacement"].get<double>() >= 3.0 * i, "another subgroup displaces less than 3i");
    o.require(c.match, "verdict mismatch at i=" + std::to_string(i));
  }
  o.detail << "i in {1,2,4,8}: order 6, H={e,(b c)} small, maximal, not normal";
}

// ---- 2 ------------------------------------------------------------------

void counterexamples(Outcome& o) {
  int runs = 0;
  for (Bullet b : {Bullet::I, Bullet::II, Bullet::III, Bullet::IV, Bullet::V})
    for (int i : {10, 20}) {
      CheckOutcome c = check_counterexample(b, i, 0.05, 3);
      o.require(c.match, "generator " + bullet_name(b) + " at i=" + std::to_string(i) + " fails " +
                             c.record["failing"].dump());
      ++runs;
    }
  o.detail << runs << " runs, each fails exactly its own condition";
}

// ---- 3 ------------------------------------------------------------------

void gh_oracle(Outcome& o) {
  auto spaces = testing::small_pointed_spaces(4, {1, 2, 3});
  double worst = 0.0;
  long pairs = 0;
  for (size_t a = 0; a < spaces.size(); ++a)
    for (size_t b = a; b < spaces.size(); ++b) {
      GhResult r = pointed_gh(spaces[a], spaces[b]);
      double ref = pointed_gh_oracle(spaces[a], spaces[b]);
      o.require(r.exact, "pointed search left the exact regime");
      worst = std::max(worst, std::abs(r.value - ref));
      ++pairs;
    }
  o.require(worst <= 1e-6, "pointed deviation " + num(worst));

  std::vector<Triple> triples;
  for (const auto& m : spaces)
    for (Triple& t : testing::small_group_triples(m, 4)) triples.push_back(std::move(t));
  double worst_eq = 0.0;
  long eq_pairs = 0;
  for (size_t a = 0; a < triples.size(); ++a)
    for (size_t b = a; b < triples.size(); ++b) {
      GhResult r = equivariant_gh(triples[a], triples[b]);
      double ref = equivariant_gh_oracle(triples[a], triples[b], true);
      o.require(r.exact, "equivariant search left the exact regime");
      worst_eq = std::max(worst_eq, std::abs(r.value - ref));
      ++eq_pairs;
    }
  o.require(worst_eq <= 1e-6, "equivariant deviation " + num(worst_eq));
  o.detail << spaces.size() << " spaces, " << pairs << " pointed pairs (max dev " << num(worst) << "), "
           << triples.size() << " triples, " << eq_pairs << " equivariant pairs (max dev " << num(worst_eq)
           << ")";
}

// ---- 4 ------------------------------------------------------------------

void spheres(Outcome& o) {
  double prev = std::numeric_limits<double>::infinity();
  for (int i : {1, 2, 4, 8}) {
    CheckOutcome c = check_sphere(i);
    double v = c.record["gh_to_point"]["eps"].get<double>();
    o.require(c.match, "GH " + num(v) + " above bound at i=" + std::to_string(i));
    o.require(v <= prev + 1e-12, "GH increases at i=" + std::to_string(i));
    o.detail << "i=" << i << ": " << num(v) << " ";
    prev = v;
  }
}

// ---- 5 ------------------------------------------------------------------

void escape_exact(Outcome& o) {
  long checked = 0;
  for (int n = 1; n <= 64; ++n) {
    auto C = std::make_shared<CyclicGroup>(n, CyclicGroup::Metric::Arc);
    for (int l = 0; l < n; ++l)
      for (int r = 0; l + r + 1 <= n; ++r) {
        std::vector<Elem> members;
        for (int k = -l; k <= r; ++k) members.push_back(Elem{static_cast<double>(((k % n) + n) % n)});
        Region A = finite_region(C, members);
        for (int k = 0; k < n; ++k) {
          double got = escape_norm(*C, A, Elem{static_cast<double>(k)});
          double want = escape_norm_interval_oracle(n, l, r, k);
          if (got != want) {
            o.fail("Z_" + std::to_string(n) + " A=[-" + std::to_string(l) + "," + std::to_string(r) +
                   "] g=" + std::to_string(k) + ": " + num(got) + " vs " + num(want));
            return;
          }
          ++checked;
        }
      }
  }
  PuncturedCircle pc = punctured_circle();
  double ng = escape_norm(*pc.group, pc.A, pc.g);
  o.require(ng == 1.0, "punctured circle ||g|| = " + num(ng));
  for (const Elem& gj : pc.g_seq) {
    double v = escape_norm(*pc.group, pc.A, gj);
    o.require(v == 0.0, "punctured circle ||g_j|| = " + num(v));
  }
  o.detail << checked << " cyclic norms exact; punctured circle ||g|| = 1, ||g_j|| = 0 for " << pc.g_seq.size()
           << " terms";
}

// ---- 6 ------------------------------------------------------------------

void limsup(Outcome& o) {
  std::vector<int> ms(1000);
  for (int m = 1; m <= 1000; ++m) ms[m - 1] = m;
  const double grid_step = 1e-2;  // tau grid
  for (const char* name : {"R1", "S1-arc"}) {
    NormScenario s = norm_scenario(name);
    double worst_excess = -1.0;
    // The error scales with |v|_B, so the stated bound is checked on |v| <= 1.
    for (double vx : {1.0, -1.0, 0.5, -0.75, 0.3}) {
      Eigen::VectorXd v(1);
      v << vx;
      LimsupReport rep = check_limsup_formula(*s.group, s.B, v, ms);
      o.require(!rep.tau.infinite, std::string(name) + ": no exit along v");
      for (const LimsupRow& row : rep.rows) {
        double tol = std::max(1.0 / row.m, grid_step);
        worst_excess = std::max(worst_excess, row.error - tol);
        if (row.error > tol)
          o.fail(std::string(name) + " v=" + num(vx) + " m=" + std::to_string(row.m) + " error " + num(row.error));
      }
    }
    o.detail << name << " worst error-minus-tolerance " << num(worst_excess) << "; ";
  }
}

// ---- 7 ------------------------------------------------------------------

void sandwich(Outcome& o) {
  const std::uint64_t seed = 20240601;
  for (const char* name : {"R2", "T2", "SO3"}) {
    NormScenario s = norm_scenario(name);
    const int k = s.group->algebra_dim();
    GleasonEstimate c0 = estimate_gleason_constant(*s.group, s.B, gleason_words(s, 400, seed));
    HullGauge gauge = convex_hull_norm(*s.group, s.B, unit_directions(k, 200, seed + 1));
    int failures = 0;
    for (const auto& d : unit_directions(k, 100, seed + 2)) {
      double v = tau_and_algebra_norm(*s.group, s.B, d).algebra_norm();
      double gv = gauge(d);
      // The gauge comes out of an LP; the lower side allows its round-off.
      if (!(v <= gv * (1 + 1e-9) && gv <= 2 * c0.c0 * v)) ++failures;
    }
    o.require(failures == 0, std::string(name) + ": " + std::to_string(failures) + " directions outside");
    o.detail << name << " C0_est " << num(c0.c0) << "; ";
  }
}

// ---- 8 ------------------------------------------------------------------

void borsuk(Outcome& o) {
  for (auto [n, k] : {std::pair{3, 1}, std::pair{4, 2}}) {
    auto tri = std::make_shared<const SymmetricTriangulation>(build_triangulation(n, 3));
    double worst_pl = 0.0, worst_ratio = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      OddMapSample s = random_odd_sample(tri, k, seed);
      ContinuityModulus m = continuity_modulus(s);
      ZeroWitness w = find_near_zero(s);
      worst_pl = std::max(worst_pl, w.value_norm());
      worst_ratio = std::max(worst_ratio, w.vertex_value_norm() / (2 * m.eps_est));
      if (w.value_norm() > 1e-9 || w.vertex_value_norm() > 2 * m.eps_est)
        o.fail("S^" + std::to_string(n - 1) + " -> R^" + std::to_string(k) + " seed " + std::to_string(seed));
    }
    o.detail << "S^" << n - 1 << "->R^" << k << " max |f~(x0)| " << num(worst_pl) << ", max vertex/(2 eps) "
             << num(worst_ratio) << "; ";
  }
  bool rejected = false;
  try {
    auto tri = std::make_shared<const SymmetricTriangulation>(build_triangulation(2, 3));
    find_near_zero(random_odd_sample(tri, 2, 1));
  } catch (const DomainError&) {
    rejected = true;
  }
  o.require(rejected, "(n,k) = (2,2) was not rejected");
  o.detail << "(2,2) rejected";
}

// ---- 9 ------------------------------------------------------------------

void torus(Outcome& o) {
  double prev = std::numeric_limits<double>::infinity();
  for (int i : {2, 4, 8}) {
    CheckOutcome c = check_torus(i, 128, 8, 0.05, 3, 20240601);
    const Json& r = c.record;
    double gh = r["quotient_gh_to_limit"]["eps"].get<double>();
    o.require(c.match, "torus verdicts at i=" + std::to_string(i) + ": " + r["blowup_diagnostic"].dump());
    o.require(gh <= prev, "quotient GH increases at i=" + std::to_string(i));
    prev = gh;
    o.detail << "i=" << i << ": |H|=" << r["H_order"] << " GH " << num(gh) << " ";
  }
}

// ---- 10 -----------------------------------------------------------------

void towers(Outcome& o) {
  for (int i = 1; i <= 5; ++i) {
    CheckOutcome c = check_tower(i);
    o.require(c.match, "no instability at i=" + std::to_string(i));
  }
  o.detail << "Z/2^i, i <= 5: a strictly larger subgroup is small one level up";
}

// ---- 11 -----------------------------------------------------------------

void dp_invariance(Outcome& o, long& count) {
  std::vector<Triple> groups;
  for (int i : {1, 2}) groups.push_back(hexagon_graph(i));
  for (int m = 3; m <= 12; ++m) groups.push_back(collapsing_sphere(1, 1, m));
  groups.push_back(collapsing_sphere(1, 2, 1));
  for (const auto& m : testing::small_pointed_spaces(4, {1, 2, 3})) groups.push_back(full_triple(m));
  for (const Triple& t : groups) {
    const auto& G = t.G();
    if (G.order() > 24) continue;
    for (int a = 0; a < G.order(); ++a)
      for (int b = 0; b < G.order(); ++b) {
        double d = dp_distance(G, a, b);
        for (int k = 0; k < G.order(); ++k) {
          if (dp_distance(G, G.mul(k, a), G.mul(k, b)) != d) {
            o.fail("d_p not left-invariant");
            return;
          }
          ++count;
        }
      }
  }
}

void hausdorff_axioms(Outcome& o, long& count) {
  auto spaces = testing::small_pointed_spaces(5, {1, 2});
  for (const auto& m : testing::small_pointed_spaces(4, {1, 2, 3})) spaces.push_back(m);
  for (const auto& m : spaces) {
    auto subs = all_nonempty_subsets(m.size());
    const size_t s = subs.size();
    std::vector<double> h(s * s);
    for (size_t a = 0; a < s; ++a)
      for (size_t b = 0; b < s; ++b) h[a * s + b] = hausdorff_distance(m, subs[a], subs[b]);
    for (size_t a = 0; a < s; ++a)
      for (size_t b = 0; b < s; ++b) {
        double ab = h[a * s + b];
        if (ab != h[b * s + a] || (a == b) != (ab == 0.0)) {
          o.fail("Hausdorff symmetry or positivity");
          return;
        }
        for (size_t c = 0; c < s; ++c) {
          if (h[a * s + c] > ab + h[b * s + c] + 1e-12) {
            o.fail("Hausdorff triangle inequality");
            return;
          }
          ++count;
        }
      }
  }
}

void escape_invariants(Outcome& o, long& count) {
  for (int n = 2; n <= 48; ++n) {
    auto C = std::make_shared<CyclicGroup>(n, CyclicGroup::Metric::Arc);
    for (int l = 0; 2 * l + 1 <= n; ++l) {
      std::vector<Elem> members;
      for (int k = -l; k <= l; ++k) members.push_back(Elem{static_cast<double>(((k % n) + n) % n)});
      Region A = finite_region(C, members);
      for (int k = 0; k < n; ++k) {
        double a = escape_norm(*C, A, Elem{static_cast<double>(k)});
        double b = escape_norm(*C, A, Elem{static_cast<double>((n - k) % n)});
        o.require(a == b, "escape norm not symmetric on Z_" + std::to_string(n));
        ++count;
      }
      ZeroSet z = zero_set(*C, A);
      std::set<long> zs;
      for (const Elem& e : z.members) zs.insert(std::lround(e[0]));
      for (long h : zs)
        for (long j = 1; j <= n; ++j) o.require(zs.count((h * j) % n) > 0, "zero set not closed under powers");
    }
  }
}

// Subgroups mapped next to the identity are small, and the bound shrinks.
void preimage_smallness(Outcome& o, long& count) {
  double prev = std::numeric_limits<double>::infinity();
  for (int i : {2, 4, 8}) {
    TorusCollapse tc = torus_collapse(i, 32, 8);
    for (const Elem& h : *tc.group->elements()) {
      if (tc.group->angle(h, 0) != 0.0) continue;
      double img = tc.map.target->dist(tc.map.phi(h), tc.map.target->identity());
      o.require(img == 0.0, "second factor does not map to e");
    }
    SmallVerdict v = detect_small(tc.triple, tc.H, {0.5, 1.0, 2.0}, 2.0, std::numbers::pi / i + 1e-9);
    o.require(v.small, "kernel not small at i=" + std::to_string(i));
    o.require(v.curve.back() <= prev, "kernel displacement grows with i");
    prev = v.curve.back();
    ++count;
  }
}

void almost_morphism(Outcome& o, long& count) {
  auto check = [&](const GhResult& r, const std::string& what) {
    if (!r.witness) return;
    double s = min_almost_morphism_slack(*r.witness);
    o.require(s >= 0.0, what + ": slack " + num(s));
    ++count;
  };
  for (int i : {1, 2, 4, 8}) check(equivariant_gh(collapsing_sphere(i, 1, 16), point_triple()), "sphere");
  for (int i : {1, 2, 4})
    for (int j : {1, 2, 4}) check(equivariant_gh(hexagon_graph(i), hexagon_graph(j)), "hexagon");
  auto spaces = testing::small_pointed_spaces(3, {1, 2, 3});
  std::vector<Triple> triples;
  for (const auto& m : spaces)
    for (Triple& t : testing::small_group_triples(m, 4)) triples.push_back(std::move(t));
  for (const Triple& a : triples)
    for (const Triple& b : triples) check(equivariant_gh(a, b), "small triples");
  for (int i : {2, 4}) {
    TorusCollapse tc = torus_collapse(i, 16, 4);
    auto q = quotient_sequence({tc.triple}, {tc.H});
    check(equivariant_gh(q[0].triple, tc.limit), "torus quotient");
  }
}

void invariants(Outcome& o) {
  long dp = 0, hd = 0, esc = 0, pre = 0, am = 0;
  dp_invariance(o, dp);
  hausdorff_axioms(o, hd);
  escape_invariants(o, esc);
  preimage_smallness(o, pre);
  almost_morphism(o, am);
  o.detail << "d_p " << dp << ", Hausdorff " << hd << ", escape " << esc << ", preimage " << pre
           << ", almost-morphism " << am << " checks";
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all = {
      {1, "hexagon reproduction", 1, hexagon},
      {2, "counterexample matrix", 30, counterexamples},
      {3, "GH oracle equivalence", 600, gh_oracle},
      {4, "collapsing spheres", 60, spheres},
      {5, "escape-norm exactness", 10, escape_exact},
      {6, "limsup formula", 10, limsup},
      {7, "convex-hull norm sandwich", 30, sandwich},
      {8, "Borsuk-Ulam solver", 120, borsuk},
      {9, "maximal-small pipeline", 120, torus},
      {10, "cyclic towers", 10, towers},
      {11, "invariant suites", 300, invariants},
  };
  std::set<int> only;
  for (int a = 1; a < argc; ++a) only.insert(std::stoi(argv[a]));

  int failed = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o.fail("runtime " + num(secs) + " s over the " + num(c.budget_s) + " s budget");
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << " (" << num(secs) << " s): "
              << o.detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
