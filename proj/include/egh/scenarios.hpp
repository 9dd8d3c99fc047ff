#pragma once

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <vector>

#include "egh/gh.hpp"
#include "egh/good_approx.hpp"
#include "egh/group.hpp"
#include "egh/region.hpp"

namespace egh {

// Bumped whenever a generator's output changes.
inline constexpr int kScenarioVersion = 1;

// Triangle a-b-c with a leaf attached to each corner (x-a, y-b, z-c), every
// edge of length i, based at x. The isometry group permutes {a, b, c}.
Triple hexagon_graph(int i);
// {e, (b c)}: the isometries fixing x and a. (b c) also swaps the leaves y and z.
Subgroup hexagon_small_subgroup(const Triple& hexagon);
// Ray sample {0, 1, ..., count-1} with the trivial group, based at 0.
Triple ray_triple(int count = 4);
Triple point_triple();

// Symmetric sample of the round n-sphere of radius 1/i with the geodesic
// metric. n = 1: regular mesh-gon, dihedral group. n = 2: vertices of the
// subdivided octahedron (subdivision level `mesh`), rotation group of order 24.
Triple collapsing_sphere(int i, int n, int mesh);

enum class Bullet { I, II, III, IV, V };
Bullet parse_bullet(const std::string& s);
std::string bullet_name(Bullet b);

// Finite realisation of a sequence that satisfies every condition but one.
ApproximationMap counterexample(Bullet which, int i);

// Identity map on Z/p^i with the p-adic metric; A = A_i = the whole group.
ApproximationMap cyclic_tower(int p, int i);

struct TowerLevel {
  int i = 0;
  int k = 0;              // H = p^k Z / p^i Z
  double delta = 0.0;     // p^-k
  size_t H_order = 0;
  bool H_expected = false;      // zero set equals p^k Z
  bool H_maximal = false;       // maximal among subgroups small at delta
  size_t larger_order = 0;      // p^{k-1} Z
  bool larger_small_next = false;  // small at the next level p * delta
  bool unstable() const { return H_expected && H_maximal && larger_small_next && larger_order > H_order; }
};
// Maximal small subgroup at tolerance p^-ceil(i/2), and the strictly larger
// subgroup that is small one level up.
TowerLevel tower_level(int p, int i);

struct TorusCollapse {
  int i = 0, grid = 0, minor = 0;
  Triple triple;                       // flat torus S^1(1) x S^1(1/i), translations
  std::shared_ptr<const TorusGrid> group;
  ApproximationMap map;                // first-factor angle into S^1
  Subgroup H;                          // second-factor translations
  Triple limit;                        // grid circle S^1(1)
};
// grid points on the first factor, minor points on the second (default: grid).
TorusCollapse torus_collapse(int i, int grid, int minor = 0);

// Z/n rotations into S^1 with A = the open half circle.
ApproximationMap rotation_approximation(int n);

// Group with a unit neighbourhood for the norm suites.
struct NormScenario {
  std::string name;
  GroupPtr group;
  Region B;
};
// "R1", "R2", "S1-arc", "T2", "SO3". radius <= 0 picks the default size
// (1 for the first four, 0.6 for SO3); T2 uses the box (r, 0.6 r).
NormScenario norm_scenario(const std::string& name, double radius = 0.0);
std::vector<std::string> norm_scenario_names();

// Random words of 2 or 3 letters drawn from a net of B, for the Gleason constant.
std::vector<std::vector<Elem>> gleason_words(const NormScenario& s, int count, std::uint64_t seed);
// Fixed-seed unit directions in R^k.
std::vector<Eigen::VectorXd> unit_directions(int k, int count, std::uint64_t seed);

// Circle minus a point: g = pi escapes at once, g_j = pi - 1/j never leaves.
struct PuncturedCircle {
  std::shared_ptr<const TorusGroup> group;
  Region A;
  Elem g;
  std::vector<Elem> g_seq;
};
PuncturedCircle punctured_circle(int terms = 40);

std::vector<std::string> scenario_names();

}  // namespace egh
