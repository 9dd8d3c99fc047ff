#pragma once

#include <cstdint>

#include "egh/io.hpp"
#include "egh/scenarios.hpp"

namespace egh {

// One scenario index run through its expected verdicts. `record` holds the
// measured quantities, `match` whether every verdict came out as expected.
struct CheckOutcome {
  Json record;
  bool match = true;
};

// H = {e, (b c)}: small, maximal, not normal; conditions I-V pass for the
// displacement map to a point.
CheckOutcome check_hexagon(int i, double delta, int nmax);
// Exactly the named condition fails.
CheckOutcome check_counterexample(Bullet b, int i, double delta, int nmax);
// Zero set is the second factor, quotient GH to the limit circle, blow-up
// with k = 1 at delta 0.1 and bounds at 1/4.
CheckOutcome check_torus(int i, int grid, int minor, double delta, int nmax, std::uint64_t seed);
// Maximal small subgroup of Z/2^i is unstable one level up.
CheckOutcome check_tower(int i);
// Circle of radius 1/i (16-gon) within pi/i + spacing of a point.
CheckOutcome check_sphere(int i);
// Rotations Z/64i into S^1 pass every condition.
CheckOutcome check_rotation(int i, double delta, int nmax);

}  // namespace egh
