#pragma once

#include <functional>
#include <string>
#include <vector>

#include "egh/group.hpp"

namespace egh {

// A subset of a group given by predicates, with the two distance functions
// the condition checker needs and a deterministic finite net of its closure.
struct Region {
  std::string label;
  GroupPtr group;
  std::function<bool(const Elem&)> contains;
  // Distance to the closure; 0 on the closure.
  std::function<double(const Elem&)> dist_closure;
  // Distance to the complement; 0 outside.
  std::function<double(const Elem&)> depth;
  // Points of the closure, every closure point within `spacing` of one.
  std::function<std::vector<Elem>(double spacing)> net;
};

// Interval (lo, hi) in R^1 or Z^1 (open) or [lo, hi] (closed).
Region interval_region(GroupPtr g, double lo, double hi, bool open);
// Euclidean ball of given radius about 0 in R^k / Z^k, open or closed.
Region euclidean_ball_region(GroupPtr g, double radius, bool open);
// {|angle_j| < half_width_j} on a TorusGroup or TorusGrid. Distances use the
// group metric, which is the flat product metric in both cases.
Region angle_box_region(GroupPtr g, std::vector<double> half_width);
// Rotations by angle < radius.
Region so3_ball_region(GroupPtr g, double radius);
// Explicit finite member list inside a finite group.
Region finite_region(GroupPtr g, std::vector<Elem> members, std::string label = "finite");
// Integers lo..hi inside Z^1; depth is the distance to the nearest non-member.
Region lattice_interval_region(GroupPtr g, long long lo, long long hi);
// Whole (finite) group.
Region whole_region(GroupPtr g);

}  // namespace egh
