#include "egh/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <unordered_set>

#include "egh/errors.hpp"

namespace egh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> grid_1d(double lo, double hi, double spacing) {
  if (!(spacing > 0)) throw DomainError("net spacing must be positive");
  std::vector<double> out;
  int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) / spacing)));
  for (int k = 0; k <= steps; ++k) out.push_back(lo + (hi - lo) * k / steps);
  return out;
}

// Cartesian product of per-axis grids.
std::vector<Elem> product_grid(const std::vector<std::vector<double>>& axes) {
  std::vector<Elem> out{Elem::of_size(static_cast<int>(axes.size()))};
  for (size_t j = 0; j < axes.size(); ++j) {
    std::vector<Elem> next;
    for (const Elem& e : out)
      for (double v : axes[j]) {
        Elem f = e;
        f[static_cast<int>(j)] = v;
        next.push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Region interval_region(GroupPtr g, double lo, double hi, bool open) {
  if (!(lo < hi)) throw DomainError("interval needs lo < hi");
  Region r;
  r.label = std::string(open ? "(" : "[") + std::to_string(lo) + "," + std::to_string(hi) +
            (open ? ")" : "]");
  r.group = g;
  r.contains = [=](const Elem& x) { return open ? (x[0] > lo && x[0] < hi) : (x[0] >= lo && x[0] <= hi); };
  r.dist_closure = [=](const Elem& x) { return std::max({0.0, lo - x[0], x[0] - hi}); };
  r.depth = [=](const Elem& x) {
    bool in = open ? (x[0] > lo && x[0] < hi) : (x[0] >= lo && x[0] <= hi);
    return in ? std::min(x[0] - lo, hi - x[0]) : 0.0;
  };
  r.net = [=](double s) {
    std::vector<Elem> out;
    for (double v : grid_1d(lo, hi, s)) out.push_back(Elem{v});
    return out;
  };
  return r;
}

Region euclidean_ball_region(GroupPtr g, double radius, bool open) {
  const int k = g->identity().n;
  Region r;
  r.label = "ball(" + std::to_string(radius) + ")";
  r.group = g;
  auto norm = [k](const Elem& x) {
    double s = 0;
    for (int i = 0; i < k; ++i) s += x[i] * x[i];
    return std::sqrt(s);
  };
  r.contains = [=](const Elem& x) { return open ? norm(x) < radius : norm(x) <= radius; };
  r.dist_closure = [=](const Elem& x) { return std::max(0.0, norm(x) - radius); };
  r.depth = [=](const Elem& x) {
    double n = norm(x);
    bool in = open ? n < radius : n <= radius;
    return in ? radius - n : 0.0;
  };
  r.net = [=](double s) {
    // Axis grid at spacing s/sqrt(k), projected radially into the closed ball.
    double h = s / std::sqrt(static_cast<double>(k));
    std::vector<std::vector<double>> axes(k, grid_1d(-radius, radius, h));
    std::vector<Elem> out;
    for (Elem e : product_grid(axes)) {
      double n = norm(e);
      if (n > radius)
        for (int i = 0; i < k; ++i) e[i] *= radius / n;
      out.push_back(e);
    }
    return out;
  };
  return r;
}

Region angle_box_region(GroupPtr g, std::vector<double> half_width) {
  const int k = static_cast<int>(half_width.size());
  if (g->identity().n != k) throw DomainError("angle box dimension mismatch");
  auto grid = std::dynamic_pointer_cast<const TorusGrid>(g);
  auto cont = std::dynamic_pointer_cast<const TorusGroup>(g);
  if (!grid && !cont) throw DomainError("angle box needs a torus group");
  // Per-axis radii for converting angles into lengths.
  std::vector<double> radii(k, 1.0);
  if (grid) radii = grid->radii();
  else
    for (int j = 0; j < k; ++j) {
      Elem e = g->identity();
      e[j] = 1.0;
      radii[j] = g->dist(e, g->identity());
    }
  auto angle = [grid](const Elem& x, int j) { return grid ? grid->angle(x, j) : wrap_angle(x[j]); };

  Region r;
  r.label = "box";
  r.group = g;
  r.contains = [=](const Elem& x) {
    for (int j = 0; j < k; ++j)
      if (!(std::abs(angle(x, j)) < half_width[j])) return false;
    return true;
  };
  r.dist_closure = [=](const Elem& x) {
    double s = 0;
    for (int j = 0; j < k; ++j) {
      double t = radii[j] * std::max(0.0, std::abs(angle(x, j)) - half_width[j]);
      s += t * t;
    }
    return std::sqrt(s);
  };
  r.depth = [=](const Elem& x) {
    double best = kInf;
    for (int j = 0; j < k; ++j) {
      double a = std::abs(angle(x, j));
      if (!(a < half_width[j])) return 0.0;
      // A full-circle box has no boundary along this axis.
      if (half_width[j] < std::numbers::pi) best = std::min(best, radii[j] * (half_width[j] - a));
    }
    return best;
  };
  r.net = [=](double s) {
    std::vector<std::vector<double>> axes;
    for (int j = 0; j < k; ++j) {
      double h = s / (radii[j] * std::sqrt(static_cast<double>(k)));
      axes.push_back(grid_1d(-half_width[j], half_width[j], h));
    }
    std::vector<Elem> pts = product_grid(axes);
    if (!grid) {
      for (Elem& e : pts)
        for (int j = 0; j < k; ++j) e[j] = wrap_angle(e[j]);
      return pts;
    }
    // Snap to grid rotations and de-duplicate.
    std::vector<Elem> out;
    std::unordered_set<ElemKey, ElemKeyHash> seen;
    for (const Elem& e : pts) {
      Eigen::VectorXd v(k);
      for (int j = 0; j < k; ++j) v(j) = e[j];
      Elem q = grid->exp(v);
      bool inside = true;
      for (int j = 0; j < k; ++j) inside = inside && std::abs(angle(q, j)) <= half_width[j];
      if (inside && seen.insert(grid->key(q)).second) out.push_back(q);
    }
    return out;
  };
  return r;
}

Region so3_ball_region(GroupPtr g, double radius) {
  if (!std::dynamic_pointer_cast<const SO3Group>(g)) throw DomainError("so3 ball needs SO(3)");
  Region r;
  r.label = "so3ball(" + std::to_string(radius) + ")";
  r.group = g;
  r.contains = [=](const Elem& x) { return SO3Group::angle(x) < radius; };
  r.dist_closure = [=](const Elem& x) { return std::max(0.0, SO3Group::angle(x) - radius); };
  r.depth = [=](const Elem& x) { return std::max(0.0, radius - SO3Group::angle(x)); };
  r.net = [=](double s) {
    // Axis-angle grid in the algebra ball; exp is 1-Lipschitz onto the group.
    double h = s / std::sqrt(3.0);
    std::vector<std::vector<double>> axes(3, grid_1d(-radius, radius, h));
    std::vector<Elem> out;
    for (const Elem& e : product_grid(axes)) {
      Eigen::VectorXd v(3);
      v << e[0], e[1], e[2];
      double n = v.norm();
      if (n > radius) v *= radius / n;
      out.push_back(g->exp(v));
    }
    return out;
  };
  return r;
}

Region finite_region(GroupPtr g, std::vector<Elem> members, std::string label) {
  auto all = g->elements();
  if (!all) throw DomainError("finite_region needs a finite group");
  auto keys = std::make_shared<std::unordered_set<ElemKey, ElemKeyHash>>();
  for (const Elem& m : members) keys->insert(g->key(m));
  auto outside = std::make_shared<std::vector<Elem>>();
  for (const Elem& e : *all)
    if (!keys->count(g->key(e))) outside->push_back(e);
  auto mem = std::make_shared<std::vector<Elem>>(std::move(members));

  Region r;
  r.label = std::move(label);
  r.group = g;
  r.contains = [g, keys](const Elem& x) { return keys->count(g->key(x)) > 0; };
  r.dist_closure = [g, keys, mem](const Elem& x) {
    if (keys->count(g->key(x))) return 0.0;
    double best = kInf;
    for (const Elem& m : *mem) best = std::min(best, g->dist(x, m));
    return best;
  };
  r.depth = [g, keys, outside](const Elem& x) {
    if (!keys->count(g->key(x))) return 0.0;
    double best = kInf;
    for (const Elem& o : *outside) best = std::min(best, g->dist(x, o));
    return best;
  };
  r.net = [mem](double) { return *mem; };
  return r;
}

Region whole_region(GroupPtr g) {
  auto all = g->elements();
  if (!all) throw DomainError("whole_region needs a finite group");
  return finite_region(g, std::move(*all), "whole");
}

Region lattice_interval_region(GroupPtr g, long long lo, long long hi) {
  if (lo > hi) throw DomainError("integer interval needs lo <= hi");
  const double a = static_cast<double>(lo), b = static_cast<double>(hi);
  Region r;
  r.label = "{" + std::to_string(lo) + ".." + std::to_string(hi) + "}";
  r.group = g;
  r.contains = [=](const Elem& x) { return x[0] >= a - 0.5 && x[0] <= b + 0.5; };
  r.dist_closure = [=](const Elem& x) { return std::max({0.0, a - x[0], x[0] - b}); };
  r.depth = [=](const Elem& x) {
    if (x[0] < a - 0.5 || x[0] > b + 0.5) return 0.0;
    return std::min(x[0] - (a - 1.0), (b + 1.0) - x[0]);
  };
  r.net = [=](double) {
    std::vector<Elem> out;
    for (long long v = lo; v <= hi; ++v) out.push_back(Elem{static_cast<double>(v)});
    return out;
  };
  return r;
}

}  // namespace egh
