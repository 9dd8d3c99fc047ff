#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "egh/metric.hpp"

namespace egh {

using Perm = std::vector<int>;

Perm identity_perm(int n);
// (a * b)(x) = a(b(x)): apply b first.
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
bool is_isometry(const FiniteMetricSpace& m, const Perm& g, double tol = kMetricTol);

struct PermHash {
  size_t operator()(const Perm& p) const noexcept;
};

inline constexpr int kGroupCap = 10080;

// Finite group of isometries. Elements are sorted lexicographically, so the
// identity is element 0.
class IsometryGroup {
 public:
  IsometryGroup() = default;
  IsometryGroup(std::shared_ptr<const FiniteMetricSpace> space, std::vector<Perm> elements,
                std::vector<Perm> generators);

  const FiniteMetricSpace& space() const { return *space_; }
  const std::shared_ptr<const FiniteMetricSpace>& space_ptr() const { return space_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<Perm>& elements() const { return elements_; }
  const Perm& element(int i) const { return elements_[i]; }
  const std::vector<Perm>& generators() const { return generators_; }

  int index_of(const Perm& p) const;  // -1 when p is not in the group
  int mul(int a, int b) const;
  int inv(int a) const { return inverse_[a]; }
  int power(int a, long long k) const;
  int element_order(int a) const;
  // d(g p, p) for the basepoint p.
  double displacement(int g) const;

 private:
  std::shared_ptr<const FiniteMetricSpace> space_;
  std::vector<Perm> elements_;
  std::vector<Perm> generators_;
  std::unordered_map<Perm, int, PermHash> index_;
  std::vector<int> inverse_;
  std::vector<int> table_;  // order^2 product table when small enough
};

IsometryGroup full_isometry_group(std::shared_ptr<const FiniteMetricSpace> m,
                                  int cap = kGroupCap);
IsometryGroup closure(std::shared_ptr<const FiniteMetricSpace> m, const std::vector<Perm>& gens,
                      int cap = kGroupCap);

// d_p(g,h) = inf_{r>0} 1/r + sup_{x in B_r(p)} d(gx,hx), evaluated exactly.
double dp_distance(const FiniteMetricSpace& m, const Perm& g, const Perm& h);
double dp_distance(const IsometryGroup& G, int g, int h);

Subset orbit(const IsometryGroup& G, int x);
// Orbit of x under the listed elements (assumed to form a group).
Subset orbit(const std::vector<Perm>& elems, int x);

struct QuotientSpace {
  FiniteMetricSpace space;
  std::vector<int> class_of;         // point -> orbit index
  std::vector<Subset> orbits;        // orbit index -> points
};

// Quotient by the group formed by `elems`. Distances are minima over orbit
// pairs; the result is re-validated and a StructuralError is thrown otherwise.
QuotientSpace quotient(const FiniteMetricSpace& m, const std::vector<Perm>& elems);
QuotientSpace quotient(const IsometryGroup& G);

using Subgroup = std::vector<int>;  // sorted element indices

std::vector<Perm> elements_of(const IsometryGroup& G, const Subgroup& H);
bool is_subgroup(const IsometryGroup& G, const Subgroup& H);
Subgroup generated_subgroup(const IsometryGroup& G, const std::vector<int>& gens);
Subgroup cyclic_subgroup(const IsometryGroup& G, int g);

struct Conjugation {
  int g, h, ghg_inv;
};
std::optional<Conjugation> normality_violation(const IsometryGroup& G, const Subgroup& H);
bool is_normal(const IsometryGroup& G, const Subgroup& H);

struct QuotientGroup {
  QuotientSpace quotient;
  IsometryGroup group;      // acts on quotient.space
  std::vector<int> coset;   // element of G -> element of group
};
// Throws DomainError naming a violating conjugation when H is not normal.
QuotientGroup quotient_group(const IsometryGroup& G, const Subgroup& H);

// Every subgroup, found by closing under one extra generator at a time.
std::vector<Subgroup> enumerate_subgroups(const IsometryGroup& G, int cap = 20000);

// sup_{h in H} sup_{x in B_r(p)} d(hx, x) with the open ball.
double displacement_sup(const IsometryGroup& G, const Subgroup& H, double r);

std::string perm_to_string(const Perm& p);
// Cycle notation using point labels, e.g. "(b c)"; "e" for the identity.
std::string cycle_string(const FiniteMetricSpace& m, const Perm& p);

}  // namespace egh
