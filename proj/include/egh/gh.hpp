#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egh/isometry.hpp"
#include "egh/metric.hpp"

namespace egh {

// Pointed metric space together with a group of isometries.
struct Triple {
  std::shared_ptr<const FiniteMetricSpace> space;
  std::shared_ptr<const IsometryGroup> group;

  const FiniteMetricSpace& X() const { return *space; }
  const IsometryGroup& G() const { return *group; }
};

Triple make_triple(FiniteMetricSpace m, const std::vector<Perm>& gens);
Triple trivial_triple(FiniteMetricSpace m);
Triple full_triple(FiniteMetricSpace m);

struct Correspondence {
  std::vector<std::pair<int, int>> pairs;
  double distortion = 0.0;
};

double distortion(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                  const std::vector<std::pair<int, int>>& pairs);

// Witness for d_eGH < eps: the metric on X ⊔ Y is
//   dbar(x, y) = min over related (x', y') of d(x, x') + d(y', y) + offset,
// with offset >= distortion / 2 so dbar is a metric.
struct EpsApproximation {
  double eps = 0.0;
  Triple X, Y;
  Correspondence relation;
  double offset = 0.0;
  std::vector<double> cross;  // |X| x |Y|, row-major
  std::vector<int> phi;       // G -> H (identity where unconstrained)
  std::vector<int> psi;       // H -> G

  double dbar(int x, int y) const { return cross[static_cast<size_t>(x) * Y.X().size() + y]; }
  // X ⊔ Y as one space, X first; basepoint is p.
  FiniteMetricSpace union_space() const;
};

EpsApproximation make_approximation(const Triple& X, const Triple& Y, double eps,
                                    Correspondence R, std::vector<int> phi, std::vector<int> psi);

struct ApproximationAudit {
  bool metric = false;        // dbar is a metric extending both metrics
  bool cover_x = false;       // each x in B_{1/eps}(p) has a partner closer than eps
  bool cover_y = false;
  bool basepoints = false;    // dbar(p, q) < eps
  bool equivariant = false;   // displacement inequalities for phi and psi
  double worst_equivariant = 0.0;  // largest |dbar(x,y) - dbar(gx, phi(g)y)| seen
  bool ok() const { return metric && cover_x && cover_y && basepoints && equivariant; }
};

ApproximationAudit audit(const EpsApproximation& a);

struct GhOptions {
  double tol = 1e-6;
  int exact_points_pointed = 8;
  int exact_points_equivariant = 6;
  int exact_group_order = 24;
  // Inputs past the size limits are still solved exactly when the map count
  // |Y|^|X| * |X|^|Y| is at most this.
  double tiny_search_space = 1e6;
  long long node_budget = 2'000'000;  // per feasibility call in bounds mode
};

struct GhResult {
  double value = 0.2;  // exact value, or the upper bound in bounds mode
  double lower = 0.0;
  double upper = 0.2;
  bool exact = true;
  std::optional<EpsApproximation> witness;
  std::string mode() const { return exact ? "exact" : "bounds"; }
};

GhResult pointed_gh(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                    const GhOptions& opt = {});
GhResult equivariant_gh(const Triple& X, const Triple& Y, const GhOptions& opt = {});

// Exhaustive search over the same correspondence family. Exact values,
// exponential cost; used as test oracles. `parallel` selects the OpenMP path.
double pointed_gh_oracle(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                         bool parallel = false);
double equivariant_gh_oracle(const Triple& X, const Triple& Y, bool parallel = false);

// 7 eps - d(phi(g1 g2) y, phi(g1) phi(g2) y). Throws DomainError unless
// d(g1 p, p), d(g2 p, p) < 1/(6 eps) and y in B_{1/(12 eps)}(q).
double check_almost_morphism(const EpsApproximation& a, int g1, int g2, int y);
// Minimum slack over every admissible (g1, g2, y); +inf if none.
double min_almost_morphism_slack(const EpsApproximation& a);

// Sorted distinct displacements d(gp, p) over the group.
std::vector<double> displacement_spectrum(const Triple& t);
// Candidate farthest from every positive displacement value (where
// r -> {g : d(gp,p) <= r} jumps) and from 0 when there is a jump; ties go to
// the smaller candidate.
double regular_radius(const Triple& t, std::vector<double> candidates);

}  // namespace egh
