#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "egh/gh.hpp"
#include "egh/group.hpp"
#include "egh/isometry.hpp"
#include "egh/region.hpp"

namespace egh {

// One index of a sequence phi_i : G_i -> G with regular neighbourhoods.
struct ApproximationMap {
  std::string label;
  GroupPtr source, target;
  std::function<Elem(const Elem&)> phi;
  std::vector<Elem> A_src;  // finite symmetric subset of the source
  Region A_tgt;
  double source_scale = 1.0;  // the source metric is source_scale * source->dist

  double src_dist(const Elem& a, const Elem& b) const { return source_scale * source->dist(a, b); }
};

// Fails with a StructuralError naming the element if A_src is not symmetric.
void require_symmetric(const Group& G, const std::vector<Elem>& s);
std::vector<Elem> symmetric_closure(const Group& G, const std::vector<Elem>& s);

struct ConditionResult {
  bool pass = true;
  double slack = 0.0;          // positive means margin; +inf when nothing was tested
  std::vector<Elem> witness;   // non-empty iff failed
  std::string note;
};

struct ConditionReport {
  double delta = 0.0;
  int n_max = 3;
  std::array<ConditionResult, 5> cond;  // I..V
  bool all_pass() const;
  std::vector<int> failing() const;  // 1-based condition numbers
};

struct CheckOptions {
  int n_max = 3;
  size_t pair_budget = 200'000;  // condition III pairs when A^n x A^n is larger
  std::uint64_t seed = 12345;
};

// Finite-scale conditions at tolerance delta:
//  I   every delta-ball about a net point of A at depth >= delta meets phi(A_i);
//  II  phi(A_i) lies within delta of cl(A);
//  III sup over (sampled) pairs of A_i^n of d(phi(gh), phi(g) phi(h)) <= delta;
//  IV  g in A_i^n with phi(g) at depth >= delta in A lies in A_i;
//  V   for K = cl B_delta(c), U = B_{3 delta}(c) with c at depth >= 3 delta, the
//      union U_i of source balls of radius eps/3 (eps = 2 delta) about the
//      points of A_i mapping within eps/3 of K satisfies phi(U_i) in U.
ConditionReport check_conditions(const ApproximationMap& a, double delta,
                                 const CheckOptions& opt = {});
std::vector<ConditionReport> check_conditions(const std::vector<ApproximationMap>& seq,
                                              double delta, const CheckOptions& opt = {});

// psi = phi on {g : key(g) <= key(g^-1)} and psi(g) = phi(g^-1)^-1 elsewhere.
ApproximationMap symmetrize(const ApproximationMap& a);

// Regular neighbourhoods (A_src ∩ phi^-1(B), B), made symmetric.
// Throws DomainError when B is not inside cl(A_tgt).
ApproximationMap localize(const ApproximationMap& a, const Region& B_tgt, double check_spacing = 0.05);

struct SmallVerdict {
  Subgroup subgroup;
  std::vector<double> radii;
  std::vector<double> curve;  // sup_h sup_{x in B_r(p)} d(hx, x) at each radius
  double radius = 0.0;        // radius R used for the verdict
  double delta = 0.0;
  bool small = false;         // curve(R) <= delta
};

SmallVerdict detect_small(const Triple& t, const Subgroup& H, const std::vector<double>& radii,
                          double R, double delta);

// Subgroups of a finite abstract group.
std::vector<Elem> generated_subgroup_elems(const Group& G, const std::vector<Elem>& gens);
std::vector<std::vector<Elem>> enumerate_subgroups(const Group& G, size_t cap = 20000);
std::vector<std::vector<Elem>> cyclic_subgroups(const Group& G);

struct MaximalSmall {
  std::vector<Elem> H;
  bool is_subgroup = false;
  std::optional<std::pair<Elem, Elem>> anomaly;
  bool small = false;           // H in A_src and phi(H) within delta of e
  double small_slack = 0.0;
  bool maximal = false;         // every small subgroup lies in H
  std::optional<std::vector<Elem>> escaping;  // small subgroup not inside H
  std::string method;           // "all-subgroups" or "cyclic"
};

// H = escape-norm zero set of the (localized) A_src. Small means H ⊂ A_src and
// d(phi(h), e) <= delta. Groups up to `enumerate_limit` are checked against
// every subgroup, larger ones against cyclic subgroups, which is equivalent.
MaximalSmall maximal_small(const ApproximationMap& localized, double delta,
                           size_t enumerate_limit = 24);

// Quotient triple by a normal subgroup; DomainError otherwise.
struct QuotientStep {
  Triple triple;
  QuotientGroup qg;
};
std::vector<QuotientStep> quotient_sequence(const std::vector<Triple>& seq,
                                            const std::vector<Subgroup>& H);

// Lie-type target blow-up: psi = m log(phi) (0 where log is undefined),
// B_i = A_i ∩ phi^-1(B_{1/m}(e)), B = unit ball of R^k, source metric scaled by m.
struct BlowupResult {
  std::vector<ApproximationMap> maps;
  std::vector<int> schedule;
  std::vector<std::string> diagnostics;  // first failing bullet per index, "" if none
  bool feasible = true;
};

BlowupResult blowup(const std::vector<ApproximationMap>& seq, int k, const std::vector<int>& schedule);

struct BlowupBoundsReport {
  double worst_inner = 0.0;  // min of 3 delta/2 - |psi(exp v)| over |v|_i <= delta
  double worst_outer = 0.0;  // min of |psi(exp v)| - delta/4 over |v|_i in [delta, 1/delta]
  int inner_samples = 0, outer_samples = 0;
  bool ok = true;
};

// Directions are unit vectors in the source algebra; magnitudes are chosen so
// |v|_i sweeps [0, 1/delta].
BlowupBoundsReport verify_blowup_bounds(const ApproximationMap& blown, double delta,
                                        const std::vector<Eigen::VectorXd>& directions,
                                        int magnitudes = 40);

struct ContinuityReport {
  double min_modulus = 0.0;      // smallest admissible radius over A^n
  double min_margin = 0.0;       // min of modulus - nearest-neighbour distance
  bool pass = true;              // every point has a non-trivial admissible ball
  std::optional<Elem> witness;
};

// Largest source radius about each p in A^n whose image stays within eps of
// phi(p). At finite scale "positive" means larger than the distance to the
// nearest other sample point.
ContinuityReport check_eps_continuity(const ApproximationMap& a, int n, double eps);

// Maps built from chosen element images with displacement sets as
// neighbourhoods; the limit side is a finite triple.
ApproximationMap approximation_from_displacement(const Triple& source, const Triple& target,
                                                 std::vector<int> phi, double r0);
std::vector<ApproximationMap> induce_approximation(const std::vector<EpsApproximation>& seq, double r0);

}  // namespace egh
