#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egh/group.hpp"
#include "egh/region.hpp"

namespace egh {

inline constexpr long long kEscapeCap = 1'000'000;

// ||g||_A = inf { 1/(m+1) : g^j in A for j = 0..m }. Zero when the powers
// return to e inside A, or stay in A up to m_cap.
double escape_norm(const Group& G, const Region& A, const Elem& g, long long m_cap = kEscapeCap);

// Norms of many elements; the parallel path uses OpenMP.
std::vector<double> escape_norm_table(const Group& G, const Region& A, const std::vector<Elem>& elems,
                                      bool parallel = true, long long m_cap = kEscapeCap);

// Z_n with A = {-l, ..., r}, g = k: first exit time from wrap counting alone.
double escape_norm_interval_oracle(long long n, long long l, long long r, long long k);

struct ZeroSet {
  std::vector<Elem> members;
  bool closed = true;  // closed under products
  std::optional<std::pair<Elem, Elem>> anomaly;  // a, b in the set with ab outside
};

ZeroSet zero_set(const Group& G, const Region& A, bool parallel = true);

struct TauResult {
  bool infinite = false;  // no exit before the horizon
  double tau_lo = 0.0;    // exp(tau_lo v) in B
  double tau_hi = 0.0;    // exp(tau_hi v) not in B
  double tau() const { return tau_hi; }
  double algebra_norm() const { return infinite ? 0.0 : 1.0 / tau_hi; }  // |v|_B
};

// First exit time of t -> exp(t v) from B: grid walk with step h, then
// bisection to relative width rel_tol.
TauResult tau_and_algebra_norm(const Group& G, const Region& B, const Eigen::VectorXd& v,
                               double h = 1e-2, double t_max = 1e3, double rel_tol = 1e-6);

struct LimsupRow {
  int m;
  double t, escape, ratio, error;
  bool upper_ok;  // escape <= t / tau
  bool lower_ok;  // escape >= 1/m
};

struct LimsupReport {
  TauResult tau;
  double algebra_norm = 0.0;
  double max_error = 0.0;
  bool upper_chain_ok = true;
  bool lower_chain_ok = true;
  std::vector<LimsupRow> rows;
};

// Ratios ||exp(t v)||_B / t at t = tau / m.
LimsupReport check_limsup_formula(const Group& G, const Region& B, const Eigen::VectorXd& v,
                                  const std::vector<int>& ms);

struct GleasonEstimate {
  double c0 = 0.0;      // max ratio ||g_1...g_m|| / sum ||g_j||
  int samples = 0;      // words with a positive denominator
  int excluded = 0;     // 0/0 words
  int violations = 0;   // zero denominator, non-zero numerator
  std::vector<Elem> worst_word;
};

GleasonEstimate estimate_gleason_constant(const Group& G, const Region& A,
                                          const std::vector<std::vector<Elem>>& words);

struct QuasinormReport {
  double worst_slack = 0.0;  // min of 2 C0 sum |v_j| - |sum v_j|
  bool ok = true;
  int tuples = 0;
};

QuasinormReport check_quasinorm(const Group& G, const Region& B,
                                const std::vector<std::vector<Eigen::VectorXd>>& tuples,
                                double c0);

// Minkowski gauge of the convex hull of a finite point set that spans the space.
class HullGauge {
 public:
  // Throws DomainError naming a direction orthogonal to every point when the
  // hull is not full-dimensional.
  explicit HullGauge(std::vector<Eigen::VectorXd> points);
  double operator()(const Eigen::VectorXd& v) const;
  int dim() const { return dim_; }
  const Eigen::MatrixXd& points() const { return pts_; }

 private:
  int dim_ = 0;
  Eigen::MatrixXd pts_;  // dim x count
};

// Hull of the sampled unit set {v : |v|_B <= 1}, from tau along each direction.
HullGauge convex_hull_norm(const Group& G, const Region& B,
                           const std::vector<Eigen::VectorXd>& directions);

struct ContinuityBoundReport {
  bool hypothesis_holds = true;
  std::optional<Elem> hypothesis_witness;  // h in cl(A)^3 \ A with h^2 in cl(A)
  double norm_g = 0.0;
  double liminf_tail = 0.0;  // min of ||g_j|| over the tail
  bool bound_holds = true;   // ||g|| <= 2 liminf ||g_j||
};

// Samples cl(A)^3 from a net of the closure with the given spacing.
ContinuityBoundReport check_norm_continuity_bound(const Group& G, const Region& A, const Elem& g,
                                                  const std::vector<Elem>& g_seq,
                                                  double net_spacing,
                                                  long long m_cap = kEscapeCap);

}  // namespace egh
