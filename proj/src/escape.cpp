#include "egh/escape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "egh/errors.hpp"
#include "egh/lp.hpp"
#include "egh/parallel.hpp"

namespace egh {

double escape_norm(const Group& G, const Region& A, const Elem& g, long long m_cap) {
  long long limit = m_cap;
  if (auto ord = G.element_order(g)) limit = std::min(limit, *ord);
  const Elem e = G.identity();
  Elem h = e;
  for (long long j = 1; j <= limit; ++j) {
    h = G.mul(h, g);
    if (!A.contains(h)) return 1.0 / static_cast<double>(j);
    if (G.same(h, e)) return 0.0;
  }
  return 0.0;
}

std::vector<double> escape_norm_table(const Group& G, const Region& A, const std::vector<Elem>& elems,
                                      bool parallel, long long m_cap) {
  std::vector<double> out(elems.size());
  const long long n = static_cast<long long>(elems.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count())
    for (long long i = 0; i < n; ++i) out[i] = escape_norm(G, A, elems[i], m_cap);
  } else {
    for (long long i = 0; i < n; ++i) out[i] = escape_norm(G, A, elems[i], m_cap);
  }
  return out;
}

double escape_norm_interval_oracle(long long n, long long l, long long r, long long k) {
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return 0.0;
  // Complement of {-l..r} is the residue window [r+1, n-l-1].
  const long long lo = r + 1, hi = n - l - 1;
  if (lo > hi) return 0.0;  // A is everything
  const long long order = n / std::gcd(k, n);
  // During wrap w the walk j*k crosses [w n + lo, w n + hi]; the first
  // multiple of k at or past the window start decides it.
  for (long long w = 0; w < k; ++w) {
    long long start = w * n + lo;
    long long j = (start + k - 1) / k;
    if (j >= order) return 0.0;
    if (j * k <= w * n + hi) return 1.0 / static_cast<double>(j);
  }
  return 0.0;
}

ZeroSet zero_set(const Group& G, const Region& A, bool parallel) {
  auto all = G.elements();
  if (!all) throw DomainError("zero_set needs a finite group");
  auto norms = escape_norm_table(G, A, *all, parallel);
  ZeroSet z;
  std::unordered_set<ElemKey, ElemKeyHash> keys;
  for (size_t i = 0; i < all->size(); ++i)
    if (norms[i] == 0.0) {
      z.members.push_back((*all)[i]);
      keys.insert(G.key((*all)[i]));
    }
  for (const Elem& a : z.members) {
    for (const Elem& b : z.members)
      if (!keys.count(G.key(G.mul(a, b)))) {
        z.closed = false;
        z.anomaly = std::make_pair(a, b);
        break;
      }
    if (!z.closed) break;
  }
  return z;
}

TauResult tau_and_algebra_norm(const Group& G, const Region& B, const Eigen::VectorXd& v, double h,
                               double t_max, double rel_tol) {
  if (!(h > 0)) throw DomainError("tau grid step must be positive");
  TauResult r;
  if (v.norm() == 0.0) {
    r.infinite = true;
    return r;
  }
  double prev = 0.0;
  double t = h;
  while (t <= t_max) {
    if (!B.contains(G.exp(t * v))) break;
    prev = t;
    t += h;
  }
  if (t > t_max) {
    r.infinite = true;
    r.tau_lo = prev;
    return r;
  }
  double lo = prev, hi = t;
  while (hi - lo > rel_tol * hi) {
    double mid = 0.5 * (lo + hi);
    if (B.contains(G.exp(mid * v))) lo = mid;
    else hi = mid;
  }
  r.tau_lo = lo;
  r.tau_hi = hi;
  return r;
}

LimsupReport check_limsup_formula(const Group& G, const Region& B, const Eigen::VectorXd& v,
                                  const std::vector<int>& ms) {
  LimsupReport rep;
  rep.tau = tau_and_algebra_norm(G, B, v);
  rep.algebra_norm = rep.tau.algebra_norm();
  for (int m : ms) {
    if (m < 1) throw DomainError("limsup sequence needs m >= 1");
    LimsupRow row;
    row.m = m;
    if (rep.tau.infinite) {
      // Any positive step stays inside: every ratio is 0.
      row.t = 1.0 / m;
      row.escape = escape_norm(G, B, G.exp(row.t * v));
      row.ratio = row.escape / row.t;
      row.error = row.ratio;
      row.upper_ok = row.escape == 0.0;
      row.lower_ok = true;
    } else {
      row.t = rep.tau.tau_hi / m;
      row.escape = escape_norm(G, B, G.exp(row.t * v));
      row.ratio = row.escape / row.t;
      row.error = std::abs(row.ratio - rep.algebra_norm);
      row.upper_ok = row.escape <= row.t / rep.tau.tau_lo;
      row.lower_ok = row.escape >= 1.0 / m;
    }
    rep.max_error = std::max(rep.max_error, row.error);
    rep.upper_chain_ok = rep.upper_chain_ok && row.upper_ok;
    rep.lower_chain_ok = rep.lower_chain_ok && row.lower_ok;
    rep.rows.push_back(row);
  }
  return rep;
}

GleasonEstimate estimate_gleason_constant(const Group& G, const Region& A,
                                          const std::vector<std::vector<Elem>>& words) {
  GleasonEstimate est;
  for (const auto& w : words) {
    if (w.empty()) continue;
    Elem prod = G.identity();
    double denom = 0.0;
    for (const Elem& g : w) {
      prod = G.mul(prod, g);
      denom += escape_norm(G, A, g);
    }
    double num = escape_norm(G, A, prod);
    if (denom == 0.0) {
      if (num == 0.0) ++est.excluded;
      else ++est.violations;
      continue;
    }
    ++est.samples;
    double ratio = num / denom;
    if (ratio > est.c0) {
      est.c0 = ratio;
      est.worst_word = w;
    }
  }
  return est;
}

QuasinormReport check_quasinorm(const Group& G, const Region& B,
                                const std::vector<std::vector<Eigen::VectorXd>>& tuples,
                                double c0) {
  QuasinormReport rep;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  for (const auto& tup : tuples) {
    if (tup.empty()) continue;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(tup.front().size());
    double total = 0.0;
    for (const auto& v : tup) {
      sum += v;
      total += tau_and_algebra_norm(G, B, v).algebra_norm();
    }
    double lhs = tau_and_algebra_norm(G, B, sum).algebra_norm();
    double slack = 2.0 * c0 * total - lhs;
    rep.worst_slack = std::min(rep.worst_slack, slack);
    rep.ok = rep.ok && slack >= 0.0;
    ++rep.tuples;
  }
  return rep;
}

HullGauge::HullGauge(std::vector<Eigen::VectorXd> points) {
  if (points.empty()) throw DomainError("hull needs points");
  dim_ = static_cast<int>(points.front().size());
  pts_.resize(dim_, static_cast<Eigen::Index>(points.size()));
  for (size_t j = 0; j < points.size(); ++j) pts_.col(static_cast<Eigen::Index>(j)) = points[j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(pts_, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  double tol = 1e-10 * std::max(1.0, s.size() ? s(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++rank;
  if (rank < dim_) {
    Eigen::VectorXd normal = svd.matrixU().col(dim_ - 1);
    std::ostringstream os;
    os << "hull is not full-dimensional (rank " << rank << " of " << dim_
       << "); every point is orthogonal to [" << normal.transpose() << "]";
    throw DomainError(os.str());
  }
}

double HullGauge::operator()(const Eigen::VectorXd& v) const {
  if (v.size() != dim_) throw StructuralError("gauge dimension mismatch");
  if (v.norm() == 0.0) return 0.0;
  // min sum(mu) with pts * mu = v, mu >= 0.
  Eigen::VectorXd c = Eigen::VectorXd::Ones(pts_.cols());
  LpResult r = solve_lp(c, pts_, v);
  if (r.status != LpResult::Status::Optimal)
    throw DomainError("gauge LP failed; the hull may not contain the origin in its interior");
  return r.objective;
}

HullGauge convex_hull_norm(const Group& G, const Region& B,
                           const std::vector<Eigen::VectorXd>& directions) {
  std::vector<Eigen::VectorXd> pts;
  for (const auto& d : directions) {
    double n = d.norm();
    if (n == 0.0) continue;
    Eigen::VectorXd u = d / n;
    TauResult t = tau_and_algebra_norm(G, B, u);
    if (t.infinite) continue;  // unbounded along u; no boundary point to add
    // tau_lo keeps the point inside the closed unit set.
    pts.push_back(u * t.tau_lo);
    pts.push_back(-u * t.tau_lo);
  }
  return HullGauge(std::move(pts));
}

ContinuityBoundReport check_norm_continuity_bound(const Group& G, const Region& A, const Elem& g,
                                                  const std::vector<Elem>& g_seq,
                                                  double net_spacing, long long m_cap) {
  ContinuityBoundReport rep;
  auto net = A.net(net_spacing);
  for (const Elem& a : net) {
    for (const Elem& b : net) {
      Elem ab = G.mul(a, b);
      for (const Elem& c : net) {
        Elem h = G.mul(ab, c);
        if (A.contains(h)) continue;
        if (A.dist_closure(G.mul(h, h)) <= 1e-12) {
          rep.hypothesis_holds = false;
          rep.hypothesis_witness = h;
          break;
        }
      }
      if (!rep.hypothesis_holds) break;
    }
    if (!rep.hypothesis_holds) break;
  }
  rep.norm_g = escape_norm(G, A, g, m_cap);
  rep.liminf_tail = std::numeric_limits<double>::infinity();
  // The second half of the sequence stands in for its tail.
  for (size_t j = g_seq.size() / 2; j < g_seq.size(); ++j)
    rep.liminf_tail = std::min(rep.liminf_tail, escape_norm(G, A, g_seq[j], m_cap));
  if (g_seq.empty()) rep.liminf_tail = rep.norm_g;
  rep.bound_holds = rep.norm_g <= 2.0 * rep.liminf_tail;
  return rep;
}

}  // namespace egh
