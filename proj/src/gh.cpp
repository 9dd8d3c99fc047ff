#include "egh/gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "egh/errors.hpp"
#include "egh/parallel.hpp"

namespace egh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxEps = 0.2;

// Point/element sets that stay fixed while eps moves inside one window.
struct Window {
  double lo = 0.0, hi = kMaxEps;
  Subset ball_x, ball_y;  // B_{1/eps}
  Subset near_x, near_y;  // B_{1/(3 eps)}
  std::vector<int> disp_g, disp_h;  // elements with displacement < 1/(3 eps)
};

Window sets_at(const Triple& X, const Triple& Y, double eps) {
  Window w;
  auto fill = [eps](const FiniteMetricSpace& m, Subset& big, Subset& small) {
    for (int x = 0; x < m.size(); ++x) {
      double d = m.d(m.basepoint(), x);
      if (d < 1.0 / eps) big.push_back(x);
      if (d < 1.0 / (3.0 * eps)) small.push_back(x);
    }
  };
  fill(X.X(), w.ball_x, w.near_x);
  fill(Y.X(), w.ball_y, w.near_y);
  for (int g = 0; g < X.G().order(); ++g)
    if (X.G().displacement(g) < 1.0 / (3.0 * eps)) w.disp_g.push_back(g);
  for (int h = 0; h < Y.G().order(); ++h)
    if (Y.G().displacement(h) < 1.0 / (3.0 * eps)) w.disp_h.push_back(h);
  return w;
}

// Windows of (0, 1/5] on which every set above is constant.
std::vector<Window> windows(const Triple& X, const Triple& Y) {
  std::vector<double> cuts{0.0, kMaxEps};
  auto add = [&](double v) {
    if (v > 0 && v < kMaxEps) cuts.push_back(v);
  };
  for (const Triple* t : {&X, &Y}) {
    const auto& m = t->X();
    for (int x = 0; x < m.size(); ++x) {
      double d = m.d(m.basepoint(), x);
      if (d > 0) {
        add(1.0 / d);
        add(1.0 / (3.0 * d));
      }
    }
    for (int g = 0; g < t->G().order(); ++g) {
      double s = t->G().displacement(g);
      if (s > 0) add(1.0 / (3.0 * s));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Window> out;
  for (size_t j = 0; j + 1 < cuts.size(); ++j) {
    Window w = sets_at(X, Y, 0.5 * (cuts[j] + cuts[j + 1]));
    w.lo = cuts[j];
    w.hi = cuts[j + 1];
    out.push_back(std::move(w));
  }
  return out;
}

// m(x, y) = min over related pairs of d(x, x') + d(y', y).
std::vector<double> chain_matrix(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                 const std::vector<std::pair<int, int>>& R) {
  const int nx = X.size(), ny = Y.size();
  std::vector<double> m(static_cast<size_t>(nx) * ny, kInf);
  // Two passes: first the Y side per related pair, then the X side.
  std::vector<double> via(static_cast<size_t>(R.size()) * ny);
  for (size_t r = 0; r < R.size(); ++r)
    for (int y = 0; y < ny; ++y) via[r * ny + y] = Y.d(R[r].second, y);
  for (int x = 0; x < nx; ++x)
    for (size_t r = 0; r < R.size(); ++r) {
      double dx = X.d(x, R[r].first);
      for (int y = 0; y < ny; ++y) {
        double v = dx + via[r * ny + y];
        double& slot = m[static_cast<size_t>(x) * ny + y];
        if (v < slot) slot = v;
      }
    }
  return m;
}

struct EqFit {
  double err = 0.0;  // max over constrained elements of the best achievable error
  std::vector<int> phi, psi;
};

// Error of pairing g with h, stopping early once `cutoff` is reached.
double pair_error(const Triple& X, const Triple& Y, const Window& w, const std::vector<double>& m,
                  int g, int h, double cutoff) {
  const int ny = Y.X().size();
  const Perm& pg = X.G().element(g);
  const Perm& ph = Y.G().element(h);
  double worst = 0.0;
  for (int x : w.near_x)
    for (int y : w.near_y) {
      double e = std::abs(m[static_cast<size_t>(x) * ny + y] -
                          m[static_cast<size_t>(pg[x]) * ny + ph[y]]);
      if (e > worst) {
        worst = e;
        if (worst >= cutoff) return worst;
      }
    }
  return worst;
}

// Best phi/psi for a fixed relation. Returns err >= cutoff as soon as the
// cutoff is known to be unreachable.
EqFit fit_maps(const Triple& X, const Triple& Y, const Window& w, const std::vector<double>& m,
               double cutoff) {
  EqFit fit;
  fit.phi.assign(X.G().order(), 0);
  fit.psi.assign(Y.G().order(), 0);
  for (int g : w.disp_g) {
    if (g == 0) continue;  // phi(e) = e costs nothing
    double best = kInf;
    for (int h = 0; h < Y.G().order() && best > 0; ++h) {
      double e = pair_error(X, Y, w, m, g, h, std::min(best, cutoff));
      if (e < best) {
        best = e;
        fit.phi[g] = h;
      }
    }
    fit.err = std::max(fit.err, best);
    if (fit.err >= cutoff) return fit;
  }
  for (int h : w.disp_h) {
    if (h == 0) continue;
    double best = kInf;
    for (int g = 0; g < X.G().order() && best > 0; ++g) {
      double e = pair_error(X, Y, w, m, g, h, std::min(best, cutoff));
      if (e < best) {
        best = e;
        fit.psi[h] = g;
      }
    }
    fit.err = std::max(fit.err, best);
    if (fit.err >= cutoff) return fit;
  }
  return fit;
}

bool trivial_groups(const Triple& X, const Triple& Y) {
  return X.G().order() == 1 && Y.G().order() == 1;
}

// Depth-first search for a relation f ∪ k^T with distortion < 2 eps (and,
// when groups are present, maps phi, psi with error < eps).
struct Search {
  const Triple& X;
  const Triple& Y;
  const Window& w;
  double eps;
  long long budget;
  long long nodes = 0;
  bool exhausted = false;

  std::vector<int> xs, ys;                    // free points on each side
  std::vector<std::vector<int>> cand_x, cand_y;  // ordered partner candidates
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::pair<int, int>> found;
  EqFit fit;

  Search(const Triple& X_, const Triple& Y_, const Window& w_, double eps_, long long budget_)
      : X(X_), Y(Y_), w(w_), eps(eps_), budget(budget_) {
    const auto& mx = X.X();
    const auto& my = Y.X();
    const int p = mx.basepoint(), q = my.basepoint();
    for (int x : w.ball_x)
      if (x != p) xs.push_back(x);
    for (int y : w.ball_y)
      if (y != q) ys.push_back(y);
    auto by_dist = [](const FiniteMetricSpace& m, std::vector<int>& v) {
      std::stable_sort(v.begin(), v.end(), [&](int a, int b) {
        return m.d(m.basepoint(), a) < m.d(m.basepoint(), b);
      });
    };
    by_dist(mx, xs);
    by_dist(my, ys);
    for (int x : xs) {
      std::vector<int> c(w.ball_y.begin(), w.ball_y.end());
      std::stable_sort(c.begin(), c.end(), [&](int a, int b) {
        return std::abs(mx.d(p, x) - my.d(q, a)) < std::abs(mx.d(p, x) - my.d(q, b));
      });
      cand_x.push_back(std::move(c));
    }
    for (int y : ys) {
      std::vector<int> c(w.ball_x.begin(), w.ball_x.end());
      std::stable_sort(c.begin(), c.end(), [&](int a, int b) {
        return std::abs(my.d(q, y) - mx.d(p, a)) < std::abs(my.d(q, y) - mx.d(p, b));
      });
      cand_y.push_back(std::move(c));
    }
    pairs.emplace_back(p, q);
  }

  bool compatible(int x, int y) const {
    for (const auto& [a, b] : pairs)
      if (std::abs(X.X().d(x, a) - Y.X().d(y, b)) >= 2 * eps) return false;
    return true;
  }

  bool leaf() {
    if (trivial_groups(X, Y)) {
      found = pairs;
      fit = EqFit{};
      fit.phi.assign(1, 0);
      fit.psi.assign(1, 0);
      return true;
    }
    auto m = chain_matrix(X.X(), Y.X(), pairs);
    EqFit f = fit_maps(X, Y, w, m, eps);
    if (f.err < eps) {
      found = pairs;
      fit = std::move(f);
      return true;
    }
    return false;
  }

  bool dfs(size_t depth) {
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    if (depth == xs.size() + ys.size()) return leaf();
    bool on_x = depth < xs.size();
    int v = on_x ? xs[depth] : ys[depth - xs.size()];
    const auto& cands = on_x ? cand_x[depth] : cand_y[depth - xs.size()];
    if (!on_x) {
      // A partner already related to y adds no new constraint; try it first.
      for (const auto& [a, b] : pairs)
        if (b == v) {
          pairs.emplace_back(a, v);
          bool ok = dfs(depth + 1);
          pairs.pop_back();
          if (ok || exhausted) return ok;
          // Any other choice only adds constraints for a pointed search.
          if (trivial_groups(X, Y)) return false;
          break;
        }
    }
    for (int c : cands) {
      int x = on_x ? v : c, y = on_x ? c : v;
      if (!compatible(x, y)) continue;
      pairs.emplace_back(x, y);
      bool ok = dfs(depth + 1);
      pairs.pop_back();
      if (ok || exhausted) return ok;
    }
    return false;
  }
};

struct Feasible {
  bool ok = false;
  bool exhausted = false;
  std::vector<std::pair<int, int>> pairs;
  EqFit fit;
};

Feasible feasible(const Triple& X, const Triple& Y, const Window& w, double eps, long long budget) {
  Search s(X, Y, w, eps, budget);
  Feasible r;
  r.ok = s.dfs(0);
  r.exhausted = s.exhausted;
  if (r.ok) {
    r.pairs = s.found;
    r.fit = s.fit;
  }
  return r;
}

bool identical(const Triple& X, const Triple& Y) {
  return X.X().size() == Y.X().size() && X.X().basepoint() == Y.X().basepoint() &&
         X.X().flat() == Y.X().flat() && X.G().elements() == Y.G().elements();
}

// Lower bound from basepoint-distance profiles alone.
double profile_lower_bound(const Triple& X, const Triple& Y, const std::vector<Window>& ws) {
  const auto& mx = X.X();
  const auto& my = Y.X();
  for (const Window& w : ws) {
    double t = 0.0;
    for (int x : w.ball_x) {
      double best = kInf;
      for (int y : w.ball_y)
        best = std::min(best, std::abs(mx.d(mx.basepoint(), x) - my.d(my.basepoint(), y)));
      t = std::max(t, best);
    }
    for (int y : w.ball_y) {
      double best = kInf;
      for (int x : w.ball_x)
        best = std::min(best, std::abs(mx.d(mx.basepoint(), x) - my.d(my.basepoint(), y)));
      t = std::max(t, best);
    }
    t /= 2;
    if (t < w.hi || w.hi == kMaxEps) return std::min(kMaxEps, std::max(w.lo, t));
  }
  return kMaxEps;
}

GhResult solve(const Triple& X, const Triple& Y, bool exact, const GhOptions& opt) {
  GhResult res;
  res.exact = exact;
  if (identical(X, Y)) {
    Correspondence R;
    for (int x = 0; x < X.X().size(); ++x) R.pairs.emplace_back(x, x);
    std::vector<int> id(X.G().order());
    std::iota(id.begin(), id.end(), 0);
    res.value = res.lower = res.upper = 0.0;
    res.exact = true;
    res.witness = make_approximation(X, Y, opt.tol, R, id, id);
    return res;
  }
  const long long budget = exact ? std::numeric_limits<long long>::max() : opt.node_budget;
  auto ws = windows(X, Y);
  res.lower = exact ? 0.0 : profile_lower_bound(X, Y, ws);
  for (const Window& w : ws) {
    bool last = w.hi == kMaxEps;
    if (!feasible(X, Y, w, w.hi, budget).ok) continue;
    Feasible best;
    double best_eps = kInf;
    double a = w.lo, b = w.hi;
    if (w.lo > 0) {
      auto f = feasible(X, Y, w, w.lo, budget);
      if (f.ok) {
        b = w.lo;
        best = f;
        best_eps = w.lo;
      }
    }
    if (best_eps == kInf) {
      while (b - a > opt.tol / 4) {
        double mid = 0.5 * (a + b);
        auto f = feasible(X, Y, w, mid, budget);
        if (f.ok) {
          b = mid;
          best = std::move(f);
          best_eps = mid;
        } else {
          a = mid;
        }
      }
      if (best_eps == kInf) {
        if (last) {
          best = feasible(X, Y, w, w.hi, budget);
          best_eps = w.hi;
        } else {
          // Threshold sits just under hi; find a feasible point inside.
          for (int k = 1; k < 60 && best_eps == kInf; ++k) {
            double e = w.hi - (w.hi - a) * std::ldexp(1.0, -k);
            if (e >= w.hi) break;
            auto f = feasible(X, Y, w, e, budget);
            if (f.ok) {
              best = std::move(f);
              best_eps = e;
            }
          }
        }
      }
    }
    res.value = res.upper = b;
    if (exact) res.lower = a;
    if (best_eps != kInf) {
      // Keep the witness strictly inside the window so its sets match.
      double we = best_eps;
      if (we == w.lo && w.lo > 0) we = w.lo + std::min(opt.tol / 4, 0.5 * (w.hi - w.lo));
      Correspondence R;
      R.pairs = best.pairs;
      res.witness = make_approximation(X, Y, we, R, best.fit.phi, best.fit.psi);
    }
    return res;
  }
  res.value = res.upper = kMaxEps;
  if (exact) res.lower = kMaxEps;
  return res;
}

bool tiny(const Triple& X, const Triple& Y, const GhOptions& opt) {
  double nx = X.X().size(), ny = Y.X().size();
  return std::pow(ny, nx) * std::pow(nx, ny) <= opt.tiny_search_space;
}

// Exact threshold of one window: min over the family of max(dis/2, fit error).
double window_threshold(const Triple& X, const Triple& Y, const Window& w, bool parallel) {
  const auto& mx = X.X();
  const auto& my = Y.X();
  const int p = mx.basepoint(), q = my.basepoint();
  std::vector<int> xs, ys;
  for (int x : w.ball_x)
    if (x != p) xs.push_back(x);
  for (int y : w.ball_y)
    if (y != q) ys.push_back(y);
  const long long by = static_cast<long long>(w.ball_y.size());
  const long long bx = static_cast<long long>(w.ball_x.size());
  long long nf = 1, nk = 1;
  for (size_t j = 0; j < xs.size(); ++j) nf *= by;
  for (size_t j = 0; j < ys.size(); ++j) nk *= bx;
  if (static_cast<double>(nf) * static_cast<double>(nk) > 5e8)
    throw ResourceError("oracle search space too large");
  const bool plain = trivial_groups(X, Y);

  auto eval = [&](long long f_code, double best_so_far) {
    double local = best_so_far;
    std::vector<std::pair<int, int>> R{{p, q}};
    long long c = f_code;
    for (int x : xs) {
      R.emplace_back(x, w.ball_y[c % by]);
      c /= by;
    }
    const size_t base = R.size();
    for (long long k_code = 0; k_code < nk; ++k_code) {
      R.resize(base);
      long long kc = k_code;
      for (int y : ys) {
        R.emplace_back(w.ball_x[kc % bx], y);
        kc /= bx;
      }
      double dis = distortion(mx, my, R);
      double q_val = dis / 2;
      if (q_val >= local) continue;
      if (!plain) {
        auto m = chain_matrix(mx, my, R);
        q_val = std::max(q_val, fit_maps(X, Y, w, m, local).err);
      }
      local = std::min(local, q_val);
    }
    return local;
  };

  double best = kInf;
  if (parallel) {
#pragma omp parallel for schedule(dynamic) reduction(min : best) num_threads(thread_count())
    for (long long f = 0; f < nf; ++f) best = std::min(best, eval(f, best));
  } else {
    for (long long f = 0; f < nf; ++f) best = eval(f, best);
  }
  return best;
}

double oracle(const Triple& X, const Triple& Y, bool parallel) {
  if (identical(X, Y)) return 0.0;
  for (const Window& w : windows(X, Y)) {
    double t = window_threshold(X, Y, w, parallel);
    bool last = w.hi == kMaxEps;
    if (t < w.hi || (last && t < w.hi)) return std::max(w.lo, t);
  }
  return kMaxEps;
}

}  // namespace

Triple make_triple(FiniteMetricSpace m, const std::vector<Perm>& gens) {
  auto sp = std::make_shared<const FiniteMetricSpace>(std::move(m));
  auto g = std::make_shared<const IsometryGroup>(closure(sp, gens));
  return Triple{sp, g};
}

Triple trivial_triple(FiniteMetricSpace m) { return make_triple(std::move(m), {}); }

Triple full_triple(FiniteMetricSpace m) {
  auto sp = std::make_shared<const FiniteMetricSpace>(std::move(m));
  auto g = std::make_shared<const IsometryGroup>(full_isometry_group(sp));
  return Triple{sp, g};
}

double distortion(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                  const std::vector<std::pair<int, int>>& pairs) {
  double worst = 0.0;
  for (size_t a = 0; a < pairs.size(); ++a)
    for (size_t b = a + 1; b < pairs.size(); ++b)
      worst = std::max(worst, std::abs(X.d(pairs[a].first, pairs[b].first) -
                                       Y.d(pairs[a].second, pairs[b].second)));
  return worst;
}

EpsApproximation make_approximation(const Triple& X, const Triple& Y, double eps,
                                    Correspondence R, std::vector<int> phi,
                                    std::vector<int> psi) {
  EpsApproximation a;
  a.eps = eps;
  a.X = X;
  a.Y = Y;
  R.distortion = distortion(X.X(), Y.X(), R.pairs);
  a.offset = std::max(R.distortion / 2, eps / 2);
  a.cross = chain_matrix(X.X(), Y.X(), R.pairs);
  for (double& v : a.cross) v += a.offset;
  a.relation = std::move(R);
  a.phi = std::move(phi);
  a.psi = std::move(psi);
  if (static_cast<int>(a.phi.size()) != X.G().order() ||
      static_cast<int>(a.psi.size()) != Y.G().order())
    throw StructuralError("phi/psi sizes do not match the groups");
  return a;
}

FiniteMetricSpace EpsApproximation::union_space() const {
  const int nx = X.X().size(), ny = Y.X().size(), n = nx + ny;
  std::vector<double> flat(static_cast<size_t>(n) * n);
  std::vector<std::string> labels;
  for (int i = 0; i < nx; ++i) labels.push_back("X:" + X.X().label(i));
  for (int j = 0; j < ny; ++j) labels.push_back("Y:" + Y.X().label(j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v;
      if (i < nx && j < nx) v = X.X().d(i, j);
      else if (i >= nx && j >= nx) v = Y.X().d(i - nx, j - nx);
      else if (i < nx) v = dbar(i, j - nx);
      else v = dbar(j, i - nx);
      flat[static_cast<size_t>(i) * n + j] = v;
    }
  return FiniteMetricSpace(n, std::move(flat), X.X().basepoint(), std::move(labels));
}

ApproximationAudit audit(const EpsApproximation& a) {
  ApproximationAudit r;
  const double eps = a.eps;
  r.metric = validate_metric(a.union_space()).empty();
  Window w = sets_at(a.X, a.Y, eps);
  r.cover_x = std::all_of(w.ball_x.begin(), w.ball_x.end(), [&](int x) {
    return std::any_of(w.ball_y.begin(), w.ball_y.end(), [&](int y) { return a.dbar(x, y) < eps; });
  });
  r.cover_y = std::all_of(w.ball_y.begin(), w.ball_y.end(), [&](int y) {
    return std::any_of(w.ball_x.begin(), w.ball_x.end(), [&](int x) { return a.dbar(x, y) < eps; });
  });
  r.basepoints = a.dbar(a.X.X().basepoint(), a.Y.X().basepoint()) < eps;
  double worst = 0.0;
  const auto& G = a.X.G();
  const auto& H = a.Y.G();
  for (int g : w.disp_g)
    for (int x : w.near_x)
      for (int y : w.near_y) {
        const Perm& pg = G.element(g);
        const Perm& ph = H.element(a.phi[g]);
        worst = std::max(worst, std::abs(a.dbar(x, y) - a.dbar(pg[x], ph[y])));
      }
  for (int h : w.disp_h)
    for (int x : w.near_x)
      for (int y : w.near_y) {
        const Perm& pg = G.element(a.psi[h]);
        const Perm& ph = H.element(h);
        worst = std::max(worst, std::abs(a.dbar(x, y) - a.dbar(pg[x], ph[y])));
      }
  r.worst_equivariant = worst;
  r.equivariant = worst < eps;
  return r;
}

GhResult pointed_gh(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const GhOptions& opt) {
  Triple tx = trivial_triple(X), ty = trivial_triple(Y);
  bool exact = (X.size() <= opt.exact_points_pointed && Y.size() <= opt.exact_points_pointed) ||
               tiny(tx, ty, opt);
  return solve(tx, ty, exact, opt);
}

GhResult equivariant_gh(const Triple& X, const Triple& Y, const GhOptions& opt) {
  bool exact = (X.X().size() <= opt.exact_points_equivariant &&
                Y.X().size() <= opt.exact_points_equivariant &&
                X.G().order() <= opt.exact_group_order && Y.G().order() <= opt.exact_group_order) ||
               tiny(X, Y, opt);
  return solve(X, Y, exact, opt);
}

double pointed_gh_oracle(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, bool parallel) {
  return oracle(trivial_triple(X), trivial_triple(Y), parallel);
}

double equivariant_gh_oracle(const Triple& X, const Triple& Y, bool parallel) {
  return oracle(X, Y, parallel);
}

double check_almost_morphism(const EpsApproximation& a, int g1, int g2, int y) {
  const auto& G = a.X.G();
  const auto& H = a.Y.G();
  const auto& my = a.Y.X();
  const double lim = 1.0 / (6.0 * a.eps);
  if (!(G.displacement(g1) < lim) || !(G.displacement(g2) < lim))
    throw DomainError("almost-morphism check needs d(gp,p) < 1/(6 eps)");
  if (!(my.d(my.basepoint(), y) < 1.0 / (12.0 * a.eps)))
    throw DomainError("almost-morphism check needs y in B_{1/(12 eps)}(q)");
  int lhs = a.phi[G.mul(g1, g2)];
  int rhs = H.mul(a.phi[g1], a.phi[g2]);
  double d = my.d(H.element(lhs)[y], H.element(rhs)[y]);
  return 7.0 * a.eps - d;
}

double min_almost_morphism_slack(const EpsApproximation& a) {
  const auto& G = a.X.G();
  const auto& my = a.Y.X();
  std::vector<int> gs, ys;
  for (int g = 0; g < G.order(); ++g)
    if (G.displacement(g) < 1.0 / (6.0 * a.eps)) gs.push_back(g);
  for (int y = 0; y < my.size(); ++y)
    if (my.d(my.basepoint(), y) < 1.0 / (12.0 * a.eps)) ys.push_back(y);
  double best = kInf;
  for (int g1 : gs)
    for (int g2 : gs)
      for (int y : ys) best = std::min(best, check_almost_morphism(a, g1, g2, y));
  return best;
}

std::vector<double> displacement_spectrum(const Triple& t) {
  std::vector<double> s;
  for (int g = 0; g < t.G().order(); ++g) s.push_back(t.G().displacement(g));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

double regular_radius(const Triple& t, std::vector<double> candidates) {
  if (candidates.empty()) throw DomainError("regular_radius needs candidates");
  std::sort(candidates.begin(), candidates.end());
  auto spec = displacement_spectrum(t);
  double best_r = candidates.front(), best_gap = -1.0;
  // r must stay positive, so 0 bounds the first interval of continuity once
  // there is any jump at all.
  const bool jumps = spec.back() > 0;
  for (double r : candidates) {
    double gap = jumps ? r : kInf;
    for (double s : spec)
      if (s > 0) gap = std::min(gap, std::abs(r - s));
    if (gap > best_gap) {
      best_gap = gap;
      best_r = r;
    }
  }
  return best_r;
}

}  // namespace egh
