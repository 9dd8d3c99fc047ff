#include "egh/good_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "egh/errors.hpp"
#include "egh/escape.hpp"

namespace egh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using KeySet = std::unordered_set<ElemKey, ElemKeyHash>;

KeySet keys_of(const Group& G, const std::vector<Elem>& s) {
  KeySet out;
  for (const Elem& g : s) out.insert(G.key(g));
  return out;
}

bool key_less(const ElemKey& a, const ElemKey& b) {
  if (a.n != b.n) return a.n < b.n;
  for (int i = 0; i < a.n; ++i)
    if (a.k[i] != b.k[i]) return a.k[i] < b.k[i];
  return false;
}

std::vector<ElemKey> sorted_keys(const Group& G, const std::vector<Elem>& s) {
  std::vector<ElemKey> k;
  for (const Elem& g : s) k.push_back(G.key(g));
  std::sort(k.begin(), k.end(), key_less);
  return k;
}

struct KeyVecLess {
  bool operator()(const std::vector<ElemKey>& a, const std::vector<ElemKey>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), key_less);
  }
};

// A, A^2, ..., A^n united.
std::vector<Elem> powers_union(const Group& G, const std::vector<Elem>& a, int n,
                               size_t cap = 2'000'000) {
  if (n < 1) throw DomainError("power count must be at least 1");
  std::vector<Elem> all;
  KeySet seen;
  for (const Elem& g : a)
    if (seen.insert(G.key(g)).second) all.push_back(g);
  std::vector<Elem> cur = all;
  for (int k = 2; k <= n; ++k) {
    std::vector<Elem> next;
    KeySet next_seen;
    for (const Elem& x : cur)
      for (const Elem& y : a) {
        Elem z = G.mul(x, y);
        ElemKey kz = G.key(z);
        if (!next_seen.insert(kz).second) continue;
        next.push_back(z);
        if (seen.insert(kz).second) all.push_back(z);
        if (all.size() > cap) throw ResourceError("A^n exceeds the element cap");
      }
    cur = std::move(next);
  }
  return all;
}

double dist_to_identity(const Group& G, const Elem& g) { return G.dist(g, G.identity()); }

bool subset_of(const Group& G, const std::vector<Elem>& s, const KeySet& in) {
  for (const Elem& g : s)
    if (!in.count(G.key(g))) return false;
  return true;
}

}  // namespace

void require_symmetric(const Group& G, const std::vector<Elem>& s) {
  KeySet k = keys_of(G, s);
  for (const Elem& g : s)
    if (!k.count(G.key(G.inv(g))))
      throw StructuralError("neighbourhood is not symmetric: the inverse of " + G.format(g) +
                            " is missing");
}

std::vector<Elem> symmetric_closure(const Group& G, const std::vector<Elem>& s) {
  std::vector<Elem> out;
  KeySet seen;
  for (const Elem& g : s)
    for (const Elem& h : {g, G.inv(g)})
      if (seen.insert(G.key(h)).second) out.push_back(h);
  return out;
}

bool ConditionReport::all_pass() const {
  return std::all_of(cond.begin(), cond.end(), [](const ConditionResult& c) { return c.pass; });
}

std::vector<int> ConditionReport::failing() const {
  std::vector<int> out;
  for (int i = 0; i < 5; ++i)
    if (!cond[i].pass) out.push_back(i + 1);
  return out;
}

ConditionReport check_conditions(const ApproximationMap& a, double delta, const CheckOptions& opt) {
  if (!(delta > 0)) throw DomainError("delta must be positive");
  const Group& S = *a.source;
  const Group& T = *a.target;
  require_symmetric(S, a.A_src);

  ConditionReport rep;
  rep.delta = delta;
  rep.n_max = opt.n_max;
  std::vector<Elem> img;
  for (const Elem& g : a.A_src) img.push_back(a.phi(g));
  const KeySet in_A = keys_of(S, a.A_src);
  const std::vector<Elem> An = powers_union(S, a.A_src, opt.n_max);

  // I: density of phi(A_i) in A.
  {
    ConditionResult& r = rep.cond[0];
    double worst = -kInf;
    for (const Elem& c : a.A_tgt.net(delta / 2)) {
      if (a.A_tgt.depth(c) < delta) continue;
      double best = kInf;
      for (const Elem& y : img) best = std::min(best, T.dist(c, y));
      if (best > worst) {
        worst = best;
        if (!(best < delta)) r.witness = {c};
      }
    }
    r.slack = worst == -kInf ? kInf : delta - worst;
    r.pass = r.witness.empty();
    if (!r.pass) r.note = "net point of A far from phi(A_i)";
  }
  // II: phi(A_i) near cl(A).
  {
    ConditionResult& r = rep.cond[1];
    double worst = 0.0;
    for (size_t j = 0; j < a.A_src.size(); ++j) {
      double dc = a.A_tgt.dist_closure(img[j]);
      if (dc > worst) {
        worst = dc;
        if (dc > delta) r.witness = {a.A_src[j]};
      }
    }
    r.slack = delta - worst;
    r.pass = r.witness.empty();
    if (!r.pass) r.note = "phi(g) far from cl(A)";
  }
  // III: multiplicativity on A_i^n.
  {
    ConditionResult& r = rep.cond[2];
    auto err = [&](const Elem& g, const Elem& h) {
      return T.dist(a.phi(S.mul(g, h)), T.mul(a.phi(g), a.phi(h)));
    };
    double worst = 0.0;
    auto visit = [&](const Elem& g, const Elem& h) {
      double e = err(g, h);
      if (e > worst) {
        worst = e;
        if (e > delta) r.witness = {g, h};
      }
    };
    const size_t n = An.size();
    if (n * n <= opt.pair_budget) {
      for (const Elem& g : An)
        for (const Elem& h : An) visit(g, h);
    } else {
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<size_t> pick(0, n - 1);
      for (size_t s = 0; s < opt.pair_budget; ++s) visit(An[pick(rng)], An[pick(rng)]);
      r.note = "sampled pairs";
    }
    r.slack = delta - worst;
    r.pass = r.witness.empty();
    if (!r.pass) r.note = "phi(gh) far from phi(g)phi(h)";
  }
  // IV: deep images come from A_i.
  {
    ConditionResult& r = rep.cond[3];
    double worst = -kInf;
    for (const Elem& g : An) {
      if (in_A.count(S.key(g))) continue;
      double dep = a.A_tgt.depth(a.phi(g));
      if (dep > worst) {
        worst = dep;
        if (!(dep < delta)) r.witness = {g};
      }
    }
    r.slack = worst == -kInf ? kInf : delta - worst;
    r.pass = r.witness.empty();
    if (!r.pass) r.note = "g outside A_i with phi(g) deep in A";
  }
  // V: small source neighbourhoods of the preimage of K map into U.
  {
    ConditionResult& r = rep.cond[4];
    const double eps = 2.0 * delta;
    double worst = -kInf;
    for (const Elem& c : a.A_tgt.net(delta)) {
      if (a.A_tgt.depth(c) < 3.0 * delta) continue;
      std::vector<size_t> near;
      for (size_t j = 0; j < a.A_src.size(); ++j)
        if (T.dist(img[j], c) - delta < eps / 3.0) near.push_back(j);
      for (size_t q = 0; q < a.A_src.size(); ++q) {
        bool in_U = false;
        for (size_t j : near)
          if (a.src_dist(a.A_src[q], a.A_src[j]) < eps / 3.0) {
            in_U = true;
            break;
          }
        if (!in_U) continue;
        double d = T.dist(img[q], c);
        if (d > worst) {
          worst = d;
          if (!(d < 3.0 * delta)) r.witness = {a.A_src[q], c};
        }
      }
    }
    r.slack = worst == -kInf ? kInf : 3.0 * delta - worst;
    r.pass = r.witness.empty();
    if (!r.pass) r.note = "source neighbour of phi^-1(K) maps outside U";
  }
  return rep;
}

std::vector<ConditionReport> check_conditions(const std::vector<ApproximationMap>& seq, double delta,
                                              const CheckOptions& opt) {
  std::vector<ConditionReport> out;
  for (const auto& a : seq) out.push_back(check_conditions(a, delta, opt));
  return out;
}

ApproximationMap symmetrize(const ApproximationMap& a) {
  ApproximationMap out = a;
  GroupPtr S = a.source, T = a.target;
  auto phi = a.phi;
  out.phi = [S, T, phi](const Elem& g) {
    Elem gi = S->inv(g);
    if (!key_less(S->key(gi), S->key(g))) return phi(g);
    return T->inv(phi(gi));
  };
  out.label = a.label + "/sym";
  return out;
}

ApproximationMap localize(const ApproximationMap& a, const Region& B_tgt, double check_spacing) {
  for (const Elem& b : B_tgt.net(check_spacing))
    if (a.A_tgt.dist_closure(b) > 1e-9)
      throw DomainError("localizing region is not inside cl(A): " + a.target->format(b));
  const Group& S = *a.source;
  std::vector<Elem> pre;
  for (const Elem& g : a.A_src)
    if (B_tgt.contains(a.phi(g))) pre.push_back(g);
  KeySet k = keys_of(S, pre);
  ApproximationMap out = a;
  out.A_src.clear();
  for (const Elem& g : pre)
    if (k.count(S.key(S.inv(g)))) out.A_src.push_back(g);
  out.A_tgt = B_tgt;
  out.label = a.label + "/loc";
  return out;
}

SmallVerdict detect_small(const Triple& t, const Subgroup& H, const std::vector<double>& radii,
                          double R, double delta) {
  if (!is_subgroup(t.G(), H)) throw DomainError("detect_small needs a subgroup");
  SmallVerdict v;
  v.subgroup = H;
  v.radii = radii;
  for (double r : radii) v.curve.push_back(displacement_sup(t.G(), H, r));
  v.radius = R;
  v.delta = delta;
  v.small = displacement_sup(t.G(), H, R) <= delta;
  return v;
}

std::vector<Elem> generated_subgroup_elems(const Group& G, const std::vector<Elem>& gens) {
  std::vector<Elem> out{G.identity()};
  KeySet seen{G.key(out[0])};
  for (size_t i = 0; i < out.size(); ++i)
    for (const Elem& s : gens) {
      Elem z = G.mul(out[i], s);
      if (seen.insert(G.key(z)).second) out.push_back(z);
      if (out.size() > 2'000'000) throw ResourceError("generated subgroup too large");
    }
  return out;
}

std::vector<std::vector<Elem>> enumerate_subgroups(const Group& G, size_t cap) {
  auto all = G.elements();
  if (!all) throw DomainError("subgroup enumeration needs a finite group");
  std::vector<std::vector<Elem>> out;
  std::set<std::vector<ElemKey>, KeyVecLess> seen;
  auto add = [&](std::vector<Elem> s) {
    if (seen.insert(sorted_keys(G, s)).second) {
      out.push_back(std::move(s));
      if (out.size() > cap) throw ResourceError("subgroup enumeration cap reached");
    }
  };
  add({G.identity()});
  for (size_t i = 0; i < out.size(); ++i) {
    KeySet in = keys_of(G, out[i]);
    for (const Elem& g : *all) {
      if (in.count(G.key(g))) continue;
      std::vector<Elem> gens = out[i];
      gens.push_back(g);
      add(generated_subgroup_elems(G, gens));
    }
  }
  return out;
}

std::vector<std::vector<Elem>> cyclic_subgroups(const Group& G) {
  auto all = G.elements();
  if (!all) throw DomainError("cyclic subgroups need a finite group");
  std::vector<std::vector<Elem>> out;
  std::set<std::vector<ElemKey>, KeyVecLess> seen;
  for (const Elem& g : *all) {
    auto s = generated_subgroup_elems(G, {g});
    if (seen.insert(sorted_keys(G, s)).second) out.push_back(std::move(s));
  }
  return out;
}

MaximalSmall maximal_small(const ApproximationMap& loc, double delta, size_t enumerate_limit) {
  const Group& S = *loc.source;
  const Group& T = *loc.target;
  auto all = S.elements();
  if (!all) throw DomainError("maximal_small needs a finite source group");

  Region A = finite_region(loc.source, loc.A_src, "A_i");
  ZeroSet z = zero_set(S, A);
  MaximalSmall out;
  out.H = z.members;
  out.is_subgroup = z.closed;
  out.anomaly = z.anomaly;

  const KeySet in_A = keys_of(S, loc.A_src);
  auto small_slack = [&](const std::vector<Elem>& K) {
    if (!subset_of(S, K, in_A)) return -kInf;
    double worst = 0.0;
    for (const Elem& k : K) worst = std::max(worst, dist_to_identity(T, loc.phi(k)));
    return delta - worst;
  };
  out.small_slack = small_slack(out.H);
  out.small = out.small_slack >= 0.0;

  const bool every = all->size() <= enumerate_limit;
  out.method = every ? "all-subgroups" : "cyclic";
  auto candidates = every ? enumerate_subgroups(S) : cyclic_subgroups(S);
  const KeySet in_H = keys_of(S, out.H);
  out.maximal = true;
  for (const auto& K : candidates) {
    if (small_slack(K) < 0.0 || subset_of(S, K, in_H)) continue;
    out.maximal = false;
    out.escaping = K;
    break;
  }
  return out;
}

std::vector<QuotientStep> quotient_sequence(const std::vector<Triple>& seq,
                                            const std::vector<Subgroup>& H) {
  if (seq.size() != H.size()) throw StructuralError("one subgroup per triple is needed");
  std::vector<QuotientStep> out;
  for (size_t i = 0; i < seq.size(); ++i) {
    QuotientStep s{{}, quotient_group(seq[i].G(), H[i])};
    s.triple.group = std::make_shared<IsometryGroup>(s.qg.group);
    s.triple.space = s.triple.group->space_ptr();
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

// First failing schedule requirement at scale m, or "".
std::string blowup_bullet(const ApproximationMap& a, int m) {
  const Group& T = *a.target;
  const double tol = 1.0 / (static_cast<double>(m) * m);
  std::ostringstream os;
  const Elem e = T.identity();
  if (a.A_tgt.depth(e) < 1.0 / m) {
    os << "neighbourhood: B_{1/m}(e) not inside A (depth " << a.A_tgt.depth(e) << ")";
    return os.str();
  }
  double id = T.dist(a.phi(a.source->identity()), e);
  if (id > tol) {
    os << "identity: d(phi(e), e) = " << id << " > " << tol;
    return os.str();
  }
  // Density: every 1/m^2-ball about a grid point of B_{2/m}(e) meets phi(A_i).
  {
    const int k = T.algebra_dim();
    const double R = 2.0 / m;
    const double h = tol;
    const int steps = static_cast<int>(std::ceil(R / h));
    std::vector<Elem> img;
    for (const Elem& g : a.A_src) img.push_back(a.phi(g));
    std::vector<int> idx(k, -steps);
    for (;;) {
      Eigen::VectorXd w(k);
      for (int j = 0; j < k; ++j) w(j) = idx[j] * h;
      if (w.norm() < R) {
        Elem c = T.exp(w);
        double best = kInf;
        for (const Elem& y : img) best = std::min(best, T.dist(c, y));
        if (best > tol) {
          os << "density: point " << T.format(c) << " is " << best << " from phi(A_i)";
          return os.str();
        }
      }
      int j = 0;
      while (j < k && ++idx[j] > steps) idx[j++] = -steps;
      if (j == k) break;
    }
  }
  ContinuityReport cr = check_eps_continuity(a, 2, tol);
  if (!cr.pass) {
    os << "continuity: no admissible ball at " << a.source->format(*cr.witness);
    return os.str();
  }
  double worst = 0.0;
  for (const Elem& g : a.A_src)
    for (const Elem& h : a.A_src)
      worst = std::max(worst, T.dist(a.phi(a.source->mul(g, h)), T.mul(a.phi(g), a.phi(h))));
  if (worst > tol) {
    os << "multiplicativity: defect " << worst << " > " << tol;
    return os.str();
  }
  return "";
}

}  // namespace

BlowupResult blowup(const std::vector<ApproximationMap>& seq, int k, const std::vector<int>& schedule) {
  if (schedule.size() != seq.size()) throw StructuralError("one scale per index is needed");
  BlowupResult out;
  out.schedule = schedule;
  auto Rk = std::make_shared<Lattice>(k, true);
  Region unit = euclidean_ball_region(Rk, 1.0, true);
  for (size_t i = 0; i < seq.size(); ++i) {
    const ApproximationMap& a = seq[i];
    const int m = schedule[i];
    if (m < 1) throw DomainError("blow-up scale must be at least 1");
    if (a.target->algebra_dim() != k)
      throw DomainError("target has no exponential chart of dimension " + std::to_string(k));
    std::string bullet = blowup_bullet(a, m);
    if (!bullet.empty()) {
      out.feasible = false;
      bullet = "index " + std::to_string(i) + " (m=" + std::to_string(m) + "): " + bullet;
    }
    out.diagnostics.push_back(bullet);

    ApproximationMap b;
    b.label = a.label + "/blowup";
    b.source = a.source;
    b.target = Rk;
    GroupPtr T = a.target;
    auto phi = a.phi;
    b.phi = [T, phi, m, k](const Elem& g) {
      Elem out = Elem::of_size(k);
      if (auto l = T->log(phi(g)))
        for (int j = 0; j < k; ++j) out[j] = m * (*l)(j);
      return out;
    };
    std::vector<Elem> B;
    for (const Elem& g : a.A_src)
      if (dist_to_identity(*T, phi(g)) < 1.0 / m) B.push_back(g);
    KeySet kb = keys_of(*a.source, B);
    for (const Elem& g : B)
      if (kb.count(a.source->key(a.source->inv(g)))) b.A_src.push_back(g);
    b.A_tgt = unit;
    b.source_scale = a.source_scale * m;
    out.maps.push_back(std::move(b));
  }
  return out;
}

BlowupBoundsReport verify_blowup_bounds(const ApproximationMap& blown, double delta,
                                        const std::vector<Eigen::VectorXd>& directions,
                                        int magnitudes) {
  const Group& S = *blown.source;
  if (S.algebra_dim() == 0) throw DomainError("source group has no exponential chart");
  const Group& T = *blown.target;
  Region Bi = finite_region(blown.source, blown.A_src, "B_i");
  BlowupBoundsReport rep;
  rep.worst_inner = kInf;
  rep.worst_outer = kInf;
  for (const auto& d : directions) {
    Eigen::VectorXd u = d / d.norm();
    double nu = tau_and_algebra_norm(S, Bi, u).algebra_norm();
    for (int j = 0; j <= magnitudes; ++j) {
      double target_norm = (1.0 / delta) * j / magnitudes;
      // A direction that never leaves B_i has norm 0 at every length.
      double len = nu > 0 ? target_norm / nu : target_norm;
      double vn = nu > 0 ? target_norm : 0.0;
      double psi = dist_to_identity(T, blown.phi(S.exp(len * u)));
      if (vn <= delta) {
        rep.worst_inner = std::min(rep.worst_inner, 1.5 * delta - psi);
        ++rep.inner_samples;
      }
      if (vn >= delta && vn <= 1.0 / delta) {
        rep.worst_outer = std::min(rep.worst_outer, psi - delta / 4.0);
        ++rep.outer_samples;
      }
    }
  }
  rep.ok = rep.worst_inner >= 0.0 && rep.worst_outer > 0.0;
  return rep;
}

ContinuityReport check_eps_continuity(const ApproximationMap& a, int n, double eps) {
  const Group& T = *a.target;
  std::vector<Elem> P = powers_union(*a.source, a.A_src, n);
  std::vector<Elem> img;
  for (const Elem& g : P) img.push_back(a.phi(g));
  ContinuityReport rep;
  rep.min_modulus = kInf;
  rep.min_margin = kInf;
  for (size_t p = 0; p < P.size(); ++p) {
    double modulus = kInf, nn = kInf;
    for (size_t q = 0; q < P.size(); ++q) {
      if (q == p) continue;
      double d = a.src_dist(P[p], P[q]);
      nn = std::min(nn, d);
      if (T.dist(img[p], img[q]) >= eps) modulus = std::min(modulus, d);
    }
    rep.min_modulus = std::min(rep.min_modulus, modulus);
    if (modulus == kInf) continue;
    double margin = modulus - nn;
    if (margin < rep.min_margin) rep.min_margin = margin;
    if (!(margin > 0) && rep.pass) {
      rep.pass = false;
      rep.witness = P[p];
    }
  }
  return rep;
}

ApproximationMap approximation_from_displacement(const Triple& source, const Triple& target,
                                                 std::vector<int> phi, double r0) {
  if (static_cast<int>(phi.size()) != source.G().order())
    throw StructuralError("phi needs one image per source element");
  auto S = std::make_shared<PermGroupView>(source.group);
  auto T = std::make_shared<PermGroupView>(target.group);
  ApproximationMap a;
  a.label = "displacement<" + std::to_string(r0);
  a.source = S;
  a.target = T;
  for (int g = 0; g < source.G().order(); ++g)
    if (source.G().displacement(g) < r0) a.A_src.push_back(PermGroupView::of(g));
  std::vector<Elem> tgt;
  for (int h = 0; h < target.G().order(); ++h)
    if (target.G().displacement(h) < r0) tgt.push_back(PermGroupView::of(h));
  a.A_tgt = finite_region(T, std::move(tgt), a.label);
  auto table = std::make_shared<std::vector<int>>(std::move(phi));
  a.phi = [table](const Elem& g) { return PermGroupView::of((*table)[PermGroupView::index(g)]); };
  return a;
}

std::vector<ApproximationMap> induce_approximation(const std::vector<EpsApproximation>& seq, double r0) {
  std::vector<ApproximationMap> out;
  for (const auto& a : seq) out.push_back(approximation_from_displacement(a.X, a.Y, a.phi, r0));
  return out;
}

}  // namespace egh
