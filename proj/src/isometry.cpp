#include "egh/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "egh/errors.hpp"

namespace egh {

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (size_t x = 0; x < b.size(); ++x) out[x] = a[b[x]];
  return out;
}

Perm inverse(const Perm& a) {
  Perm out(a.size());
  for (size_t x = 0; x < a.size(); ++x) out[a[x]] = static_cast<int>(x);
  return out;
}

bool is_isometry(const FiniteMetricSpace& m, const Perm& g, double tol) {
  if (static_cast<int>(g.size()) != m.size()) return false;
  std::vector<char> seen(g.size(), 0);
  for (int v : g) {
    if (v < 0 || v >= m.size() || seen[v]) return false;
    seen[v] = 1;
  }
  for (int x = 0; x < m.size(); ++x)
    for (int y = x + 1; y < m.size(); ++y)
      if (std::abs(m.d(g[x], g[y]) - m.d(x, y)) > tol) return false;
  return true;
}

size_t PermHash::operator()(const Perm& p) const noexcept {
  size_t h = 1469598103934665603ull;
  for (int v : p) h = (h ^ static_cast<size_t>(v)) * 1099511628211ull;
  return h;
}

IsometryGroup::IsometryGroup(std::shared_ptr<const FiniteMetricSpace> space,
                             std::vector<Perm> elements, std::vector<Perm> generators)
    : space_(std::move(space)), elements_(std::move(elements)), generators_(std::move(generators)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (elements_.empty() || elements_[0] != identity_perm(space_->size()))
    throw StructuralError("isometry group must contain the identity");
  index_.reserve(elements_.size() * 2);
  for (int i = 0; i < order(); ++i) index_.emplace(elements_[i], i);
  inverse_.resize(elements_.size());
  for (int i = 0; i < order(); ++i) {
    int j = index_of(inverse(elements_[i]));
    if (j < 0) throw StructuralError("element set is not closed under inverses");
    inverse_[i] = j;
  }
  if (order() <= 2048) {
    const int n = order();
    table_.assign(static_cast<size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int c = index_of(compose(elements_[a], elements_[b]));
        if (c < 0) throw StructuralError("element set is not closed under composition");
        table_[static_cast<size_t>(a) * n + b] = c;
      }
  }
}

int IsometryGroup::index_of(const Perm& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

int IsometryGroup::mul(int a, int b) const {
  if (!table_.empty()) return table_[static_cast<size_t>(a) * order() + b];
  int c = index_of(compose(elements_[a], elements_[b]));
  if (c < 0) throw StructuralError("element set is not closed under composition");
  return c;
}

int IsometryGroup::power(int a, long long k) const {
  if (k < 0) return power(inv(a), -k);
  int result = 0, base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

int IsometryGroup::element_order(int a) const {
  int k = 1, cur = a;
  while (cur != 0) {
    cur = mul(cur, a);
    ++k;
  }
  return k;
}

double IsometryGroup::displacement(int g) const {
  int p = space_->basepoint();
  return space_->d(elements_[g][p], p);
}

namespace {

// Backtracking over images of 0..n-1; candidates must share the sorted distance
// profile and respect distances to every point already placed.
void extend(const FiniteMetricSpace& m, const std::vector<std::vector<double>>& profile,
            Perm& img, std::vector<char>& used, int x, std::vector<Perm>& out, int cap) {
  const int n = m.size();
  if (x == n) {
    out.push_back(img);
    if (static_cast<int>(out.size()) > cap)
      throw ResourceError("isometry group exceeds the size cap");
    return;
  }
  for (int y = 0; y < n; ++y) {
    if (used[y]) continue;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k)
      ok = std::abs(profile[x][k] - profile[y][k]) <= kMetricTol;
    for (int z = 0; z < x && ok; ++z)
      ok = std::abs(m.d(img[z], y) - m.d(z, x)) <= kMetricTol;
    if (!ok) continue;
    img[x] = y;
    used[y] = 1;
    extend(m, profile, img, used, x + 1, out, cap);
    used[y] = 0;
  }
}

}  // namespace

IsometryGroup full_isometry_group(std::shared_ptr<const FiniteMetricSpace> m, int cap) {
  const int n = m->size();
  std::vector<std::vector<double>> profile(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) profile[x].push_back(m->d(x, y));
    std::sort(profile[x].begin(), profile[x].end());
  }
  std::vector<Perm> out;
  Perm img(n, -1);
  std::vector<char> used(n, 0);
  extend(*m, profile, img, used, 0, out, cap);
  std::vector<Perm> gens = out;
  return IsometryGroup(std::move(m), std::move(out), std::move(gens));
}

IsometryGroup closure(std::shared_ptr<const FiniteMetricSpace> m, const std::vector<Perm>& gens,
                      int cap) {
  for (const auto& g : gens)
    if (!is_isometry(*m, g)) throw DomainError("generator is not an isometry");
  std::unordered_map<Perm, int, PermHash> seen;
  std::vector<Perm> elems{identity_perm(m->size())};
  seen.emplace(elems[0], 0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Perm next = compose(elems[cur], g);
      if (seen.count(next)) continue;
      if (static_cast<int>(elems.size()) >= cap)
        throw ResourceError("group closure exceeds the size cap");
      seen.emplace(next, static_cast<int>(elems.size()));
      elems.push_back(std::move(next));
      queue.push_back(static_cast<int>(elems.size()) - 1);
    }
  }
  return IsometryGroup(std::move(m), std::move(elems), gens);
}

double dp_distance(const FiniteMetricSpace& m, const Perm& g, const Perm& h) {
  const int p = m.basepoint();
  std::vector<std::pair<double, double>> pts;  // (d(p,x), d(gx,hx))
  for (int x = 0; x < m.size(); ++x) pts.emplace_back(m.d(p, x), m.d(g[x], h[x]));
  std::sort(pts.begin(), pts.end());
  // For r in (rho_k, rho_{k+1}] the open ball holds exactly the points with
  // d(p,x) <= rho_k, so the infimum on that interval is 1/rho_{k+1} + s_k.
  double best = std::numeric_limits<double>::infinity();
  double s = 0.0;
  size_t i = 0;
  while (i < pts.size()) {
    double rho = pts[i].first;
    while (i < pts.size() && pts[i].first == rho) s = std::max(s, pts[i++].second);
    if (i < pts.size()) best = std::min(best, 1.0 / pts[i].first + s);
  }
  return std::min(best, s);  // r -> infinity
}

double dp_distance(const IsometryGroup& G, int g, int h) {
  return dp_distance(G.space(), G.element(g), G.element(h));
}

Subset orbit(const std::vector<Perm>& elems, int x) {
  Subset out;
  for (const auto& g : elems) out.push_back(g[x]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Subset orbit(const IsometryGroup& G, int x) { return orbit(G.elements(), x); }

QuotientSpace quotient(const FiniteMetricSpace& m, const std::vector<Perm>& elems) {
  const int n = m.size();
  QuotientSpace q;
  q.class_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (q.class_of[x] >= 0) continue;
    Subset o = orbit(elems, x);
    for (int y : o) q.class_of[y] = static_cast<int>(q.orbits.size());
    q.orbits.push_back(std::move(o));
  }
  const int k = static_cast<int>(q.orbits.size());
  std::vector<double> flat(static_cast<size_t>(k) * k, 0.0);
  std::vector<std::string> labels;
  for (int a = 0; a < k; ++a) {
    std::string lab = "[";
    for (size_t t = 0; t < q.orbits[a].size(); ++t)
      lab += (t ? " " : "") + m.label(q.orbits[a][t]);
    labels.push_back(lab + "]");
    for (int b = 0; b < k; ++b) {
      if (a == b) continue;
      double best = std::numeric_limits<double>::infinity();
      for (int x : q.orbits[a])
        for (int y : q.orbits[b]) best = std::min(best, m.d(x, y));
      flat[static_cast<size_t>(a) * k + b] = best;
    }
  }
  q.space = FiniteMetricSpace(k, std::move(flat), q.class_of[m.basepoint()], std::move(labels));
  auto bad = validate_metric(q.space);
  if (!bad.empty()) throw StructuralError("quotient metric invalid: " + describe(bad.front()));
  return q;
}

QuotientSpace quotient(const IsometryGroup& G) { return quotient(G.space(), G.elements()); }

std::vector<Perm> elements_of(const IsometryGroup& G, const Subgroup& H) {
  std::vector<Perm> out;
  out.reserve(H.size());
  for (int h : H) out.push_back(G.element(h));
  return out;
}

bool is_subgroup(const IsometryGroup& G, const Subgroup& H) {
  if (H.empty() || !std::binary_search(H.begin(), H.end(), 0)) return false;
  for (int a : H) {
    if (!std::binary_search(H.begin(), H.end(), G.inv(a))) return false;
    for (int b : H)
      if (!std::binary_search(H.begin(), H.end(), G.mul(a, b))) return false;
  }
  return true;
}

Subgroup generated_subgroup(const IsometryGroup& G, const std::vector<int>& gens) {
  std::vector<char> in(G.order(), 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (size_t i = 0; i < elems.size(); ++i)
    for (int g : gens) {
      int next = G.mul(elems[i], g);
      if (!in[next]) {
        in[next] = 1;
        elems.push_back(next);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

Subgroup cyclic_subgroup(const IsometryGroup& G, int g) { return generated_subgroup(G, {g}); }

std::optional<Conjugation> normality_violation(const IsometryGroup& G, const Subgroup& H) {
  for (int g = 0; g < G.order(); ++g)
    for (int h : H) {
      int c = G.mul(G.mul(g, h), G.inv(g));
      if (!std::binary_search(H.begin(), H.end(), c)) return Conjugation{g, h, c};
    }
  return std::nullopt;
}

bool is_normal(const IsometryGroup& G, const Subgroup& H) {
  return !normality_violation(G, H).has_value();
}

QuotientGroup quotient_group(const IsometryGroup& G, const Subgroup& H) {
  if (!is_subgroup(G, H)) throw DomainError("quotient_group: H is not a subgroup");
  if (auto v = normality_violation(G, H)) {
    const auto& m = G.space();
    throw DomainError("quotient_group: H is not normal: g = " + cycle_string(m, G.element(v->g)) +
                      ", h = " + cycle_string(m, G.element(v->h)) + ", g h g^-1 = " +
                      cycle_string(m, G.element(v->ghg_inv)) + " is not in H");
  }
  QuotientGroup out;
  out.quotient = quotient(G.space(), elements_of(G, H));
  const int k = out.quotient.space.size();
  std::vector<Perm> induced;
  std::vector<Perm> per_element(G.order());
  for (int g = 0; g < G.order(); ++g) {
    Perm p(k);
    for (int c = 0; c < k; ++c) p[c] = out.quotient.class_of[G.element(g)[out.quotient.orbits[c][0]]];
    per_element[g] = p;
    induced.push_back(std::move(p));
  }
  auto qspace = std::make_shared<const FiniteMetricSpace>(out.quotient.space);
  std::vector<Perm> gens;
  for (const auto& g : G.generators()) {
    int gi = G.index_of(g);
    if (gi >= 0) gens.push_back(per_element[gi]);
  }
  out.group = IsometryGroup(qspace, induced, gens);
  out.coset.resize(G.order());
  for (int g = 0; g < G.order(); ++g) out.coset[g] = out.group.index_of(per_element[g]);
  return out;
}

std::vector<Subgroup> enumerate_subgroups(const IsometryGroup& G, int cap) {
  std::set<Subgroup> seen;
  std::vector<Subgroup> out{{0}};
  seen.insert(out[0]);
  for (size_t i = 0; i < out.size(); ++i) {
    std::vector<char> in(G.order(), 0);
    for (int h : out[i]) in[h] = 1;
    for (int g = 1; g < G.order(); ++g) {
      if (in[g]) continue;
      Subgroup gens = out[i];
      gens.push_back(g);
      Subgroup s = generated_subgroup(G, gens);
      if (seen.insert(s).second) {
        if (static_cast<int>(out.size()) >= cap)
          throw ResourceError("subgroup enumeration exceeds the cap");
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

double displacement_sup(const IsometryGroup& G, const Subgroup& H, double r) {
  const auto& m = G.space();
  Subset b = ball(m, m.basepoint(), r, false);
  double s = 0.0;
  for (int h : H)
    for (int x : b) s = std::max(s, m.d(G.element(h)[x], x));
  return s;
}

std::string perm_to_string(const Perm& p) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << "]";
  return os.str();
}

std::string cycle_string(const FiniteMetricSpace& m, const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  std::string out;
  for (size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == static_cast<int>(s)) continue;
    out += "(";
    size_t x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = 1;
      out += (first ? "" : " ") + m.label(static_cast<int>(x));
      first = false;
      x = static_cast<size_t>(p[x]);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

}  // namespace egh
