#include "egh/borsuk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "egh/errors.hpp"
#include "egh/lp.hpp"
#include "egh/parallel.hpp"

namespace egh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> to_vec(const Eigen::VectorXi& v) { return std::vector<int>(v.data(), v.data() + v.size()); }

double diameter(const std::vector<Eigen::VectorXd>& pts, const std::vector<int>& simplex) {
  double d = 0.0;
  for (size_t a = 0; a < simplex.size(); ++a)
    for (size_t b = a + 1; b < simplex.size(); ++b)
      d = std::max(d, (pts[simplex[a]] - pts[simplex[b]]).norm());
  return d;
}

}  // namespace

int SymmetricTriangulation::vertex_of(const Eigen::VectorXi& key) const {
  auto it = index.find(to_vec(key));
  return it == index.end() ? -1 : it->second;
}

SymmetricTriangulation build_triangulation(int n, int subdivisions) {
  if (n < 2) throw DomainError("triangulated sphere needs n >= 2");
  if (subdivisions < 0 || subdivisions > 12) throw DomainError("subdivisions must be in 0..12");
  SymmetricTriangulation t;
  t.n = n;
  t.subdivisions = subdivisions;
  t.k = 1 << subdivisions;
  const int d = n - 1, k = t.k;

  auto vertex = [&](const Eigen::VectorXi& a) {
    auto [it, fresh] = t.index.emplace(to_vec(a), static_cast<int>(t.keys.size()));
    if (fresh) {
      t.keys.push_back(a);
      Eigen::VectorXd f = a.cast<double>() / k;
      t.flat.push_back(f);
      t.vertices.push_back(f.normalized());
    }
    return it->second;
  };

  // Kuhn simplices of the grid inside {k >= y_1 >= ... >= y_d >= 0}, which is
  // the standard simplex in the coordinates b_0 = k - y_1, b_j = y_j - y_{j+1}, b_d = y_d.
  std::vector<int> perm(d);
  for (int sigma = 0; sigma < (1 << n); ++sigma) {
    Eigen::VectorXi z = Eigen::VectorXi::Zero(d);
    for (;;) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<Eigen::VectorXi> ys{z};
        for (int step : perm) {
          Eigen::VectorXi y = ys.back();
          ++y(step);
          ys.push_back(y);
        }
        bool inside = true;
        for (const auto& y : ys) {
          if (y(0) > k || y(d - 1) < 0) inside = false;
          for (int j = 0; j + 1 < d; ++j)
            if (y(j) < y(j + 1)) inside = false;
        }
        if (!inside) continue;
        std::vector<int> simplex;
        for (const auto& y : ys) {
          Eigen::VectorXi a(n);
          a(0) = k - y(0);
          for (int j = 1; j < d; ++j) a(j) = y(j - 1) - y(j);
          a(d) = y(d - 1);
          for (int j = 0; j < n; ++j)
            if (sigma >> j & 1) a(j) = -a(j);
          simplex.push_back(vertex(a));
        }
        t.simplices.push_back(std::move(simplex));
      } while (std::next_permutation(perm.begin(), perm.end()));
      int j = 0;
      while (j < d && ++z(j) >= k) z(j++) = 0;
      if (j == d) break;
    }
  }

  t.antipode.resize(t.keys.size());
  for (size_t v = 0; v < t.keys.size(); ++v) {
    int w = t.vertex_of(-t.keys[v]);
    if (w < 0) throw StructuralError("triangulation lost antipodal symmetry");
    t.antipode[v] = w;
  }
  for (const auto& s : t.simplices) {
    t.mesh = std::max(t.mesh, diameter(t.vertices, s));
    t.flat_mesh = std::max(t.flat_mesh, diameter(t.flat, s));
  }
  return t;
}

TriangulationAudit audit(const SymmetricTriangulation& t) {
  TriangulationAudit a;
  for (size_t v = 0; v < t.keys.size(); ++v)
    if (t.keys[t.antipode[v]] != -t.keys[v] || t.vertices[t.antipode[v]] != -t.vertices[v]) a.antipodal = false;
  std::set<std::vector<int>> cells;
  for (auto s : t.simplices) {
    std::sort(s.begin(), s.end());
    cells.insert(s);
  }
  std::map<std::vector<int>, int> faces;
  for (const auto& s : t.simplices) {
    std::vector<int> m;
    for (int v : s) m.push_back(t.antipode[v]);
    std::sort(m.begin(), m.end());
    if (!cells.count(m)) a.antipodal = false;
    for (size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<int> f;
      for (size_t j = 0; j < s.size(); ++j)
        if (j != drop) f.push_back(s[j]);
      std::sort(f.begin(), f.end());
      ++faces[f];
    }
    if (diameter(t.vertices, s) > t.mesh) a.within_mesh = false;
  }
  for (const auto& [f, c] : faces)
    if (c != 2) a.closed_surface = false;
  return a;
}

void OddMapSample::require_odd() const {
  if (!tri) throw StructuralError("sample has no triangulation");
  if (values.size() != tri->keys.size()) throw StructuralError("one value per vertex is needed");
  for (size_t v = 0; v < values.size(); ++v)
    if (values[tri->antipode[v]] != -values[v])
      throw DomainError("sample is not odd at vertex " + std::to_string(v));
}

Eigen::VectorXd OddMapSample::extend(const Eigen::VectorXd& x) const {
  const auto& t = *tri;
  for (const auto& s : t.simplices) {
    Eigen::MatrixXd V(t.n, t.n);
    for (int j = 0; j < t.n; ++j) V.col(j) = t.flat[s[j]];
    Eigen::VectorXd lam = V.fullPivLu().solve(x);
    if (lam.minCoeff() < -1e-12 || (V * lam - x).norm() > 1e-12) continue;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(target_dim());
    for (int j = 0; j < t.n; ++j) out += lam(j) * values[s[j]];
    return out;
  }
  throw DomainError("point is not on the cross-polytope");
}

OddMapSample sample_map(std::shared_ptr<const SymmetricTriangulation> tri,
                        const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f) {
  OddMapSample s;
  s.values.resize(tri->keys.size());
  for (size_t v = 0; v < tri->keys.size(); ++v) {
    size_t w = tri->antipode[v];
    if (v < w) {
      s.values[v] = f(tri->vertices[v]);
      s.values[w] = -s.values[v];
    }
  }
  s.tri = std::move(tri);
  return s;
}

OddMapSample random_odd_sample(std::shared_ptr<const SymmetricTriangulation> tri, int k,
                               std::uint64_t seed) {
  if (k < 1) throw DomainError("target dimension must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  OddMapSample s;
  s.values.resize(tri->keys.size());
  for (size_t v = 0; v < tri->keys.size(); ++v) {
    size_t w = tri->antipode[v];
    if (v < w) {
      Eigen::VectorXd x(k);
      for (int j = 0; j < k; ++j) x(j) = u(rng);
      s.values[v] = x;
      s.values[w] = -x;
    }
  }
  s.tri = std::move(tri);
  return s;
}

OddMapSample refine_sample(const OddMapSample& s) {
  const auto& old = *s.tri;
  auto fine = std::make_shared<SymmetricTriangulation>(build_triangulation(old.n, old.subdivisions + 1));
  OddMapSample out;
  out.values.resize(fine->keys.size());
  for (size_t v = 0; v < fine->keys.size(); ++v) {
    size_t w = fine->antipode[v];
    if (v > w) continue;
    const Eigen::VectorXi& key = fine->keys[v];
    bool even = std::all_of(key.data(), key.data() + key.size(), [](int a) { return a % 2 == 0; });
    int o = even ? old.vertex_of(key / 2) : -1;
    out.values[v] = o >= 0 ? s.values[o] : s.extend(fine->flat[v]);
    out.values[w] = -out.values[v];
  }
  out.tri = std::move(fine);
  return out;
}

ContinuityModulus continuity_modulus(const OddMapSample& s) {
  ContinuityModulus m;
  m.delta_est = kInf;
  for (const auto& sx : s.tri->simplices)
    for (size_t a = 0; a < sx.size(); ++a)
      for (size_t b = a + 1; b < sx.size(); ++b) {
        m.eps_est = std::max(m.eps_est, (s.values[sx[a]] - s.values[sx[b]]).norm());
        m.delta_est = std::min(m.delta_est, (s.tri->vertices[sx[a]] - s.tri->vertices[sx[b]]).norm());
      }
  return m;
}

namespace {

// Zero of the affine map on one simplex: lambda >= 0, sum lambda = 1, F lambda = 0.
std::optional<Eigen::VectorXd> simplex_zero(const OddMapSample& s, const std::vector<int>& simplex) {
  const int n = static_cast<int>(simplex.size());
  const int k = s.target_dim();
  for (int c = 0; c < k; ++c) {
    bool pos = true, neg = true;
    for (int v : simplex) {
      pos = pos && s.values[v](c) > 0;
      neg = neg && s.values[v](c) < 0;
    }
    if (pos || neg) return std::nullopt;
  }
  Eigen::MatrixXd A(k + 1, n);
  for (int j = 0; j < n; ++j) {
    A.block(0, j, k, 1) = s.values[simplex[j]];
    A(k, j) = 1.0;
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k + 1);
  b(k) = 1.0;
  LpResult r = solve_lp(Eigen::VectorXd::Zero(n), A, b, 1e-12);
  if (r.status != LpResult::Status::Optimal) return std::nullopt;
  Eigen::VectorXd lam = r.x.cwiseMax(0.0);
  // Polish on the support: least squares for the equality system.
  std::vector<int> support;
  for (int j = 0; j < n; ++j)
    if (lam(j) > 0) support.push_back(j);
  if (!support.empty()) {
    Eigen::MatrixXd As(k + 1, support.size());
    for (size_t j = 0; j < support.size(); ++j) As.col(j) = A.col(support[j]);
    Eigen::VectorXd ls = As.completeOrthogonalDecomposition().solve(b);
    if (ls.minCoeff() >= 0.0 && (As * ls - b).norm() < (A * lam - b).norm()) {
      lam.setZero();
      for (size_t j = 0; j < support.size(); ++j) lam(support[j]) = ls(j);
    }
  }
  return lam;
}

double residual(const OddMapSample& s, const std::vector<int>& simplex, const Eigen::VectorXd& lam) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(s.target_dim());
  for (size_t j = 0; j < simplex.size(); ++j) v += lam(j) * s.values[simplex[j]];
  return v.norm();
}

}  // namespace

ZeroWitness find_near_zero(const OddMapSample& s, bool parallel) {
  const auto& t = *s.tri;
  const int k = s.target_dim();
  if (t.n - 1 < k)
    throw DomainError("sphere dimension " + std::to_string(t.n - 1) + " is below target dimension " +
                      std::to_string(k) + "; a guaranteed zero needs n > k");
  s.require_odd();
  const long long m = static_cast<long long>(t.simplices.size());
  std::vector<double> res(m, kInf);
  std::vector<Eigen::VectorXd> lams(m);
  auto scan = [&](long long i) {
    if (auto lam = simplex_zero(s, t.simplices[i])) {
      res[i] = residual(s, t.simplices[i], *lam);
      lams[i] = std::move(*lam);
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64) num_threads(thread_count())
    for (long long i = 0; i < m; ++i) scan(i);
  } else {
    for (long long i = 0; i < m; ++i) scan(i);
  }
  long long best = -1;
  for (long long i = 0; i < m; ++i)
    if (res[i] < kInf && (best < 0 || res[i] < res[best])) best = i;
  if (best < 0) throw StructuralError("no simplex carries a zero of an odd sample; the complex is broken");

  ZeroWitness w;
  const auto& sx = t.simplices[best];
  w.simplex = static_cast<int>(best);
  w.barycentric = lams[best];
  Eigen::VectorXd flat = Eigen::VectorXd::Zero(t.n);
  w.value = Eigen::VectorXd::Zero(k);
  for (size_t j = 0; j < sx.size(); ++j) {
    flat += w.barycentric(j) * t.flat[sx[j]];
    w.value += w.barycentric(j) * s.values[sx[j]];
  }
  w.x0 = flat.normalized();
  double nearest = kInf;
  for (int v : sx) {
    double d = (t.vertices[v] - w.x0).norm();
    if (d < nearest) {
      nearest = d;
      w.vertex = v;
    }
  }
  w.vertex_value = s.values[w.vertex];
  return w;
}

ZeroCount count_zero_simplices(const OddMapSample& s) {
  const auto& t = *s.tri;
  const int k = s.target_dim();
  if (k != t.n - 1) throw DomainError("zero counting needs k = n - 1");
  ZeroCount c;
  int cells = 0;
  for (const auto& sx : t.simplices) {
    Eigen::MatrixXd M(t.n, t.n);
    for (int j = 0; j < t.n; ++j) {
      M.block(0, j, k, 1) = s.values[sx[j]];
      M(k, j) = 1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) {
      c.generic = false;
      continue;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(t.n);
    rhs(k) = 1.0;
    Eigen::VectorXd lam = lu.solve(rhs);
    double lo = lam.minCoeff();
    if (lo > 1e-12) ++cells;
    else if (lo > -1e-12) c.generic = false;
  }
  // Zeros come in antipodal pairs of cells.
  c.pairs = cells / 2;
  if (cells % 2) c.generic = false;
  return c;
}

bool small_image_contradiction(double min_vertex_norm, double eps_est, bool witness_found, double rho) {
  return min_vertex_norm > rho && witness_found && 2.0 * eps_est < rho;
}

SmallImageVerdict certify_no_small_image(const OddMapSample& s, double rho) {
  SmallImageVerdict v;
  v.min_vertex_norm = kInf;
  for (const auto& x : s.values) v.min_vertex_norm = std::min(v.min_vertex_norm, x.norm());
  v.eps_est = continuity_modulus(s).eps_est;
  try {
    v.witness_found = find_near_zero(s).value_norm() <= 1e-9;
  } catch (const StructuralError&) {
    v.witness_found = false;
  }
  v.contradiction = small_image_contradiction(v.min_vertex_norm, v.eps_est, v.witness_found, rho);
  return v;
}

}  // namespace egh
