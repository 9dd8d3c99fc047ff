#include "egh/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "egh/borsuk.hpp"
#include "egh/errors.hpp"

namespace egh {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Elem> all_elements(const Group& G) {
  auto e = G.elements();
  if (!e) throw DomainError("finite group expected");
  return *e;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

Triple hexagon_graph(int i) {
  if (i < 1) throw DomainError("hexagon edge length must be at least 1");
  // x a b c y z; edges x-a, y-b, z-c and the triangle a-b-c.
  const std::vector<std::string> labels{"x", "a", "b", "c", "y", "z"};
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(6, std::vector<double>(6, inf));
  for (int u = 0; u < 6; ++u) d[u][u] = 0;
  auto edge = [&](int u, int v) { d[u][v] = d[v][u] = i; };
  edge(0, 1);
  edge(4, 2);
  edge(5, 3);
  edge(1, 2);
  edge(2, 3);
  edge(1, 3);
  for (int w = 0; w < 6; ++w)
    for (int u = 0; u < 6; ++u)
      for (int v = 0; v < 6; ++v) d[u][v] = std::min(d[u][v], d[u][w] + d[w][v]);
  return full_triple(FiniteMetricSpace(d, 0, labels));
}

Subgroup hexagon_small_subgroup(const Triple& t) {
  const int x = t.X().index_of("x"), a = t.X().index_of("a");
  Subgroup H;
  for (int g = 0; g < t.G().order(); ++g)
    if (t.G().element(g)[x] == x && t.G().element(g)[a] == a) H.push_back(g);
  return H;
}

Triple ray_triple(int count) {
  if (count < 1) throw DomainError("ray sample needs a point");
  std::vector<std::vector<double>> d(count, std::vector<double>(count));
  for (int u = 0; u < count; ++u)
    for (int v = 0; v < count; ++v) d[u][v] = std::abs(u - v);
  return trivial_triple(FiniteMetricSpace(d, 0));
}

Triple point_triple() { return trivial_triple(FiniteMetricSpace({{0.0}}, 0, {"*"})); }

Triple collapsing_sphere(int i, int n, int mesh) {
  if (i < 1) throw DomainError("sphere index must be at least 1");
  if (n == 1) {
    if (mesh < 3) throw DomainError("circle sample needs at least 3 points");
    std::vector<std::vector<double>> d(mesh, std::vector<double>(mesh));
    for (int u = 0; u < mesh; ++u)
      for (int v = 0; v < mesh; ++v) {
        int m = std::abs(u - v);
        m = std::min(m, mesh - m);
        d[u][v] = 2 * kPi * m / (static_cast<double>(mesh) * i);
      }
    return full_triple(FiniteMetricSpace(d, 0));
  }
  if (n == 2) {
    if (mesh < 0 || mesh > 4) throw DomainError("sphere subdivision level must be in 0..4");
    SymmetricTriangulation t = build_triangulation(3, mesh);
    const int N = static_cast<int>(t.vertices.size());
    std::vector<std::vector<double>> d(N, std::vector<double>(N, 0.0));
    for (int u = 0; u < N; ++u)
      for (int v = u + 1; v < N; ++v)
        d[u][v] = d[v][u] = std::acos(std::clamp(t.vertices[u].dot(t.vertices[v]), -1.0, 1.0)) / i;
    // Quarter turns about z and x generate the rotation group of the octahedron.
    auto perm_of = [&](auto rot) {
      Perm p(N);
      for (int v = 0; v < N; ++v) p[v] = t.vertex_of(rot(t.keys[v]));
      return p;
    };
    Perm rz = perm_of([](const Eigen::VectorXi& a) { return Eigen::Vector3i(-a(1), a(0), a(2)).eval(); });
    Perm rx = perm_of([](const Eigen::VectorXi& a) { return Eigen::Vector3i(a(0), -a(2), a(1)).eval(); });
    return make_triple(FiniteMetricSpace(d, 0), {rz, rx});
  }
  throw DomainError("sphere dimension must be 1 or 2");
}

Bullet parse_bullet(const std::string& s) {
  if (s == "I") return Bullet::I;
  if (s == "II") return Bullet::II;
  if (s == "III") return Bullet::III;
  if (s == "IV") return Bullet::IV;
  if (s == "V") return Bullet::V;
  throw DomainError("unknown condition '" + s + "' (expected I, II, III, IV or V)");
}

std::string bullet_name(Bullet b) {
  static const char* names[] = {"I", "II", "III", "IV", "V"};
  return names[static_cast<int>(b)];
}

ApproximationMap counterexample(Bullet which, int i) {
  if (i < 1) throw DomainError("index must be at least 1");
  ApproximationMap a;
  a.label = "counterexample-" + bullet_name(which) + "@" + std::to_string(i);
  auto id = [](const Elem& g) { return g; };
  switch (which) {
    case Bullet::I: {
      // Z inside R; the image {-1,0,1} misses most of (-1,1).
      auto Z = std::make_shared<Lattice>(1, false);
      auto R = std::make_shared<Lattice>(1, true);
      a.source = Z;
      a.target = R;
      a.phi = id;
      a.A_src = {Elem{-1.0}, Elem{0.0}, Elem{1.0}};
      a.A_tgt = interval_region(R, -1.0, 1.0, true);
      break;
    }
    case Bullet::II: {
      // Identity on Z with A_i = {-i..i} and A = {-1,0,1}.
      auto Z = std::make_shared<Lattice>(1, false);
      a.source = Z;
      a.target = Z;
      a.phi = id;
      for (int k = -i; k <= i; ++k) a.A_src.push_back(Elem{static_cast<double>(k)});
      a.A_tgt = lattice_interval_region(Z, -1, 1);
      break;
    }
    case Bullet::III: {
      // Heisenberg group mod 5 onto Z_5^3 by coordinates: a bijection that
      // respects inverses but not products.
      auto H = std::make_shared<HeisenbergMod>(5, false, 0.2);
      auto Ab = std::make_shared<HeisenbergMod>(5, true, 0.2);
      a.source = H;
      a.target = Ab;
      a.phi = id;
      a.A_src = all_elements(*H);
      a.A_tgt = whole_region(Ab);
      break;
    }
    case Bullet::IV: {
      // (1/2i)Z x (1/2)Z in the open unit disc, projected to the first
      // coordinate. (0, 1/2)^2 leaves the disc but maps to 0, deep inside (-1,1).
      auto R2 = std::make_shared<Lattice>(2, true);
      auto R = std::make_shared<Lattice>(1, true);
      a.source = R2;
      a.target = R;
      a.phi = [](const Elem& g) { return Elem{g[0]}; };
      const double h = 1.0 / (2.0 * i), hy = 0.5;
      for (int x = -2 * i; x <= 2 * i; ++x)
        for (int y = -2; y <= 2; ++y) {
          double px = x * h, py = y * hy;
          if (px * px + py * py < 1.0) a.A_src.push_back(Elem{px, py});
        }
      a.A_tgt = interval_region(R, -1.0, 1.0, true);
      break;
    }
    case Bullet::V: {
      // Z_n -> Z_n, k -> a k with a near 0.618 n: a homomorphism onto the
      // circle grid whose image of a source neighbour jumps far away.
      const long long n = 40LL * i;
      auto C = std::make_shared<CyclicGroup>(n, CyclicGroup::Metric::Arc);
      long long m = std::llround(0.618 * static_cast<double>(n));
      while (std::gcd(m, n) != 1) ++m;
      a.source = C;
      a.target = C;
      a.phi = [C, m](const Elem& g) { return C->power(Elem{1.0}, m * C->rep(g)); };
      a.A_src = all_elements(*C);
      a.A_tgt = whole_region(C);
      break;
    }
  }
  return a;
}

ApproximationMap cyclic_tower(int p, int i) {
  if (p < 2 || i < 1) throw DomainError("cyclic tower needs p >= 2 and i >= 1");
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) throw DomainError("cyclic tower needs a prime p");
  auto C = std::make_shared<CyclicGroup>(ipow(p, i), CyclicGroup::Metric::PAdic, 1.0, p);
  ApproximationMap a;
  a.label = "cyclic-tower-" + std::to_string(p) + "@" + std::to_string(i);
  a.source = C;
  a.target = C;
  a.phi = [](const Elem& g) { return g; };
  a.A_src = all_elements(*C);
  a.A_tgt = whole_region(C);
  return a;
}

TowerLevel tower_level(int p, int i) {
  ApproximationMap a = cyclic_tower(p, i);
  const auto& C = static_cast<const CyclicGroup&>(*a.source);
  TowerLevel t;
  t.i = i;
  t.k = (i + 1) / 2;
  t.delta = std::pow(static_cast<double>(p), -t.k);
  const long long n = C.modulus();
  auto multiples = [&](int k) {
    std::vector<Elem> out;
    const long long step = ipow(p, k);
    for (long long x = 0; x < n; x += step) out.push_back(Elem{static_cast<double>(x)});
    return out;
  };
  // The closed p-adic ball of radius delta is the subgroup p^k Z.
  std::vector<Elem> ball;
  for (const Elem& g : a.A_src)
    if (C.dist(g, C.identity()) <= t.delta) ball.push_back(g);
  ApproximationMap loc = localize(a, finite_region(a.source, ball, "ball"));
  MaximalSmall ms = maximal_small(loc, t.delta);
  t.H_order = ms.H.size();
  auto expected = multiples(t.k);
  std::vector<long long> got, want;
  for (const Elem& h : ms.H) got.push_back(C.rep(h));
  for (const Elem& h : expected) want.push_back(C.rep(h));
  std::sort(got.begin(), got.end());
  t.H_expected = got == want;
  t.H_maximal = ms.small && ms.maximal;
  auto larger = multiples(t.k - 1);
  t.larger_order = larger.size();
  t.larger_small_next = std::all_of(larger.begin(), larger.end(), [&](const Elem& h) {
    return C.dist(h, C.identity()) <= p * t.delta;
  });
  return t;
}

TorusCollapse torus_collapse(int i, int grid, int minor) {
  if (minor <= 0) minor = grid;
  if (i < 1) throw DomainError("torus index must be at least 1");
  if (grid < 8 || minor < 2) throw DomainError("torus grid must be at least 8");
  TorusCollapse t;
  t.i = i;
  t.grid = grid;
  t.minor = minor;
  const int N = grid * minor;
  auto arc = [](int d, int m) {
    d = std::abs(d);
    return 2 * kPi * std::min(d, m - d) / m;
  };
  std::vector<double> flat(static_cast<size_t>(N) * N);
  std::vector<std::string> labels;
  for (int u = 0; u < N; ++u) {
    labels.push_back(std::to_string(u / minor) + ":" + std::to_string(u % minor));
    for (int v = 0; v < N; ++v) {
      double d1 = arc(u / minor - v / minor, grid);
      double d2 = arc(u % minor - v % minor, minor) / i;
      flat[static_cast<size_t>(u) * N + v] = std::sqrt(d1 * d1 + d2 * d2);
    }
  }
  Perm shift_a(N), shift_b(N);
  for (int u = 0; u < N; ++u) {
    int a = u / minor, b = u % minor;
    shift_a[u] = ((a + 1) % grid) * minor + b;
    shift_b[u] = a * minor + (b + 1) % minor;
  }
  t.triple = make_triple(FiniteMetricSpace(N, std::move(flat), 0, std::move(labels)), {shift_a, shift_b});
  for (int g = 0; g < t.triple.G().order(); ++g)
    if (t.triple.G().element(g)[0] < minor) t.H.push_back(g);

  // The limit circle uses the same distance expression with a zero second term.
  std::vector<double> circle(static_cast<size_t>(grid) * grid);
  for (int u = 0; u < grid; ++u)
    for (int v = 0; v < grid; ++v) {
      double d1 = arc(u - v, grid), d2 = 0.0;
      circle[static_cast<size_t>(u) * grid + v] = std::sqrt(d1 * d1 + d2 * d2);
    }
  Perm rot(grid);
  for (int u = 0; u < grid; ++u) rot[u] = (u + 1) % grid;
  t.limit = make_triple(FiniteMetricSpace(grid, std::move(circle), 0), {rot});

  auto src = std::make_shared<TorusGrid>(std::vector<int>{grid, minor}, std::vector<double>{1.0, 1.0 / i});
  auto tgt = std::make_shared<TorusGroup>(std::vector<double>{1.0});
  t.group = src;
  ApproximationMap& m = t.map;
  m.label = "torus-collapse@" + std::to_string(i);
  m.source = src;
  m.target = tgt;
  m.phi = [src](const Elem& g) { return Elem{src->angle(g, 0)}; };
  m.A_tgt = angle_box_region(tgt, {kPi / 2});
  for (const Elem& g : all_elements(*src))
    if (m.A_tgt.contains(m.phi(g))) m.A_src.push_back(g);
  return t;
}

ApproximationMap rotation_approximation(int n) {
  if (n < 2) throw DomainError("rotation scenario needs n >= 2");
  auto C = std::make_shared<CyclicGroup>(n, CyclicGroup::Metric::Arc);
  auto S1 = std::make_shared<TorusGroup>(std::vector<double>{1.0});
  ApproximationMap a;
  a.label = "rotation@" + std::to_string(n);
  a.source = C;
  a.target = S1;
  a.phi = [C, n](const Elem& g) { return Elem{wrap_angle(2 * kPi * static_cast<double>(C->rep(g)) / n)}; };
  a.A_tgt = angle_box_region(S1, {kPi / 2});
  for (const Elem& g : all_elements(*C))
    if (a.A_tgt.contains(a.phi(g))) a.A_src.push_back(g);
  return a;
}

NormScenario norm_scenario(const std::string& name, double radius) {
  const double r = radius > 0 ? radius : (name == "SO3" ? 0.6 : 1.0);
  if (name == "R1") {
    auto G = std::make_shared<Lattice>(1, true);
    return {name, G, interval_region(G, -r, r, true)};
  }
  if (name == "R2") {
    auto G = std::make_shared<Lattice>(2, true);
    return {name, G, euclidean_ball_region(G, r, true)};
  }
  if (name == "S1-arc") {
    auto G = std::make_shared<TorusGroup>(std::vector<double>{1.0});
    return {name, G, angle_box_region(G, {r})};
  }
  if (name == "T2") {
    auto G = std::make_shared<TorusGroup>(std::vector<double>{1.0, 1.0});
    return {name, G, angle_box_region(G, {r, 0.6 * r})};
  }
  if (name == "SO3") {
    auto G = std::make_shared<SO3Group>();
    return {name, G, so3_ball_region(G, r)};
  }
  throw DomainError("unknown norm scenario '" + name + "'");
}

std::vector<std::string> norm_scenario_names() { return {"R1", "R2", "S1-arc", "T2", "SO3"}; }

std::vector<std::vector<Elem>> gleason_words(const NormScenario& s, int count, std::uint64_t seed) {
  std::vector<Elem> pool;
  for (const Elem& g : s.B.net(0.15))
    if (s.B.contains(g)) pool.push_back(g);
  if (pool.empty()) throw DomainError("neighbourhood net is empty");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> len(2, 3);
  std::vector<std::vector<Elem>> words;
  for (int w = 0; w < count; ++w) {
    std::vector<Elem> word;
    for (int l = len(rng); l > 0; --l) word.push_back(pool[pick(rng)]);
    words.push_back(std::move(word));
  }
  return words;
}

std::vector<Eigen::VectorXd> unit_directions(int k, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<Eigen::VectorXd> out;
  while (static_cast<int>(out.size()) < count) {
    Eigen::VectorXd v(k);
    for (int j = 0; j < k; ++j) v(j) = nd(rng);
    if (v.norm() > 1e-6) out.push_back(v.normalized());
  }
  return out;
}

PuncturedCircle punctured_circle(int terms) {
  PuncturedCircle p;
  auto G = std::make_shared<TorusGroup>(std::vector<double>{1.0});
  p.group = G;
  p.A = angle_box_region(G, {kPi});
  p.g = Elem{kPi};
  for (int j = 1; j <= terms; ++j) p.g_seq.push_back(Elem{kPi - 1.0 / j});
  return p;
}

std::vector<std::string> scenario_names() {
  return {"hexagon",          "collapsing-sphere", "counterexample-I", "counterexample-II",
          "counterexample-III", "counterexample-IV", "counterexample-V", "cyclic-tower",
          "torus-collapse",   "rotation"};
}

}  // namespace egh
