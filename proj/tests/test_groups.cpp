#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "egh/errors.hpp"
#include "egh/group.hpp"
#include "egh/region.hpp"

using namespace egh;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Elem> sample(const Group& G, std::mt19937_64& rng, int count) {
  std::vector<Elem> out;
  if (auto all = G.elements()) {
    for (int i = 0; i < count; ++i) out.push_back((*all)[rng() % all->size()]);
    return out;
  }
  if (const auto* L = dynamic_cast<const Lattice*>(&G); L && G.algebra_dim() == 0) {
    for (int i = 0; i < count; ++i) {
      Elem a = G.identity();
      for (int j = 0; j < L->dim(); ++j) a[j] = static_cast<double>(static_cast<int>(rng() % 21) - 10);
      out.push_back(a);
    }
    return out;
  }
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd v(G.algebra_dim());
    for (int j = 0; j < v.size(); ++j) v[j] = nd(rng);
    out.push_back(G.exp(v));
  }
  return out;
}

// Group axioms and left-invariance of the metric on random triples.
void check_axioms(const Group& G, double tol) {
  std::mt19937_64 rng(5);
  auto xs = sample(G, rng, 12);
  const Elem e = G.identity();
  for (const Elem& a : xs) {
    CHECK(G.dist(G.mul(a, G.inv(a)), e) <= tol);
    CHECK(G.dist(G.mul(e, a), a) <= tol);
    for (const Elem& b : xs) {
      CHECK(G.dist(a, b) == doctest::Approx(G.dist(b, a)).epsilon(1e-9));
      for (const Elem& c : xs) {
        CHECK(G.dist(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c))) <= tol);
        CHECK(std::abs(G.dist(G.mul(c, a), G.mul(c, b)) - G.dist(a, b)) <= tol);
      }
    }
  }
}

}  // namespace

TEST_CASE("group axioms") {
  SUBCASE("lattice") { check_axioms(Lattice(2, false), 0.0); }
  SUBCASE("euclidean") { check_axioms(Lattice(3, true), 1e-12); }
  SUBCASE("torus") { check_axioms(TorusGroup({1.0, 0.5}), 1e-9); }
  SUBCASE("torus grid") { check_axioms(TorusGrid({12, 5}, {1.0, 0.25}), 1e-12); }
  SUBCASE("SO(3)") { check_axioms(SO3Group(), 1e-7); }
  SUBCASE("cyclic arc") { check_axioms(CyclicGroup(30, CyclicGroup::Metric::Arc), 1e-12); }
  SUBCASE("cyclic p-adic") { check_axioms(CyclicGroup(64, CyclicGroup::Metric::PAdic), 0.0); }
  SUBCASE("heisenberg") { check_axioms(HeisenbergMod(7, false, 1.0), 1e-12); }
}

TEST_CASE("heisenberg is non-abelian and its abelian twin is not") {
  HeisenbergMod H(5, false, 1.0), A(5, true, 1.0);
  Elem x{1, 0, 0}, y{0, 1, 0};
  CHECK(H.dist(H.mul(x, y), H.mul(y, x)) > 0.0);
  CHECK(A.dist(A.mul(x, y), A.mul(y, x)) == 0.0);
  CHECK(H.elements()->size() == 125);
}

TEST_CASE("p-adic distances") {
  CyclicGroup C(32, CyclicGroup::Metric::PAdic, 1.0, 2);
  CHECK(C.dist(Elem{0}, Elem{1}) == 1.0);
  CHECK(C.dist(Elem{0}, Elem{4}) == 0.25);
  CHECK(C.dist(Elem{3}, Elem{11}) == 0.125);
  CHECK(C.dist(Elem{5}, Elem{5}) == 0.0);
}

TEST_CASE("exp and log invert each other near the identity") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SO3Group so3;
  TorusGroup t2({1.0, 2.0});
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::Vector3d v(u(rng), u(rng), u(rng));
    auto back = so3.log(so3.exp(v));
    REQUIRE(back);
    CHECK((*back - v).norm() < 1e-9);
    CHECK(SO3Group::angle(so3.exp(v)) == doctest::Approx(v.norm()));
    Eigen::Vector2d w(u(rng), u(rng));
    CHECK((*t2.log(t2.exp(w)) - w).norm() < 1e-12);
  }
  CHECK_FALSE(TorusGroup({1.0}).log(TorusGroup({1.0}).exp(Eigen::VectorXd::Constant(1, kPi))));
}

TEST_CASE("cyclic element orders and representatives") {
  CyclicGroup C(12, CyclicGroup::Metric::Arc);
  CHECK(*C.element_order(Elem{8}) == 3);
  CHECK(*C.element_order(Elem{0}) == 1);
  CHECK(C.signed_rep(Elem{11}) == -1);
  CHECK(C.signed_rep(Elem{6}) == 6);
  CHECK(C.dist(Elem{0}, Elem{3}) == doctest::Approx(kPi / 2));
}

TEST_CASE("product sets of a symmetric interval in Z") {
  auto Z = std::make_shared<Lattice>(1, false);
  std::vector<Elem> a{Elem{-1}, Elem{0}, Elem{1}};
  for (int n = 1; n <= 5; ++n) CHECK(product_set(*Z, a, n).size() == static_cast<size_t>(2 * n + 1));
  CHECK_THROWS_AS(product_set(*Z, a, 4, 5), ResourceError);
}

TEST_CASE("regions") {
  auto Z = std::make_shared<Lattice>(1, false);
  Region L = lattice_interval_region(Z, -2, 2);
  CHECK(L.contains(Elem{2}));
  CHECK_FALSE(L.contains(Elem{3}));
  CHECK(L.depth(Elem{0}) == 3.0);
  CHECK(L.net(0.1).size() == 5);

  auto R = std::make_shared<Lattice>(1, true);
  Region I = interval_region(R, -1, 1, true);
  CHECK(I.contains(Elem{0.999}));
  CHECK_FALSE(I.contains(Elem{1.0}));
  CHECK(I.depth(Elem{0.25}) == doctest::Approx(0.75));
  CHECK(I.dist_closure(Elem{1.5}) == doctest::Approx(0.5));
  for (const Elem& x : I.net(0.1)) CHECK(I.dist_closure(x) == 0.0);

  auto T = std::make_shared<TorusGroup>(std::vector<double>{1.0});
  Region arc = angle_box_region(T, {kPi});
  CHECK_FALSE(arc.contains(T->from_angles({kPi})));
  CHECK(arc.contains(T->from_angles({kPi - 1e-6})));

  auto S = std::make_shared<SO3Group>();
  Region ball = so3_ball_region(S, 0.5);
  CHECK(ball.contains(S->exp(Eigen::Vector3d(0.3, 0.0, 0.2))));
  CHECK_FALSE(ball.contains(S->exp(Eigen::Vector3d(0.0, 0.6, 0.0))));
}
