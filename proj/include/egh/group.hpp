#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "egh/isometry.hpp"

namespace egh {

// Group element in coordinates. Up to 9 doubles covers SO(3) matrices; every
// other group here uses 1 to 3 coordinates.
struct Elem {
  std::array<double, 9> c{};
  int n = 0;

  Elem() = default;
  Elem(std::initializer_list<double> xs);
  static Elem of_size(int n);
  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }
};

// Hashable rounding of an element, used for de-duplication.
struct ElemKey {
  std::array<std::int64_t, 9> k{};
  int n = 0;
  bool operator==(const ElemKey& o) const;
};
struct ElemKeyHash {
  size_t operator()(const ElemKey& k) const noexcept;
};

// Abstract (possibly infinite, possibly discretized) group with a metric.
class Group {
 public:
  virtual ~Group() = default;
  virtual std::string name() const = 0;
  virtual Elem identity() const = 0;
  virtual Elem mul(const Elem& a, const Elem& b) const = 0;
  virtual Elem inv(const Elem& a) const = 0;
  virtual double dist(const Elem& a, const Elem& b) const = 0;
  virtual ElemKey key(const Elem& a) const;
  bool same(const Elem& a, const Elem& b) const { return key(a) == key(b); }
  Elem power(const Elem& a, long long k) const;

  // Whole element list for finite groups.
  virtual std::optional<std::vector<Elem>> elements() const { return std::nullopt; }
  // Element order when the group is finite and it is cheap to compute.
  virtual std::optional<long long> element_order(const Elem&) const { return std::nullopt; }

  // Exponential chart; algebra_dim() == 0 means no chart.
  virtual int algebra_dim() const { return 0; }
  virtual Elem exp(const Eigen::VectorXd& v) const;
  virtual std::optional<Eigen::VectorXd> log(const Elem& a) const;

  virtual std::string format(const Elem& a) const;
};

using GroupPtr = std::shared_ptr<const Group>;

// Z^k, or R^k when `continuous`. Euclidean metric.
class Lattice final : public Group {
 public:
  Lattice(int k, bool continuous);
  std::string name() const override;
  Elem identity() const override { return Elem::of_size(k_); }
  Elem mul(const Elem& a, const Elem& b) const override;
  Elem inv(const Elem& a) const override;
  double dist(const Elem& a, const Elem& b) const override;
  int algebra_dim() const override { return continuous_ ? k_ : 0; }
  Elem exp(const Eigen::VectorXd& v) const override;
  std::optional<Eigen::VectorXd> log(const Elem& a) const override;
  int dim() const { return k_; }

 private:
  int k_;
  bool continuous_;
};

// Product of circles with radii r_j; coordinates are angles in (-pi, pi].
// The metric is the flat product metric sum_j (r_j * angle_j)^2.
class TorusGroup final : public Group {
 public:
  explicit TorusGroup(std::vector<double> radii);
  std::string name() const override;
  Elem identity() const override { return Elem::of_size(static_cast<int>(radii_.size())); }
  Elem mul(const Elem& a, const Elem& b) const override;
  Elem inv(const Elem& a) const override;
  double dist(const Elem& a, const Elem& b) const override;
  int algebra_dim() const override { return static_cast<int>(radii_.size()); }
  Elem exp(const Eigen::VectorXd& v) const override;
  // Undefined when some angle equals pi.
  std::optional<Eigen::VectorXd> log(const Elem& a) const override;
  Elem from_angles(std::initializer_list<double> a) const;

 private:
  std::vector<double> radii_;
};

// Z_{N_1} x ... x Z_{N_k} acting as rotations of circles of radii r_j.
// Coordinates are integers in [0, N_j).
class TorusGrid final : public Group {
 public:
  TorusGrid(std::vector<int> counts, std::vector<double> radii);
  std::string name() const override;
  Elem identity() const override { return Elem::of_size(static_cast<int>(counts_.size())); }
  Elem mul(const Elem& a, const Elem& b) const override;
  Elem inv(const Elem& a) const override;
  double dist(const Elem& a, const Elem& b) const override;
  std::optional<std::vector<Elem>> elements() const override;
  std::optional<long long> element_order(const Elem& a) const override;
  int algebra_dim() const override { return static_cast<int>(counts_.size()); }
  // Rounds to the nearest grid rotation.
  Elem exp(const Eigen::VectorXd& v) const override;
  std::optional<Eigen::VectorXd> log(const Elem& a) const override;
  double angle(const Elem& a, int j) const;  // signed, in (-pi, pi]
  const std::vector<int>& counts() const { return counts_; }
  const std::vector<double>& radii() const { return radii_; }

 private:
  std::vector<int> counts_;
  std::vector<double> radii_;
};

// SO(3) as row-major 3x3 matrices; the metric is the rotation angle of a^T b.
class SO3Group final : public Group {
 public:
  std::string name() const override { return "SO(3)"; }
  Elem identity() const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  Elem inv(const Elem& a) const override;
  double dist(const Elem& a, const Elem& b) const override;
  ElemKey key(const Elem& a) const override;
  int algebra_dim() const override { return 3; }
  Elem exp(const Eigen::VectorXd& v) const override;
  std::optional<Eigen::VectorXd> log(const Elem& a) const override;
  static Eigen::Matrix3d matrix(const Elem& a);
  static Elem from_matrix(const Eigen::Matrix3d& m);
  static double angle(const Elem& a);
};

// Z/modulus with either the cyclic arc metric (scale * 2 pi min(k, N-k) / N)
// or the p-adic metric p^{-v(a-b)}.
class CyclicGroup final : public Group {
 public:
  enum class Metric { Arc, PAdic };
  CyclicGroup(long long modulus, Metric metric, double scale = 1.0, int prime = 2);
  std::string name() const override;
  Elem identity() const override { return Elem{0.0}; }
  Elem mul(const Elem& a, const Elem& b) const override;
  Elem inv(const Elem& a) const override;
  double dist(const Elem& a, const Elem& b) const override;
  std::optional<std::vector<Elem>> elements() const override;
  std::optional<long long> element_order(const Elem& a) const override;
  long long modulus() const { return n_; }
  long long rep(const Elem& a) const;         // in [0, N)
  long long signed_rep(const Elem& a) const;  // in (-N/2, N/2]

 private:
  long long n_;
  Metric metric_;
  double scale_;
  int prime_;
};

// Heisenberg group mod an odd prime in symmetric coordinates:
// (a,b,z)(a',b',z') = (a+a', b+b', z+z' + (ab' - a'b)/2). Inverse is negation.
// `abelian` drops the cocycle, giving Z_p^3 with the same coordinates.
class HeisenbergMod final : public Group {
 public:
  HeisenbergMod(int p, bool abelian, double scale);
  std::string name() const override;
  Elem identity() const override { return Elem{0.0, 0.0, 0.0}; }
  Elem mul(const Elem& a, const Elem& b) const override;
  Elem inv(const Elem& a) const override;
  // scale * Euclidean norm of the cyclic coordinates of a^-1 b.
  double dist(const Elem& a, const Elem& b) const override;
  std::optional<std::vector<Elem>> elements() const override;
  int modulus() const { return p_; }

 private:
  long long mod(long long v) const;
  int p_;
  bool abelian_;
  double scale_;
  long long half_;  // inverse of 2 mod p
};

// Isometry group wrapper: element coordinate 0 is the index; the metric is d_p.
class PermGroupView final : public Group {
 public:
  explicit PermGroupView(std::shared_ptr<const IsometryGroup> g);
  std::string name() const override { return "Iso"; }
  Elem identity() const override { return Elem{0.0}; }
  Elem mul(const Elem& a, const Elem& b) const override;
  Elem inv(const Elem& a) const override;
  double dist(const Elem& a, const Elem& b) const override;
  std::optional<std::vector<Elem>> elements() const override;
  std::optional<long long> element_order(const Elem& a) const override;
  std::string format(const Elem& a) const override;
  const IsometryGroup& group() const { return *g_; }
  static Elem of(int index) { return Elem{static_cast<double>(index)}; }
  static int index(const Elem& a) { return static_cast<int>(a[0]); }

 private:
  std::shared_ptr<const IsometryGroup> g_;
  std::vector<double> dp_;  // pairwise d_p
};

// All products of exactly n elements of `a` (n >= 1), de-duplicated.
// Throws ResourceError past `cap` elements.
std::vector<Elem> product_set(const Group& g, const std::vector<Elem>& a, int n,
                              size_t cap = 2'000'000);

double wrap_angle(double t);  // into (-pi, pi]

}  // namespace egh
