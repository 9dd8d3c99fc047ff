#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace egh {

// Boundary of the n-dimensional cross-polytope, each facet cut into the Kuhn
// subdivision of side k = 2^s. Vertices are integer vectors a with
// sum |a_j| = k; the flat point is a / k and the sphere point a / |a|.
struct SymmetricTriangulation {
  int n = 0;             // ambient dimension; the sphere is S^{n-1}
  int subdivisions = 0;  // s
  int k = 1;             // 2^s
  std::vector<Eigen::VectorXi> keys;
  std::vector<Eigen::VectorXd> vertices;  // unit vectors
  std::vector<Eigen::VectorXd> flat;      // points on the cross-polytope
  std::vector<std::vector<int>> simplices;  // n vertex indices each
  std::vector<int> antipode;
  double mesh = 0.0;       // max chordal simplex diameter on the sphere
  double flat_mesh = 0.0;  // same before radial projection
  std::map<std::vector<int>, int> index;  // key -> vertex

  int sphere_dim() const { return n - 1; }
  int vertex_of(const Eigen::VectorXi& key) const;  // -1 if absent
};

SymmetricTriangulation build_triangulation(int n, int subdivisions);

struct TriangulationAudit {
  bool antipodal = true;        // antipode(v) = -v and simplices closed under it
  bool closed_surface = true;   // every (n-2)-face lies in exactly two simplices
  bool within_mesh = true;      // every simplex diameter <= mesh
};
TriangulationAudit audit(const SymmetricTriangulation& t);

struct OddMapSample {
  std::shared_ptr<const SymmetricTriangulation> tri;
  std::vector<Eigen::VectorXd> values;  // one per vertex, in R^k

  int target_dim() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }
  // Throws DomainError naming the first vertex where values[-v] != -values[v].
  void require_odd() const;
  // Piecewise-affine extension at a point of the cross-polytope (flat coordinates).
  Eigen::VectorXd extend(const Eigen::VectorXd& flat_point) const;
};

// f is evaluated on one vertex of each antipodal pair and negated on the other.
OddMapSample sample_map(std::shared_ptr<const SymmetricTriangulation> tri,
                        const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f);
// Uniform values in [-1,1]^k on one vertex of each antipodal pair.
OddMapSample random_odd_sample(std::shared_ptr<const SymmetricTriangulation> tri, int k,
                               std::uint64_t seed);
// Same values at the old vertices, extension values at the new ones.
OddMapSample refine_sample(const OddMapSample& s);

struct ContinuityModulus {
  double eps_est = 0.0;    // max value difference along simplex edges
  double delta_est = 0.0;  // min chordal edge length
};
ContinuityModulus continuity_modulus(const OddMapSample& s);

struct ZeroWitness {
  int simplex = -1;
  Eigen::VectorXd barycentric;
  Eigen::VectorXd x0;        // sphere point
  Eigen::VectorXd value;     // extension value at x0
  int vertex = -1;           // nearest vertex of the simplex
  Eigen::VectorXd vertex_value;
  double value_norm() const { return value.norm(); }
  double vertex_value_norm() const { return vertex_value.norm(); }
};

// Scan of every simplex for a zero of the extension; the smallest residual
// wins, ties by simplex index. Throws DomainError when n - 1 < k.
ZeroWitness find_near_zero(const OddMapSample& s, bool parallel = true);

// Simplices (one per antipodal pair) whose interior carries a zero, for k = n - 1.
struct ZeroCount {
  int pairs = 0;
  bool generic = true;  // no zero on a shared face
};
ZeroCount count_zero_simplices(const OddMapSample& s);

struct SmallImageVerdict {
  double min_vertex_norm = 0.0;
  double eps_est = 0.0;
  bool witness_found = false;
  bool contradiction = false;
};
SmallImageVerdict certify_no_small_image(const OddMapSample& s, double rho);
// Threshold rule: every vertex value above rho, a zero found, and 2 eps < rho.
bool small_image_contradiction(double min_vertex_norm, double eps_est, bool witness_found, double rho);

}  // namespace egh
