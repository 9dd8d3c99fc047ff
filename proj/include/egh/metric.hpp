#pragma once

#include <string>
#include <vector>

namespace egh {

inline constexpr double kMetricTol = 1e-9;

using Subset = std::vector<int>;  // sorted point indices

// Finite pointed metric space stored as a dense row-major matrix.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  // Throws StructuralError if rows are ragged or the basepoint is out of range.
  FiniteMetricSpace(const std::vector<std::vector<double>>& rows, int basepoint,
                    std::vector<std::string> labels = {});
  FiniteMetricSpace(int n, std::vector<double> flat, int basepoint,
                    std::vector<std::string> labels = {});

  int size() const { return n_; }
  int basepoint() const { return basepoint_; }
  double d(int i, int j) const { return dist_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<double>& flat() const { return dist_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int i) const;
  int index_of(const std::string& label) const;  // -1 if absent

  FiniteMetricSpace with_basepoint(int p) const;
  double diameter() const;
  // Sorted distinct values of d(basepoint, x).
  std::vector<double> radii_from_basepoint() const;

 private:
  int n_ = 0;
  std::vector<double> dist_;
  int basepoint_ = 0;
  std::vector<std::string> labels_;
};

struct MetricViolation {
  enum class Kind { Diagonal, Symmetry, Positivity, Triangle };
  Kind kind;
  int i, j, k;   // k = -1 unless Triangle (path i -> j -> k, compared with d(i,k))
  double slack;  // amount by which the axiom fails
};

std::vector<MetricViolation> validate_metric(const FiniteMetricSpace& m,
                                             double tol = kMetricTol);
std::string describe(const MetricViolation& v);

Subset ball(const FiniteMetricSpace& m, int center, double r, bool closed);

// Distance from point x to a non-empty subset.
double point_set_distance(const FiniteMetricSpace& m, int x, const Subset& s);
double hausdorff_distance(const FiniteMetricSpace& m, const Subset& a, const Subset& b);

// Nested family of subsets sampled at increasing parameters.
struct MonotoneClosedFamily {
  std::vector<double> parameters;
  std::vector<Subset> sets;
  bool is_nested() const;
};

int count_discontinuities(const MonotoneClosedFamily& f, const FiniteMetricSpace& m,
                          double gap);

// Largest number of non-empty subsets pairwise more than `gap` apart in the
// Hausdorff distance. Brute force; only for spaces with at most 4 points.
int separated_packing_number(const FiniteMetricSpace& m, double gap);

// All non-empty subsets of {0..n-1}, ordered by bitmask.
std::vector<Subset> all_nonempty_subsets(int n);

}  // namespace egh
