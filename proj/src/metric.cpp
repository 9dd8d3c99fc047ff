#include "egh/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "egh/errors.hpp"

namespace egh {

FiniteMetricSpace::FiniteMetricSpace(const std::vector<std::vector<double>>& rows,
                                     int basepoint, std::vector<std::string> labels)
    : n_(static_cast<int>(rows.size())), basepoint_(basepoint), labels_(std::move(labels)) {
  dist_.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw StructuralError("distance matrix is not square");
    dist_.insert(dist_.end(), row.begin(), row.end());
  }
  if (n_ == 0) throw StructuralError("metric space must have at least one point");
  if (basepoint_ < 0 || basepoint_ >= n_) throw StructuralError("basepoint out of range");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
    throw StructuralError("label count does not match point count");
}

FiniteMetricSpace::FiniteMetricSpace(int n, std::vector<double> flat, int basepoint,
                                     std::vector<std::string> labels)
    : n_(n), dist_(std::move(flat)), basepoint_(basepoint), labels_(std::move(labels)) {
  if (n_ <= 0) throw StructuralError("metric space must have at least one point");
  if (dist_.size() != static_cast<size_t>(n_) * n_)
    throw StructuralError("distance matrix is not square");
  if (basepoint_ < 0 || basepoint_ >= n_) throw StructuralError("basepoint out of range");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
    throw StructuralError("label count does not match point count");
}

std::string FiniteMetricSpace::label(int i) const {
  if (!labels_.empty()) return labels_[i];
  return std::to_string(i);
}

int FiniteMetricSpace::index_of(const std::string& label) const {
  for (int i = 0; i < n_; ++i)
    if (this->label(i) == label) return i;
  return -1;
}

FiniteMetricSpace FiniteMetricSpace::with_basepoint(int p) const {
  return FiniteMetricSpace(n_, dist_, p, labels_);
}

double FiniteMetricSpace::diameter() const {
  double best = 0.0;
  for (double v : dist_) best = std::max(best, v);
  return best;
}

std::vector<double> FiniteMetricSpace::radii_from_basepoint() const {
  std::vector<double> r;
  r.reserve(n_);
  for (int x = 0; x < n_; ++x) r.push_back(d(basepoint_, x));
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::vector<MetricViolation> validate_metric(const FiniteMetricSpace& m, double tol) {
  std::vector<MetricViolation> out;
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    if (std::abs(m.d(i, i)) > tol)
      out.push_back({MetricViolation::Kind::Diagonal, i, i, -1, std::abs(m.d(i, i))});
    for (int j = i + 1; j < n; ++j) {
      double asym = std::abs(m.d(i, j) - m.d(j, i));
      if (asym > tol) out.push_back({MetricViolation::Kind::Symmetry, i, j, -1, asym});
      if (m.d(i, j) <= tol || m.d(j, i) <= tol)
        out.push_back({MetricViolation::Kind::Positivity, i, j, -1,
                       std::min(m.d(i, j), m.d(j, i))});
    }
  }
  // Unordered endpoint pairs only, so each failing triangle is reported once.
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        double slack = m.d(i, k) - m.d(i, j) - m.d(j, k);
        if (slack > tol) out.push_back({MetricViolation::Kind::Triangle, i, j, k, slack});
      }
  return out;
}

std::string describe(const MetricViolation& v) {
  std::ostringstream os;
  switch (v.kind) {
    case MetricViolation::Kind::Diagonal:
      os << "d(" << v.i << "," << v.i << ") != 0";
      break;
    case MetricViolation::Kind::Symmetry:
      os << "d(" << v.i << "," << v.j << ") != d(" << v.j << "," << v.i << ")";
      break;
    case MetricViolation::Kind::Positivity:
      os << "d(" << v.i << "," << v.j << ") not positive";
      break;
    case MetricViolation::Kind::Triangle:
      os << "triangle " << v.i << "-" << v.j << "-" << v.k;
      break;
  }
  os << " (slack " << v.slack << ")";
  return os.str();
}

Subset ball(const FiniteMetricSpace& m, int center, double r, bool closed) {
  Subset out;
  for (int y = 0; y < m.size(); ++y) {
    double d = m.d(center, y);
    if (closed ? d <= r : d < r) out.push_back(y);
  }
  return out;
}

double point_set_distance(const FiniteMetricSpace& m, int x, const Subset& s) {
  double best = std::numeric_limits<double>::infinity();
  for (int y : s) best = std::min(best, m.d(x, y));
  return best;
}

double hausdorff_distance(const FiniteMetricSpace& m, const Subset& a, const Subset& b) {
  if (a.empty() || b.empty()) throw DomainError("hausdorff_distance needs non-empty subsets");
  double h = 0.0;
  for (int x : a) h = std::max(h, point_set_distance(m, x, b));
  for (int y : b) h = std::max(h, point_set_distance(m, y, a));
  return h;
}

bool MonotoneClosedFamily::is_nested() const {
  if (parameters.size() != sets.size()) return false;
  for (size_t j = 0; j + 1 < sets.size(); ++j) {
    if (!(parameters[j] < parameters[j + 1])) return false;
    if (!std::includes(sets[j + 1].begin(), sets[j + 1].end(), sets[j].begin(), sets[j].end()))
      return false;
  }
  return true;
}

int count_discontinuities(const MonotoneClosedFamily& f, const FiniteMetricSpace& m,
                          double gap) {
  if (!(gap > 0)) throw DomainError("gap must be positive");
  int jumps = 0;
  for (size_t j = 0; j + 1 < f.sets.size(); ++j) {
    if (f.sets[j].empty() || f.sets[j + 1].empty()) {
      // An empty set sits at infinite Hausdorff distance from a non-empty one.
      if (f.sets[j].empty() != f.sets[j + 1].empty()) ++jumps;
      continue;
    }
    if (hausdorff_distance(m, f.sets[j], f.sets[j + 1]) > gap) ++jumps;
  }
  return jumps;
}

std::vector<Subset> all_nonempty_subsets(int n) {
  std::vector<Subset> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Subset s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

int separated_packing_number(const FiniteMetricSpace& m, double gap) {
  if (m.size() > 4) throw ResourceError("packing number is brute force; at most 4 points");
  auto subsets = all_nonempty_subsets(m.size());
  const int k = static_cast<int>(subsets.size());
  std::vector<unsigned> compatible(k, 0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b && hausdorff_distance(m, subsets[a], subsets[b]) > gap)
        compatible[a] |= 1u << b;
  int best = 1;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    int count = __builtin_popcount(mask);
    if (count <= best) continue;
    bool ok = true;
    for (int a = 0; a < k && ok; ++a)
      if (mask & (1u << a)) ok = ((mask & ~(1u << a)) & ~compatible[a]) == 0;
    if (ok) best = count;
  }
  return best;
}

}  // namespace egh
