#include "egh/lp.hpp"

#include <cmath>
#include <vector>

#include "egh/errors.hpp"

namespace egh {

namespace {

// Tableau rows 0..m-1 are constraints, row m is the reduced-cost row; the last
// column holds the right-hand side. Columns >= `usable` never enter.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;
  int m, cols;

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i <= m; ++i)
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    basis[r] = c;
  }

  // Returns false when unbounded.
  bool run(int usable, double tol) {
    for (int iter = 0; iter < 100000; ++iter) {
      int enter = -1;
      for (int c = 0; c < usable; ++c)
        if (t(m, c) < -tol) {
          enter = c;  // Bland: lowest index
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      double best = 0;
      for (int r = 0; r < m; ++r) {
        if (t(r, enter) <= tol) continue;
        double ratio = t(r, cols) / t(r, enter);
        if (leave < 0 || ratio < best - tol ||
            (std::abs(ratio - best) <= tol && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw ResourceError("simplex iteration limit reached");
  }
};

}  // namespace

LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  double tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (c.size() != n || b.size() != m) throw StructuralError("LP dimension mismatch");

  Tableau T;
  T.m = m;
  T.cols = n + m;
  T.t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  T.basis.resize(m);
  for (int r = 0; r < m; ++r) {
    double s = b(r) < 0 ? -1.0 : 1.0;
    T.t.row(r).head(n) = s * A.row(r);
    T.t(r, n + r) = 1.0;
    T.t(r, n + m) = s * b(r);
    T.basis[r] = n + r;
  }
  // Phase 1: minimize the sum of artificials.
  for (int r = 0; r < m; ++r) T.t.row(m) -= T.t.row(r);
  for (int r = 0; r < m; ++r) T.t(m, n + r) = 0.0;
  T.run(n + m, tol);

  LpResult res;
  double scale = 1.0 + b.cwiseAbs().sum();
  if (-T.t(m, n + m) > 1e-9 * scale) {
    res.status = LpResult::Status::Infeasible;
    return res;
  }
  // Drive remaining artificials out of the basis where possible.
  for (int r = 0; r < m; ++r) {
    if (T.basis[r] < n) continue;
    for (int col = 0; col < n; ++col)
      if (std::abs(T.t(r, col)) > 1e-9) {
        T.pivot(r, col);
        break;
      }
  }

  // Phase 2 on the original objective; artificial columns are frozen.
  T.t.row(m).setZero();
  T.t.row(m).head(n) = c.transpose();
  for (int r = 0; r < m; ++r) {
    int bc = T.basis[r];
    if (bc < n && T.t(m, bc) != 0.0) T.t.row(m) -= T.t(m, bc) * T.t.row(r);
  }
  if (!T.run(n, tol)) {
    res.status = LpResult::Status::Unbounded;
    return res;
  }
  res.status = LpResult::Status::Optimal;
  res.x = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r)
    if (T.basis[r] < n) res.x(T.basis[r]) = T.t(r, n + m);
  res.objective = c.dot(res.x);
  return res;
}

}  // namespace egh
