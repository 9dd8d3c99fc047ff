#pragma once

#include <Eigen/Dense>

namespace egh {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

// min c.x subject to A x = b, x >= 0. Dense two-phase simplex with Bland's
// rule; meant for the small programs in this library (tens of rows).
LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  double tol = 1e-10);

}  // namespace egh
