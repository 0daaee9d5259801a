#pragma once

#include <Eigen/Dense>

namespace scc::detail {

struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  Eigen::VectorXd x;
  double value = 0.0;
};

/// Dense two-phase simplex with Bland's rule for
///   minimize c.x  subject to  A x = b,  x >= 0.
/// Intended for the tiny systems that arise from configurations of a
/// handful of bodies.
LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c);

}  // namespace scc::detail
