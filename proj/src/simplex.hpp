#pragma once

#include <Eigen/Dense>

namespace syslat::detail {

struct LpResult {
  double value = 0.0;
  Eigen::VectorXd x;
  bool optimal = false;
};

/// Maximize c.x subject to A x <= b with x free. Requires b >= 0 so the
/// origin is feasible (all callers construct constraints with rhs 1). Dense
/// tableau simplex, Dantzig rule with a Bland fallback against cycling.
LpResult simplex_maximize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& c, long max_pivots = 50000);

}  // namespace syslat::detail
