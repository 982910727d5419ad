#include "simplex.hpp"

#include <cmath>
#include <vector>

#include "syslat/errors.hpp"

namespace syslat::detail {

namespace {
constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
}  // namespace

LpResult simplex_maximize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& c, long max_pivots) {
  const int rows = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  if (b.minCoeff() < 0.0) {
    throw InternalError("simplex_maximize requires b >= 0");
  }
  // Free x split as u - w; slack basis is feasible at the origin.
  const int cols = 2 * m + rows;
  Eigen::MatrixXd t(rows + 1, cols + 1);
  t.setZero();
  t.block(0, 0, rows, m) = a;
  t.block(0, m, rows, m) = -a;
  t.block(0, 2 * m, rows, rows) = Eigen::MatrixXd::Identity(rows, rows);
  t.block(0, cols, rows, 1) = b;
  t.block(rows, 0, 1, m) = c.transpose();
  t.block(rows, m, 1, m) = -c.transpose();

  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = 2 * m + i;

  const long bland_after = 3L * (rows + cols);
  for (long pivot = 0; pivot < max_pivots; ++pivot) {
    const bool bland = pivot >= bland_after;
    int enter = -1;
    double best_cost = kCostTol;
    for (int j = 0; j < cols; ++j) {
      const double d = t(rows, j);
      if (d > best_cost) {
        enter = j;
        if (bland) break;
        best_cost = d;
      }
    }
    if (enter < 0) {
      // Optimal: recover x = u - w from the basic solution.
      Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
      for (int i = 0; i < rows; ++i) {
        if (basis[i] < m) {
          x(basis[i]) += t(i, cols);
        } else if (basis[i] < 2 * m) {
          x(basis[i] - m) -= t(i, cols);
        }
      }
      return LpResult{-t(rows, cols), std::move(x), true};
    }

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      const double aij = t(i, enter);
      if (aij > kPivotTol) {
        const double ratio = t(i, cols) / aij;
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (ratio < best_ratio + 1e-15 && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) {
      return LpResult{0.0, Eigen::VectorXd::Zero(m), false};  // unbounded
    }

    t.row(leave) /= t(leave, enter);
    for (int i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[leave] = enter;
  }
  throw InternalError("simplex_maximize exceeded the pivot cap");
}

}  // namespace syslat::detail
