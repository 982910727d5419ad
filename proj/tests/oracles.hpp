#pragma once

// Test-only oracles, deliberately independent of the library's enumeration
// and optimization paths. Expected values asserted in the test files were
// computed with these.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "syslat/lattice.hpp"

namespace syslat::testing {

// Successive minima by exhaustive search over the coefficient box
// [-box, box]^b with a norm callback; greedy independent selection.
inline std::vector<double> brute_force_minima(
    const Lattice& lattice, int count,
    const std::function<double(const Eigen::VectorXd&)>& norm, int box = 10) {
  const int b = lattice.dim();
  std::vector<std::pair<double, Eigen::VectorXd>> points;
  Eigen::VectorXi x = Eigen::VectorXi::Constant(b, -box);
  while (true) {
    if (!x.isZero()) {
      const Eigen::VectorXd v = lattice.basis().transpose() * x.cast<double>();
      points.emplace_back(norm(v), v);
    }
    int i = 0;
    while (i < b && x(i) == box) x(i++) = -box;
    if (i == b) break;
    ++x(i);
  }
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& c) { return a.first < c.first; });

  std::vector<double> values;
  std::vector<Eigen::VectorXd> chosen;
  for (const auto& [value, v] : points) {
    Eigen::VectorXd residual = v;
    for (const auto& u : chosen) {
      residual -= residual.dot(u) / u.squaredNorm() * u;
    }
    if (residual.norm() <= 1e-9 * v.norm()) continue;
    chosen.push_back(v);
    values.push_back(value);
    if (static_cast<int>(values.size()) == count) break;
  }
  return values;
}

inline std::vector<double> brute_force_euclidean_minima(const Lattice& lattice,
                                                        int count, int box = 10) {
  return brute_force_minima(
      lattice, count, [](const Eigen::VectorXd& v) { return v.norm(); }, box);
}

// lambda_1(L) lambda_1(L*) for the 2-d lattice of shape tau = x + iy,
// normalized to covolume 1, by direct search over small coefficients.
inline double shape_objective_2d(double x, double y) {
  Eigen::MatrixXd basis(2, 2);
  basis << 1, 0, x, y;
  basis /= std::sqrt(y);
  const Lattice lattice(basis);
  const double l1 = brute_force_euclidean_minima(lattice, 1, 4)[0];
  const double l1_dual = brute_force_euclidean_minima(dual(lattice), 1, 4)[0];
  return l1 * l1_dual;
}

// Grid maximum of lambda_1 lambda_1* over the fundamental domain of the
// modular surface (|tau| >= 1, 0 <= Re tau <= 1/2). The optimum sits at
// tau = exp(i pi/3), the hexagonal shape.
inline double grid_gamma_prime_2(int resolution = 160) {
  double best = 0.0;
  for (int i = 0; i <= resolution; ++i) {
    const double x = 0.5 * i / resolution;
    const double y_min = std::sqrt(std::max(1e-9, 1.0 - x * x));
    for (int j = 0; j <= resolution; ++j) {
      const double y = y_min + (2.0 - y_min) * j / resolution;
      best = std::max(best, shape_objective_2d(x, y));
    }
  }
  return best;
}

inline Lattice hexagonal_unit_covolume() {
  Eigen::MatrixXd basis(2, 2);
  basis << 1, 0, 0.5, std::sqrt(3.0) / 2.0;
  basis *= std::pow(std::sqrt(3.0) / 2.0, -0.5);
  return Lattice(basis);
}

inline Lattice d4_lattice() {
  Eigen::MatrixXd basis(4, 4);
  basis << 1, -1, 0, 0,
           0, 1, -1, 0,
           0, 0, 1, -1,
           0, 0, 1, 1;
  return Lattice(basis);
}

}  // namespace syslat::testing
