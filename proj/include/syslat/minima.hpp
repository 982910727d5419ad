#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "syslat/lattice.hpp"
#include "syslat/norms.hpp"

namespace syslat {

struct LatticePoint {
  Eigen::VectorXi coeffs;  // w.r.t. the input basis, first nonzero coeff > 0
  Eigen::VectorXd coords;
  NormValue norm;
};

struct EnumerationOptions {
  std::int64_t node_budget = 10'000'000;
  OptimizerOptions optimizer;
};

/// All nonzero lattice vectors with norm(v) <= radius, one per +-pair,
/// sorted by (norm value, lexicographic coefficients). Fincke-Pohst in the
/// covering Euclidean ball, then norm filtering.
std::vector<LatticePoint> enumerate_points(const Lattice& lattice,
                                           const NormSpec& norm, double radius,
                                           const EnumerationOptions& opts = {});

struct MinimaProfile {
  NormSpec norm = NormSpec::euclidean();
  std::vector<double> values;             // lambda_1 <= ... <= lambda_k
  std::vector<LatticePoint> vectors;      // attaining, linearly independent
  bool heuristic = false;
  std::vector<std::array<double, 2>> bounds;  // certified enclosures
};

/// Successive minima by greedy selection over points enumerated with a
/// doubling radius schedule. Ties broken by lexicographically smallest
/// integer coefficient vector.
MinimaProfile successive_minima(const Lattice& lattice, const NormSpec& norm,
                                int count, const EnumerationOptions& opts = {});

struct MinimaBasis {
  Lattice lattice;         // basis rows achieving the Cassels bound
  Eigen::MatrixXi coeffs;  // unimodular, rows w.r.t. the input basis
};

/// Basis of L extracted from a full minima profile, with
/// ||v_i|| <= max(1, i/2) * lambda_i.
MinimaBasis minima_basis(const MinimaProfile& profile, const Lattice& lattice);

struct TransferenceProduct {
  int index = 0;        // i, 1-based
  double product = 0.0; // lambda_i(L) * lambda_{b-i+1}(L*)
  LatticePoint primal;
  LatticePoint dual_vector;
  std::array<double, 2> bounds{0.0, 0.0};
  bool heuristic = false;
};

/// All b products lambda_i(L, norm) * lambda_{b-i+1}(L*, dual norm).
std::vector<TransferenceProduct> transference_products(
    const Lattice& lattice, const NormSpec& norm,
    const EnumerationOptions& opts = {});

}  // namespace syslat
