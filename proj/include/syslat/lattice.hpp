#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "syslat/errors.hpp"

namespace syslat {

inline constexpr double kRankTolerance = 1e-10;  // relative full-rank test
inline constexpr double kMaxCondition = 1e12;    // dual() refuses beyond this
inline constexpr double kDefaultLllDelta = 0.99;

/// Full-rank lattice in R^b, stored by basis rows. Gram data and covolume
/// are derived from the basis, never stored authoritatively.
class Lattice {
 public:
  explicit Lattice(Eigen::MatrixXd basis);

  int dim() const { return static_cast<int>(basis_.rows()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  double covolume() const { return covolume_; }
  Eigen::MatrixXd gram() const { return basis_ * basis_.transpose(); }
  double condition_number() const;

  /// Real coordinates of the lattice vector with integer coefficients x.
  Eigen::VectorXd vector(const Eigen::VectorXi& coeffs) const;

  Lattice scaled(double factor) const;
  Lattice rescaled_to_unit_covolume() const;

 private:
  Eigen::MatrixXd basis_;
  double covolume_ = 0.0;
};

/// Dual lattice: basis B* with B* B^T = I.
Lattice dual(const Lattice& lattice);

struct LllResult {
  Lattice lattice;
  Eigen::MatrixXi transform;  // unimodular U with reduced = U * original
};

LllResult lll_reduce_with_transform(const Lattice& lattice,
                                    double delta = kDefaultLllDelta);
Lattice lll_reduce(const Lattice& lattice, double delta = kDefaultLllDelta);

/// Seeded Gaussian basis rescaled to covolume 1; resampled while the
/// condition number exceeds 1e6. Deterministic for a fixed seed.
Lattice random_lattice(int dim, std::uint64_t seed);

}  // namespace syslat
