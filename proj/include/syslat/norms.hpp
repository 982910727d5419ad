#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "syslat/exterior.hpp"

namespace syslat {

struct OptimizerOptions {
  int starts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-10;   // frame-update convergence threshold
  int max_iter = 10000; // per start
  double step = 0.1;    // initial ascent step, backtracked as needed
};

struct ComassResult {
  double value = 0.0;
  Eigen::MatrixXd frame;  // n x p, orthonormal columns attaining value
  bool heuristic = false; // no closed form; value is a certified lower bound
};

struct MassResult {
  double value = 0.0;
  double lower = 0.0;  // certified lower bound
  double upper = 0.0;  // certified upper bound
  bool heuristic = false;
};

/// Comass: max over orthonormal p-frames of <w, v1 ^ ... ^ vp>. Closed forms
/// for p in {1, 2, n-2, n-1, n}; multi-start projected ascent otherwise.
ComassResult comass(const PVector& w, const OptimizerOptions& opts = {});

/// Mass: dual norm of comass. Closed forms where comass has them; cutting
/// plane iteration otherwise.
MassResult mass(const PVector& v, const OptimizerOptions& opts = {});

/// Optimization paths kept callable on their own so closed forms can be
/// cross-checked against them.
ComassResult comass_by_ascent(const PVector& w, const OptimizerOptions& opts = {});
MassResult mass_by_cutting_plane(const PVector& v, const OptimizerOptions& opts = {});

/// Canonical coefficients theta_1 >= theta_2 >= ... >= 0 of a 2-vector
/// (spectral decomposition of the associated skew matrix). Mass is their sum,
/// comass the largest, Euclidean norm the l2 norm of the list.
std::vector<double> two_vector_canonical_coefficients(const PVector& w);

/// <w, frame columns wedged together>.
double frame_pairing(const PVector& w, const Eigen::MatrixXd& frame);

struct NormValue {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool exact = true;
};

/// A norm on an ambient coordinate space: Euclidean, or mass/comass on
/// Lambda^p R^n read from wedge coordinates, optionally rescaled (the L2
/// homology norms of a flat torus are scaled instances).
class NormSpec {
 public:
  enum class Kind { Euclidean, Mass, Comass };

  static NormSpec euclidean();
  static NormSpec mass_norm(int ambient_dim, int degree);
  static NormSpec comass_norm(int ambient_dim, int degree);
  /// |. |_{L2} on H_p of a flat torus: Euclidean wedge norm / sqrt(volume).
  static NormSpec l2_homology(int ambient_dim, int degree, double volume);
  /// ||.||_{L2} on H_p of a flat torus: mass / sqrt(volume).
  static NormSpec l2_dual(int ambient_dim, int degree, double volume);

  Kind kind() const { return kind_; }
  int ambient_dim() const { return ambient_dim_; }
  int degree() const { return degree_; }
  double scale() const { return scale_; }
  const std::string& name() const { return name_; }

  /// True when evaluation uses an exact closed form for every input.
  bool exact() const;

  NormValue evaluate(const Eigen::VectorXd& coords,
                     const OptimizerOptions& opts = {}) const;

  /// c with Euclid(v) <= c * norm(v): a Euclidean ball of radius c*r contains
  /// the norm ball of radius r, certifying enumeration completeness.
  double euclidean_radius_factor() const;

  /// Dual norm under the standard pairing (Euclidean <-> Euclidean,
  /// mass <-> comass, scale inverted).
  NormSpec dual_norm() const;

  /// Grammar: "euclidean" | "mass:P" | "comass:P".
  static NormSpec parse(const std::string& text, int ambient_dim);

 private:
  NormSpec(Kind kind, int n, int p, double scale, std::string name);

  Kind kind_ = Kind::Euclidean;
  int ambient_dim_ = 0;
  int degree_ = 0;
  double scale_ = 1.0;
  std::string name_;
};

}  // namespace syslat
