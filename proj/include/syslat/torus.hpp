#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>

#include "syslat/lattice.hpp"
#include "syslat/minima.hpp"

namespace syslat {

/// Flat torus R^n / L.
struct FlatTorus {
  explicit FlatTorus(Lattice base)
      : lattice(std::move(base)), volume(lattice.covolume()) {}

  Lattice lattice;
  double volume;

  int dim() const { return lattice.dim(); }
};

struct SystoleReport {
  int p = 0;
  double value = 0.0;
  Eigen::VectorXi witness_coeffs;  // integral class w.r.t. wedge basis of L
  Eigen::VectorXd witness_coords;  // same class in Lambda^p R^n coordinates
  bool heuristic = false;
  std::optional<std::array<double, 2>> bounds;
  std::string notes;
};

/// Stable systole stsys_p: lambda_1 of Lambda^p L_0 under the mass norm on
/// the covolume-1 rescaling L_0, transported by stsys_p(cL) = c^p stsys_p(L).
SystoleReport stable_systole(const FlatTorus& torus, int p,
                             const EnumerationOptions& opts = {});

/// sys_{n-1} computed through the dual lattice: volume * lambda_1(L*).
/// Independent of the stable_systole(.., n-1) code path.
SystoleReport codim1_systole(const FlatTorus& torus,
                             const EnumerationOptions& opts = {});

/// Successive minima of Lambda^p L under |.|_{L2} (harmonic representatives
/// are the constant-coefficient forms on a flat torus).
MinimaProfile l2_homology_minima(const FlatTorus& torus, int p, int count,
                                 const EnumerationOptions& opts = {});

/// Conformal systole conf_p, n = 2p: minimal ||.||_{L2} = mass/sqrt(volume)
/// over nonzero integral classes. Scale-invariant.
SystoleReport conformal_systole(const FlatTorus& torus, int p,
                                const EnumerationOptions& opts = {});

}  // namespace syslat
