#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "syslat/lattice.hpp"

namespace syslat {

std::int64_t binomial(int n, int k);

/// All p-element subsets of {0,...,n-1} in lexicographic order. The returned
/// reference stays valid for the lifetime of the program.
const std::vector<std::vector<int>>& wedge_index_table(int n, int p);

/// Position of a sorted subset in the lexicographic order of wedge_index_table.
int wedge_index_rank(int n, const std::vector<int>& subset);

/// Element of Lambda^p R^n in lexicographic wedge-basis coordinates
/// e_{i1} ^ ... ^ e_{ip}, i1 < ... < ip.
struct PVector {
  int ambient_dim = 0;  // n
  int degree = 0;       // p
  Eigen::VectorXd coords;

  static PVector zero(int n, int p);
  static PVector basis_element(int n, const std::vector<int>& subset);
  static PVector from_coords(int n, int p, Eigen::VectorXd coords);

  double euclidean_norm() const { return coords.norm(); }
};

/// Graded-anticommutative wedge product: wedge(a,b) = (-1)^{pq} wedge(b,a).
PVector wedge(const PVector& a, const PVector& b);

/// Hodge star for the standard metric and orientation of R^n.
PVector hodge_star(const PVector& a);

/// Euclidean pairing of two p-vectors in wedge coordinates.
double inner(const PVector& a, const PVector& b);

/// Simple p-vector spanned by the p columns of `frame` (n x p).
PVector wedge_of_columns(const Eigen::MatrixXd& frame);

/// Lattice Lambda^p L in R^{C(n,p)}: wedges of p distinct basis vectors in
/// lexicographic order. Realizes the integral p-homology of the torus R^n/L.
Lattice exterior_power_lattice(const Lattice& lattice, int p);

}  // namespace syslat
