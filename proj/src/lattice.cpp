#include "syslat/lattice.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <sstream>

namespace syslat {

namespace {

double row_norm_product(const Eigen::MatrixXd& basis) {
  double prod = 1.0;
  for (Eigen::Index i = 0; i < basis.rows(); ++i) prod *= basis.row(i).norm();
  return prod;
}

}  // namespace

Lattice::Lattice(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
  if (basis_.rows() == 0 || basis_.rows() != basis_.cols()) {
    std::ostringstream msg;
    msg << "lattice basis must be square and nonempty, got " << basis_.rows()
        << "x" << basis_.cols();
    throw InputError(msg.str());
  }
  const double det = basis_.determinant();
  covolume_ = std::abs(det);
  if (!(covolume_ > kRankTolerance * row_norm_product(basis_))) {
    std::ostringstream msg;
    msg << "lattice basis is rank-deficient: |det| = " << covolume_
        << " fails |det| > " << kRankTolerance << " * (product of row norms)";
    throw DegenerateLatticeError(msg.str());
  }
}

double Lattice::condition_number() const {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis_);
  const auto& sv = svd.singularValues();
  return sv(0) / sv(sv.size() - 1);
}

Eigen::VectorXd Lattice::vector(const Eigen::VectorXi& coeffs) const {
  return basis_.transpose() * coeffs.cast<double>();
}

Lattice Lattice::scaled(double factor) const {
  if (!(factor > 0.0)) throw InputError("lattice scale factor must be positive");
  return Lattice(factor * basis_);
}

Lattice Lattice::rescaled_to_unit_covolume() const {
  return scaled(std::pow(covolume_, -1.0 / dim()));
}

Lattice dual(const Lattice& lattice) {
  if (lattice.condition_number() > kMaxCondition) {
    throw DegenerateLatticeError(
        "cannot form dual: basis condition number exceeds 1e12");
  }
  // Rows of B^{-T} pair integrally with the rows of B: B* B^T = I.
  Eigen::MatrixXd dual_basis =
      lattice.basis().inverse().transpose();
  return Lattice(std::move(dual_basis));
}

LllResult lll_reduce_with_transform(const Lattice& lattice, double delta) {
  if (!(delta > 0.25 && delta < 1.0)) {
    throw InputError("LLL delta must lie in (1/4, 1)");
  }
  const int n = lattice.dim();
  Eigen::MatrixXd b = lattice.basis();
  Eigen::MatrixXi transform = Eigen::MatrixXi::Identity(n, n);

  Eigen::MatrixXd ortho(n, n);  // Gram-Schmidt vectors, rows
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, n);
  auto recompute = [&]() {
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd v = b.row(i);
      for (int j = 0; j < i; ++j) {
        mu(i, j) = b.row(i).dot(ortho.row(j)) / ortho.row(j).squaredNorm();
        v -= mu(i, j) * ortho.row(j).transpose();
      }
      ortho.row(i) = v;
    }
  };
  recompute();

  const long long cap = 200000LL + 4000LL * n * n;
  long long iters = 0;
  int k = 1;
  while (k < n) {
    if (++iters > cap) {
      throw ReductionFailureError("LLL failed to converge within iteration cap");
    }
    for (int j = k - 1; j >= 0; --j) {
      const double rounded = std::round(mu(k, j));
      if (std::abs(rounded) > 0.5) {
        const long long q = static_cast<long long>(rounded);
        b.row(k) -= static_cast<double>(q) * b.row(j);
        transform.row(k) -= static_cast<int>(q) * transform.row(j);
        recompute();
      }
    }
    const double lhs = ortho.row(k).squaredNorm();
    const double rhs =
        (delta - mu(k, k - 1) * mu(k, k - 1)) * ortho.row(k - 1).squaredNorm();
    if (lhs >= rhs) {
      ++k;
    } else {
      b.row(k).swap(b.row(k - 1));
      transform.row(k).swap(transform.row(k - 1));
      recompute();
      k = std::max(k - 1, 1);
    }
  }
  return LllResult{Lattice(std::move(b)), std::move(transform)};
}

Lattice lll_reduce(const Lattice& lattice, double delta) {
  return lll_reduce_with_transform(lattice, delta).lattice;
}

Lattice random_lattice(int dim, std::uint64_t seed) {
  if (dim < 1) throw InputError("random_lattice requires dim >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 256; ++attempt) {
    Eigen::MatrixXd basis(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) basis(i, j) = gauss(rng);
    const double det = std::abs(basis.determinant());
    if (det < 1e-12) continue;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis);
    const auto& sv = svd.singularValues();
    if (sv(0) / sv(dim - 1) > 1e6) continue;
    basis *= std::pow(det, -1.0 / dim);
    return Lattice(std::move(basis));
  }
  throw InternalError("random_lattice: rejection sampling did not terminate");
}

}  // namespace syslat
