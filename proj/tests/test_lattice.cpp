#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "oracles.hpp"
#include "syslat/lattice.hpp"

using namespace syslat;

namespace {

Eigen::MatrixXd identity(int n) { return Eigen::MatrixXd::Identity(n, n); }

bool is_unimodular_change(const Lattice& a, const Lattice& b) {
  // Every row of b expands over a with integer coefficients and |det| = 1.
  const Eigen::MatrixXd coeffs =
      a.basis().transpose().partialPivLu().solve(b.basis().transpose()).transpose();
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (std::abs(coeffs(i, j) - std::round(coeffs(i, j))) > 1e-6) return false;
    }
  }
  return std::abs(std::abs(coeffs.determinant()) - 1.0) < 1e-6;
}

}  // namespace

TEST_CASE("covolume basics") {
  CHECK(Lattice(identity(4)).covolume() == doctest::Approx(1.0));

  Eigen::MatrixXd hex(2, 2);
  hex << 1, 0, 0.5, std::sqrt(3.0) / 2.0;
  CHECK(Lattice(hex).covolume() ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));

  const Lattice base = random_lattice(3, 11);
  const Lattice scaled = base.scaled(2.5);
  CHECK(scaled.covolume() ==
        doctest::Approx(std::pow(2.5, 3) * base.covolume()).epsilon(1e-9));
}

TEST_CASE("constructor rejects degenerate bases") {
  Eigen::MatrixXd rank_deficient(2, 2);
  rank_deficient << 1, 2, 2, 4;
  CHECK_THROWS_AS(Lattice(rank_deficient), DegenerateLatticeError);
  CHECK_THROWS_AS(Lattice(Eigen::MatrixXd::Zero(3, 3)), DegenerateLatticeError);
}

TEST_CASE("dual lattice") {
  SUBCASE("Z^b is self-dual") {
    const Lattice z4(identity(4));
    CHECK((dual(z4).basis() - identity(4)).norm() < 1e-12);
  }

  SUBCASE("diagonal case forced by B* B^T = I") {
    Eigen::MatrixXd diag(2, 2);
    diag << 2, 0, 0, 0.5;
    const Lattice d = dual(Lattice(diag));
    CHECK(d.basis()(0, 0) == doctest::Approx(0.5));
    CHECK(d.basis()(1, 1) == doctest::Approx(2.0));
  }

  SUBCASE("defining identity and covolume reciprocity") {
    for (int seed = 0; seed < 8; ++seed) {
      const Lattice lattice = random_lattice(4, 100 + seed);
      const Lattice d = dual(lattice);
      CHECK((d.basis() * lattice.basis().transpose() - identity(4))
                .cwiseAbs()
                .maxCoeff() < 1e-9);
      CHECK(lattice.covolume() * d.covolume() == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  SUBCASE("involution up to unimodular change") {
    const Lattice lattice = random_lattice(5, 42);
    const Lattice twice = dual(dual(lattice));
    CHECK(is_unimodular_change(lattice, twice));
    CHECK(twice.covolume() == doctest::Approx(lattice.covolume()).epsilon(1e-9));
  }

  SUBCASE("near-singular basis is refused") {
    Eigen::MatrixXd bad(2, 2);
    bad << 1e13, 0, 0, 1;
    CHECK_THROWS_AS(dual(Lattice(bad)), DegenerateLatticeError);
  }
}

TEST_CASE("LLL reduction") {
  SUBCASE("Z^b stays Z^b") {
    const Lattice reduced = lll_reduce(Lattice(identity(3)));
    CHECK(reduced.covolume() == doctest::Approx(1.0));
    for (int i = 0; i < 3; ++i) {
      CHECK(reduced.basis().row(i).norm() == doctest::Approx(1.0));
    }
  }

  SUBCASE("skewed basis gets a unit shortest vector") {
    Eigen::MatrixXd skew(2, 2);
    skew << 1, 0, 1000, 1;
    const Lattice reduced = lll_reduce(Lattice(skew));
    double shortest = reduced.basis().rowwise().norm().minCoeff();
    CHECK(shortest == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(is_unimodular_change(Lattice(skew), reduced));
  }

  SUBCASE("random bases: same lattice, same covolume") {
    for (int seed = 0; seed < 6; ++seed) {
      Eigen::MatrixXd basis(5, 5);
      std::mt19937_64 rng(900 + seed);
      std::normal_distribution<double> gauss;
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) basis(i, j) = 3.0 * gauss(rng);
      const Lattice lattice(basis);
      const Lattice reduced = lll_reduce(lattice);
      CHECK(reduced.covolume() == doctest::Approx(lattice.covolume()).epsilon(1e-9));
      CHECK(is_unimodular_change(lattice, reduced));
    }
  }

  SUBCASE("transform tracks the reduction") {
    const Lattice lattice = random_lattice(4, 77);
    const LllResult result = lll_reduce_with_transform(lattice);
    const Eigen::MatrixXd reconstructed =
        result.transform.cast<double>() * lattice.basis();
    CHECK((reconstructed - result.lattice.basis()).cwiseAbs().maxCoeff() < 1e-9);
  }

  SUBCASE("delta outside (1/4, 1) is rejected") {
    CHECK_THROWS_AS(lll_reduce(Lattice(identity(2)), 1.5), InputError);
    CHECK_THROWS_AS(lll_reduce(Lattice(identity(2)), 0.25), InputError);
  }
}

TEST_CASE("random_lattice contract") {
  const Lattice a = random_lattice(3, 7);
  const Lattice b = random_lattice(3, 7);
  CHECK((a.basis() - b.basis()).norm() == 0.0);  // determinism

  for (int seed = 0; seed < 10; ++seed) {
    const Lattice lattice = random_lattice(4, seed);
    CHECK(lattice.covolume() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(dual(lattice).covolume() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(lattice.condition_number() <= 1e6);
  }
}
