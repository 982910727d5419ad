#include "syslat/torus.hpp"

#include <cmath>
#include <sstream>

#include "syslat/exterior.hpp"
#include "syslat/norms.hpp"

namespace syslat {

namespace {

const char* kConstantFormNote =
    "assumes translation-invariant forms minimize the comass-type L2 norm";

Eigen::VectorXi integer_class_coeffs(const Lattice& wedge_lattice,
                                     const Eigen::VectorXd& coords) {
  const Eigen::VectorXd solved =
      wedge_lattice.basis().transpose().partialPivLu().solve(coords);
  Eigen::VectorXi coeffs(solved.size());
  for (Eigen::Index i = 0; i < solved.size(); ++i) {
    coeffs(i) = static_cast<int>(std::llround(solved(i)));
    if (std::abs(solved(i) - coeffs(i)) > 1e-6) {
      throw InternalError("witness class has non-integer coefficients");
    }
  }
  return coeffs;
}

}  // namespace

SystoleReport stable_systole(const FlatTorus& torus, int p,
                             const EnumerationOptions& opts) {
  const int n = torus.dim();
  if (p < 1 || p > n) throw InputError("stable_systole requires 1 <= p <= n");
  // Example computation happens at covolume 1; stsys_p(cL) = c^p stsys_p(L)
  // transports the value back.
  const Lattice unit = torus.lattice.rescaled_to_unit_covolume();
  const Lattice wedge_unit = exterior_power_lattice(unit, p);
  const NormSpec norm = NormSpec::mass_norm(n, p);
  const MinimaProfile profile = successive_minima(wedge_unit, norm, 1, opts);

  const double scale = std::pow(torus.volume, static_cast<double>(p) / n);
  SystoleReport report;
  report.p = p;
  report.value = profile.values[0] * scale;
  report.witness_coeffs = profile.vectors[0].coeffs;
  report.witness_coords = profile.vectors[0].coords * scale;
  report.heuristic = profile.heuristic;
  if (profile.heuristic) {
    report.bounds = {{profile.bounds[0][0] * scale, profile.bounds[0][1] * scale}};
  }
  return report;
}

SystoleReport codim1_systole(const FlatTorus& torus,
                             const EnumerationOptions& opts) {
  const int n = torus.dim();
  if (n < 2) throw InputError("codim1_systole requires dim >= 2");
  const Lattice polar = dual(torus.lattice);
  const MinimaProfile profile =
      successive_minima(polar, NormSpec::euclidean(), 1, opts);

  // The class vol * star(w) of the shortest dual vector w realizes sys_{n-1}:
  // Lambda^{n-1} mass is Euclidean and star is an isometry.
  const PVector shortest =
      PVector::from_coords(n, 1, profile.vectors[0].coords);
  const PVector star = hodge_star(shortest);

  SystoleReport report;
  report.p = n - 1;
  report.value = torus.volume * profile.values[0];
  report.witness_coords = torus.volume * star.coords;
  report.witness_coeffs = integer_class_coeffs(
      exterior_power_lattice(torus.lattice, n - 1), report.witness_coords);
  report.heuristic = false;
  return report;
}

MinimaProfile l2_homology_minima(const FlatTorus& torus, int p, int count,
                                 const EnumerationOptions& opts) {
  const int n = torus.dim();
  if (p < 1 || p > n) throw InputError("l2_homology_minima requires 1 <= p <= n");
  const Lattice wedge_lattice = exterior_power_lattice(torus.lattice, p);
  const NormSpec norm = NormSpec::l2_homology(n, p, torus.volume);
  return successive_minima(wedge_lattice, norm, count, opts);
}

SystoleReport conformal_systole(const FlatTorus& torus, int p,
                                const EnumerationOptions& opts) {
  const int n = torus.dim();
  if (n != 2 * p) {
    std::ostringstream msg;
    msg << "conformal_systole needs the middle dimension p = n/2, got p=" << p
        << " n=" << n;
    throw InputError(msg.str());
  }
  const Lattice wedge_lattice = exterior_power_lattice(torus.lattice, p);
  const NormSpec norm = NormSpec::l2_dual(n, p, torus.volume);
  const MinimaProfile profile = successive_minima(wedge_lattice, norm, 1, opts);

  SystoleReport report;
  report.p = p;
  report.value = profile.values[0];
  report.witness_coeffs = profile.vectors[0].coeffs;
  report.witness_coords = profile.vectors[0].coords;
  report.heuristic = profile.heuristic;
  if (profile.heuristic) {
    report.bounds = {{profile.bounds[0][0], profile.bounds[0][1]}};
  }
  if (p >= 2) report.notes = kConstantFormNote;
  return report;
}

}  // namespace syslat
