#include "syslat/verify.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "syslat/exterior.hpp"
#include "syslat/norms.hpp"

namespace syslat {

std::string to_string(Status status) {
  switch (status) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::HeuristicPass: return "HEURISTIC-PASS";
    case Status::HeuristicInconclusive: return "HEURISTIC-INCONCLUSIVE";
    case Status::Error: return "ERROR";
  }
  throw InternalError("unknown status");
}

Status status_from_string(const std::string& text) {
  if (text == "PASS") return Status::Pass;
  if (text == "FAIL") return Status::Fail;
  if (text == "HEURISTIC-PASS") return Status::HeuristicPass;
  if (text == "HEURISTIC-INCONCLUSIVE") return Status::HeuristicInconclusive;
  if (text == "ERROR") return Status::Error;
  throw InputError("unknown certificate status '" + text + "'");
}

namespace {

// PASS only rests on exact inputs; heuristic factors pass through their
// certified enclosures so no certificate is silently unsound.
Status decide(double lhs, double rhs, bool heuristic,
              std::array<double, 2> lhs_bounds) {
  const double limit = rhs * (1 + kVerifyTolerance);
  if (!heuristic) return lhs <= limit ? Status::Pass : Status::Fail;
  if (lhs_bounds[1] <= limit) return Status::HeuristicPass;
  if (lhs_bounds[0] > limit) return Status::Fail;  // certified violation
  return Status::HeuristicInconclusive;
}

Witness witness_from(const std::string& role, const LatticePoint& point) {
  return Witness{role, point.coeffs, point.coords, point.norm.value};
}

Witness witness_from(const std::string& role, const SystoleReport& report) {
  return Witness{role, report.witness_coeffs, report.witness_coords,
                 report.value};
}

std::array<double, 2> report_bounds(const SystoleReport& report) {
  if (report.bounds) return *report.bounds;
  return {report.value, report.value};
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double euclidean_ball_volume(int b) {
  return std::pow(M_PI, b / 2.0) / std::tgamma(b / 2.0 + 1.0);
}

struct GammaStore {
  std::mutex mutex;
  std::map<int, std::pair<double, std::string>> lower;
};

GammaStore& gamma_store() {
  static GammaStore store;
  return store;
}

}  // namespace

ConstantsTable gamma_constants(int b) {
  if (b < 1) throw InputError("gamma_constants requires b >= 1");
  ConstantsTable table;
  table.b = b;
  table.gamma_upper = (b == 1) ? 1.0 : (2.0 / 3.0) * b;
  table.gamma_prime_upper = table.gamma_upper;
  table.gamma_prime_lower = 1.0;  // attained by Z^b
  table.lower_provenance = "Z^b";
  GammaStore& store = gamma_store();
  std::lock_guard<std::mutex> lock(store.mutex);
  const auto it = store.lower.find(b);
  if (it != store.lower.end() && it->second.first > table.gamma_prime_lower) {
    table.gamma_prime_lower = it->second.first;
    table.lower_provenance = it->second.second;
  }
  return table;
}

void record_gamma_prime_lower(int b, double value, const std::string& provenance) {
  GammaStore& store = gamma_store();
  std::lock_guard<std::mutex> lock(store.mutex);
  auto& slot = store.lower[b];
  if (value > slot.first) slot = {value, provenance};
}

std::vector<Certificate> verify_transference(const Lattice& lattice,
                                             const EnumerationOptions& opts) {
  const int b = lattice.dim();
  const auto products =
      transference_products(lattice, NormSpec::euclidean(), opts);
  std::vector<Certificate> certificates;
  certificates.reserve(b);
  for (const TransferenceProduct& tp : products) {
    Certificate cert;
    cert.inequality = "TRANSFER_71";
    cert.params["i"] = tp.index;
    cert.params["b"] = b;
    cert.lhs = tp.product;
    cert.rhs = b;
    cert.ratio = cert.lhs / cert.rhs;
    cert.witnesses = {witness_from("lambda_i(L)", tp.primal),
                      witness_from("lambda_{b-i+1}(L*)", tp.dual_vector)};
    const bool upper_ok = cert.lhs <= cert.rhs * (1 + kVerifyTolerance);
    const bool lower_ok = cert.lhs >= 1 - kVerifyTolerance;
    cert.status = (upper_ok && lower_ok) ? Status::Pass : Status::Fail;
    certificates.push_back(std::move(cert));
  }
  return certificates;
}

std::vector<Certificate> verify_banaszczyk_general(const Lattice& lattice, int p,
                                                   const EnumerationOptions& opts) {
  const int n = lattice.dim();
  if (p < 1 || p > n) throw InputError("verify_banaszczyk_general: bad degree");
  const Lattice wedge_lattice = exterior_power_lattice(lattice, p);
  const int big_b = wedge_lattice.dim();
  const auto products = transference_products(
      wedge_lattice, NormSpec::mass_norm(n, p), opts);
  const double reference = big_b * (1 + std::log(static_cast<double>(big_b)));
  std::vector<Certificate> certificates;
  certificates.reserve(big_b);
  for (const TransferenceProduct& tp : products) {
    Certificate cert;
    cert.inequality = "BANASZCZYK_41";
    cert.params["i"] = tp.index;
    cert.params["b"] = big_b;
    cert.params["n"] = n;
    cert.params["p"] = p;
    cert.params["normalized_ratio"] = tp.product / reference;
    cert.lhs = tp.product;
    cert.rhs = reference;
    cert.ratio = cert.lhs / cert.rhs;
    cert.witnesses = {witness_from("lambda_i(mass)", tp.primal),
                      witness_from("lambda_{b-i+1}(comass)", tp.dual_vector)};
    cert.status = decide(cert.lhs, cert.rhs, tp.heuristic, tp.bounds);
    cert.notes = "the bound's constant is existential; rhs uses C=1";
    certificates.push_back(std::move(cert));
  }
  return certificates;
}

Certificate verify_corollary_c(const FlatTorus& torus,
                               const EnumerationOptions& opts) {
  const int n = torus.dim();
  const SystoleReport s1 = stable_systole(torus, 1, opts);
  const SystoleReport sn1 = codim1_systole(torus, opts);
  const ConstantsTable gamma = gamma_constants(n);

  const Lattice unit = torus.lattice.rescaled_to_unit_covolume();
  const double lambda1 =
      successive_minima(unit, NormSpec::euclidean(), 1, opts).values[0];
  const double dual_lambda1 =
      successive_minima(dual(unit), NormSpec::euclidean(), 1, opts).values[0];

  Certificate cert;
  cert.inequality = "COR_C_61";
  cert.params["n"] = n;
  cert.params["b"] = n;
  cert.params["gamma_prime_upper"] = gamma.gamma_prime_upper;
  cert.params["gamma_prime_lower"] = gamma.gamma_prime_lower;
  cert.params["exact_product"] = lambda1 * dual_lambda1;
  cert.params["equality_ratio"] = lambda1 * dual_lambda1 / gamma.gamma_prime_lower;
  cert.lhs = s1.value * sn1.value;
  cert.rhs = gamma.gamma_prime_upper * torus.volume;
  cert.ratio = cert.lhs / cert.rhs;
  cert.witnesses = {witness_from("stsys_1", s1), witness_from("sys_{n-1}", sn1)};
  cert.status = decide(cert.lhs, cert.rhs, false, {cert.lhs, cert.lhs});
  cert.notes = "gamma'_b lower bound provenance: " + gamma.lower_provenance;
  return cert;
}

Certificate verify_theorem_b(const FlatTorus& torus, int p, int q,
                             const EnumerationOptions& opts) {
  const int n = torus.dim();
  if (p + q != n) {
    throw InputError(
        "verify_theorem_b is implemented for the fundamental-class case p+q=n");
  }
  const SystoleReport sp = stable_systole(torus, p, opts);
  const SystoleReport sq = stable_systole(torus, q, opts);
  const double bp = static_cast<double>(binomial(n, p));
  const ConstantsTable gamma = gamma_constants(static_cast<int>(bp));

  Certificate cert;
  cert.inequality = "THM_B_57";
  cert.params["p"] = p;
  cert.params["q"] = q;
  cert.params["n"] = n;
  cert.params["b_p"] = bp;
  cert.params["gamma_prime_upper"] = gamma.gamma_prime_upper;
  cert.lhs = sp.value * sq.value;
  cert.rhs = bp * gamma.gamma_prime_upper * torus.volume;
  cert.ratio = cert.lhs / cert.rhs;
  cert.witnesses = {witness_from("stsys_p", sp), witness_from("stsys_q", sq)};
  const auto bp_bounds = report_bounds(sp);
  const auto bq_bounds = report_bounds(sq);
  cert.status = decide(cert.lhs, cert.rhs, sp.heuristic || sq.heuristic,
                       {bp_bounds[0] * bq_bounds[0], bp_bounds[1] * bq_bounds[1]});
  return cert;
}

Certificate verify_corollary_d(const FlatTorus& torus,
                               const EnumerationOptions& opts) {
  const int n = torus.dim();
  if (n % 2 != 0) throw InputError("verify_corollary_d requires even dimension");
  const int p = n / 2;
  const int bp = static_cast<int>(binomial(n, p));
  const MinimaProfile profile = l2_homology_minima(torus, p, bp, opts);
  const SystoleReport conf = conformal_systole(torus, p, opts);

  Certificate cert;
  cert.inequality = "COR_D";
  cert.params["n"] = n;
  cert.params["p"] = p;
  cert.params["b_p"] = bp;
  cert.params["lambda_1"] = profile.values.front();
  cert.params["lambda_bp"] = profile.values.back();
  cert.params["conf_p"] = conf.value;
  cert.lhs = conf.value * conf.value;
  cert.rhs = (profile.values.front() / profile.values.back()) *
             static_cast<double>(bp) * static_cast<double>(bp);
  cert.ratio = cert.lhs / cert.rhs;
  cert.witnesses = {witness_from("conf_p", conf),
                    witness_from("lambda_1(L2)", profile.vectors.front()),
                    witness_from("lambda_bp(L2)", profile.vectors.back())};
  const auto bounds = report_bounds(conf);
  cert.status = decide(cert.lhs, cert.rhs, conf.heuristic,
                       {bounds[0] * bounds[0], bounds[1] * bounds[1]});
  cert.notes = conf.notes;
  return cert;
}

Certificate verify_theorem_e(const FlatTorus& torus, int p,
                             const EnumerationOptions& opts) {
  const int n = torus.dim();
  if (p < 1 || n % p != 0 || n / p < 2) {
    throw InputError("verify_theorem_e requires n = k p with k >= 2");
  }
  const int k = n / p;
  const SystoleReport sp = stable_systole(torus, p, opts);
  const double bp = static_cast<double>(binomial(n, p));
  const double exponent = static_cast<double>(k - 1) / k;
  const double reference = std::pow(bp * (1 + std::log(bp)), exponent) *
                           std::pow(torus.volume, 1.0 / k);

  Certificate cert;
  cert.inequality = "THM_E";
  cert.params["n"] = n;
  cert.params["p"] = p;
  cert.params["k"] = k;
  cert.params["b_p"] = bp;
  cert.params["empirical_constant"] = sp.value / reference;
  cert.lhs = sp.value;
  cert.rhs = reference;
  cert.ratio = cert.lhs / cert.rhs;
  cert.witnesses = {witness_from("stsys_p", sp)};
  cert.status = decide(cert.lhs, cert.rhs, sp.heuristic, report_bounds(sp));
  cert.notes = "the bound's constant is existential; rhs uses C(n)=1";
  return cert;
}

Certificate verify_theorem_81(const FlatTorus& torus, int p,
                              const EnumerationOptions& opts) {
  const int n = torus.dim();
  if (n != 3 * p) throw InputError("verify_theorem_81 requires n = 3p");
  const SystoleReport sp = stable_systole(torus, p, opts);
  const double bp = static_cast<double>(binomial(n, p));
  const double pf = factorial(p);
  const double shape = bp * factorial(n) / (pf * pf * pf);

  Certificate cert;
  cert.inequality = "THM_81";
  cert.params["n"] = n;
  cert.params["p"] = p;
  cert.params["b_p"] = bp;
  cert.lhs = sp.value;
  cert.rhs = std::cbrt(shape) * std::pow(bp, 2.0 / 3.0) *
             std::cbrt(torus.volume);
  cert.ratio = cert.lhs / cert.rhs;
  cert.witnesses = {witness_from("stsys_p", sp)};
  cert.status = decide(cert.lhs, cert.rhs, sp.heuristic, report_bounds(sp));
  return cert;
}

Certificate verify_minkowski(const Lattice& lattice, double big_d,
                             const EnumerationOptions& opts) {
  if (!(big_d > 0)) throw InputError("verify_minkowski requires D > 0");
  const int b = lattice.dim();
  const MinimaProfile profile =
      successive_minima(lattice, NormSpec::euclidean(), 1, opts);
  const double lambda1 = profile.values[0];

  Certificate cert;
  cert.inequality = "MINKOWSKI_710";
  cert.params["b"] = b;
  cert.params["D"] = big_d;
  cert.params["lambda_1"] = lambda1;
  cert.lhs = euclidean_ball_volume(b) / lattice.covolume();
  cert.rhs = std::pow(2 * big_d, b);
  cert.ratio = cert.lhs / cert.rhs;
  cert.witnesses = {witness_from("lambda_1", profile.vectors[0])};
  if (lambda1 < 1.0 / big_d - kVerifyTolerance) {
    cert.status = Status::Error;
    cert.notes = "precondition lambda_1 >= 1/D violated";
  } else {
    cert.status = decide(cert.lhs, cert.rhs, false, {cert.lhs, cert.lhs});
  }
  return cert;
}

}  // namespace syslat
