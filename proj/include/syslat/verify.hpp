#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "syslat/minima.hpp"
#include "syslat/torus.hpp"

namespace syslat {

inline constexpr double kVerifyTolerance = 1e-9;

enum class Status {
  Pass,
  Fail,
  HeuristicPass,
  HeuristicInconclusive,
  Error,  // precondition violated; not a counterexample
};

std::string to_string(Status status);
Status status_from_string(const std::string& text);

struct Witness {
  std::string role;
  Eigen::VectorXi coeffs;
  Eigen::VectorXd coords;
  double norm = 0.0;
};

/// Machine-checkable verdict for one inequality instance.
struct Certificate {
  std::string inequality;  // TRANSFER_71, COR_C_61, ...
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs
  std::vector<Witness> witnesses;
  Status status = Status::Error;
  std::string notes;
};

struct ConstantsTable {
  int b = 0;
  double gamma_upper = 0.0;        // Hermite bound: 1 for b=1, (2/3)b else
  double gamma_prime_upper = 0.0;  // <= gamma_upper
  double gamma_prime_lower = 0.0;  // best certified lower bound
  std::string lower_provenance;
};

ConstantsTable gamma_constants(int b);

/// Record a certified lower bound for gamma'_b (e.g. from a search run).
/// Kept when it improves on the stored value.
void record_gamma_prime_lower(int b, double value, const std::string& provenance);

// --- Verifiers. Theorem instances must PASS on valid inputs; a FAIL with
// exact inputs is a bug detector. ---

/// (7.1): 1 <= lambda_i(L) lambda_{b-i+1}(L*) <= b, Euclidean norm.
std::vector<Certificate> verify_transference(const Lattice& lattice,
                                             const EnumerationOptions& opts = {});

/// (4.1) with mass/comass on Lambda^p: reports each product and the ratio
/// product / (B (1+log B)); the paper's constant is existential.
std::vector<Certificate> verify_banaszczyk_general(const Lattice& lattice, int p,
                                                   const EnumerationOptions& opts = {});

/// (6.1): stsys_1 * sys_{n-1} <= gamma'_b vol.
Certificate verify_corollary_c(const FlatTorus& torus,
                               const EnumerationOptions& opts = {});

/// (5.7) with h the fundamental class: stsys_p stsys_q <= C(n,p) gamma'_{b_p} vol.
Certificate verify_theorem_b(const FlatTorus& torus, int p, int q,
                             const EnumerationOptions& opts = {});

/// conf_p^2 <= (lambda_1/lambda_{b_p}) C(n,p) b_p, n = 2p.
Certificate verify_corollary_d(const FlatTorus& torus,
                               const EnumerationOptions& opts = {});

/// n = kp sublinear bound; reports the empirical constant
/// stsys_p / ((b_p(1+log b_p))^{(k-1)/k} vol^{1/k}).
Certificate verify_theorem_e(const FlatTorus& torus, int p,
                             const EnumerationOptions& opts = {});

/// n = 3p: stsys_p <= (C(n,p) n!/(p!)^3)^{1/3} b_p^{2/3} vol^{1/3}.
Certificate verify_theorem_81(const FlatTorus& torus, int p,
                              const EnumerationOptions& opts = {});

/// (7.10): with lambda_1(L) >= 1/D, the unit ball B of |x B_L| satisfies
/// vol_b(B) <= (2D)^b.
Certificate verify_minkowski(const Lattice& lattice, double big_d,
                             const EnumerationOptions& opts = {});

}  // namespace syslat
