#include "syslat/search.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "rng.hpp"
#include "syslat/verify.hpp"

namespace syslat {

namespace {

// Lower-triangular positive-diagonal factor, diagonal in log space, rescaled
// to determinant 1. Fixes the rotation and scaling gauge of the objective.
Lattice lattice_from_params(int b, const Eigen::VectorXd& params) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(b, b);
  double log_det = 0.0;
  for (int i = 0; i < b; ++i) {
    t(i, i) = std::exp(params(i));
    log_det += params(i);
  }
  int idx = b;
  for (int i = 1; i < b; ++i)
    for (int j = 0; j < i; ++j) t(i, j) = params(idx++);
  t *= std::exp(-log_det / b);
  return Lattice(std::move(t));
}

}  // namespace

SearchResult search_dual_critical(int b, const SearchOptions& opts) {
  if (b < 1) throw InputError("search_dual_critical requires b >= 1");
  EnumerationOptions eopts;
  eopts.node_budget = opts.node_budget;
  const NormSpec euclid = NormSpec::euclidean();

  auto objective = [&](const Lattice& lattice, double* l1, double* l1_dual) {
    const double a = successive_minima(lattice, euclid, 1, eopts).values[0];
    const double c = successive_minima(dual(lattice), euclid, 1, eopts).values[0];
    if (l1 != nullptr) *l1 = a;
    if (l1_dual != nullptr) *l1_dual = c;
    return a * c;
  };

  const int param_count = b + b * (b - 1) / 2;
  SearchResult best{Lattice(Eigen::MatrixXd::Identity(b, b)), -1.0};
  best.seed = opts.seed;

  for (int start = 0; start < std::max(1, opts.starts); ++start) {
    std::mt19937_64 rng(detail::mix_seed(opts.seed, start));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd params = Eigen::VectorXd::Zero(param_count);
    if (start > 0) {
      for (int i = 0; i < param_count; ++i) params(i) = 0.5 * gauss(rng);
    }
    Lattice current = lattice_from_params(b, params);
    double value = objective(current, nullptr, nullptr);

    double step = opts.init_step;
    int stall = 0;
    for (int iter = 0; iter < opts.iters && b > 1; ++iter) {
      Eigen::VectorXd proposal = params;
      for (int i = 0; i < param_count; ++i) proposal(i) += step * gauss(rng);
      Lattice candidate = lattice_from_params(b, proposal);
      if (candidate.condition_number() > 1e8) continue;
      const double candidate_value = objective(candidate, nullptr, nullptr);
      if (candidate_value > value) {
        params = proposal;
        current = std::move(candidate);
        value = candidate_value;
        stall = 0;
      } else if (++stall >= 24) {
        step *= 0.5;
        stall = 0;
        if (step < 1e-8) break;
      }
    }

    if (value > best.objective) {
      best.objective = value;
      best.lattice = current;
      best.best_start = start;
    }
  }

  objective(best.lattice, &best.lambda1, &best.dual_lambda1);
  if (opts.record_result) {
    std::ostringstream provenance;
    provenance << "dual-critical search (b=" << b << ", seed=" << opts.seed
               << ", starts=" << opts.starts << ", iters=" << opts.iters << ")";
    record_gamma_prime_lower(b, best.objective, provenance.str());
  }
  return best;
}

}  // namespace syslat
