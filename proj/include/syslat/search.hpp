#pragma once

#include <cstdint>

#include "syslat/lattice.hpp"
#include "syslat/minima.hpp"

namespace syslat {

struct SearchOptions {
  int starts = 32;
  std::uint64_t seed = 0;
  int iters = 2000;        // per start
  double init_step = 0.25;
  std::int64_t node_budget = 10'000'000;
  bool record_result = true;  // feed the gamma'_b lower-bound store
};

struct SearchResult {
  Lattice lattice;   // covolume 1, best found
  double objective;  // lambda_1(L) * lambda_1(L*), certified lower bound for gamma'_b
  double lambda1 = 0.0;
  double dual_lambda1 = 0.0;
  std::uint64_t seed = 0;
  int best_start = -1;
};

/// Multi-start local search for dual-critical lattices: maximize the
/// scale-invariant objective lambda_1(L) lambda_1(L*) over covolume-1
/// lattices parameterized by lower-triangular positive-diagonal factors.
SearchResult search_dual_critical(int b, const SearchOptions& opts = {});

}  // namespace syslat
