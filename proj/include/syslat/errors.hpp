#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace syslat {

// Base class for all failures raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Basis is rank-deficient or too ill-conditioned to operate on.
class DegenerateLatticeError : public Error {
 public:
  using Error::Error;
};

// LLL failed to converge within the iteration cap.
class ReductionFailureError : public Error {
 public:
  using Error::Error;
};

// Enumeration visited more nodes than the configured cap.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, std::int64_t visited)
      : Error(what), nodes_visited(visited) {}
  std::int64_t nodes_visited = 0;
};

// No start of a multi-start optimizer converged; carries the best value seen.
class OptimizerFailureError : public Error {
 public:
  OptimizerFailureError(const std::string& what, double best)
      : Error(what), best_value(best) {}
  double best_value = 0.0;
};

// Malformed user input (files, flags, JSON records).
class InputError : public Error {
 public:
  using Error::Error;
};

// A contract that should be unreachable was violated; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace syslat
