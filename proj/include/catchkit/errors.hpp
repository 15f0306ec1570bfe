#pragma once

#include <stdexcept>
#include <string>

namespace catchkit {

/// Non-finite or otherwise malformed input data.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A query point lies outside the bounding box of the basis.
class OutOfDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Triangular solve hit a zero or near-zero diagonal.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver exhausted its iteration budget.
class NoConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver reported an outcome that contradicts the problem's known
/// structure (e.g. LP infeasible although a feasible point exists by
/// construction); carries diagnostic detail in the message.
class SolverToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stability factors requested where epsilon * sqrt(M) >= 1.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Boundary root-finding could not bracket the level curve.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed point or rule file; message carries the line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace catchkit
