#pragma once

#include <cstddef>
#include <vector>

#include "catchkit/matrix.hpp"

namespace catchkit {

struct NnlsOptions {
  /// Dual (KKT) tolerance; 0 selects 10 * eps * ||a||_1 * ||b||_2.
  double ktol = 0.0;
  /// Iteration cap; 0 selects 10 * cols.
  std::size_t max_iterations = 0;
};

struct NnlsResult {
  std::vector<double> u;             // length cols, entrywise >= 0
  double residual_norm = 0.0;        // ||b - a u||_2, from original data
  std::size_t iterations = 0;
  std::vector<std::size_t> support;  // indices with u_i > 0
};

/// Thrown past the iteration cap; carries the best iterate found.
class NnlsNoConvergence : public NoConvergenceError {
 public:
  NnlsNoConvergence(const std::string& message, NnlsResult best_iterate)
      : NoConvergenceError(message), best(std::move(best_iterate)) {}
  NnlsResult best;
};

/// Lawson-Hanson active-set solver for min ||a u - b||_2, u >= 0.
/// The returned support has at most rows(a) entries.
NnlsResult nnls(const Matrix& a, std::span<const double> b,
                const NnlsOptions& options = {});

}  // namespace catchkit
