#pragma once

#include <cstddef>
#include <vector>

#include "catchkit/matrix.hpp"
#include "catchkit/points.hpp"

namespace catchkit {

enum class LpStatus { optimal, infeasible, unbounded };

struct SimplexOptions {
  /// Feasibility tolerance, relative to 1 + ||b||.
  double ftol = 1e-9;
  /// Pivot cap; 0 selects 20 * (rows + cols) + 200.
  std::size_t max_pivots = 0;
  /// Consecutive non-improving pivots before Bland's rule kicks in.
  std::size_t stall_limit = 100;
};

struct LpResult {
  std::vector<double> u;           // length cols, >= 0 when optimal
  double objective = 0.0;
  std::vector<std::size_t> basis;  // basic column indices
  LpStatus status = LpStatus::optimal;
  double phase1_objective = 0.0;   // residual infeasibility of phase 1
};

/// Two-phase dense-tableau primal simplex for
///   min c^T u  s.t.  a u = b, u >= 0.
/// Dantzig pricing with Bland's anti-cycling fallback; the final basic
/// solution is re-solved from the original columns so the returned u
/// satisfies the constraints to factorization accuracy.
LpResult simplex_lp(const Matrix& a, std::span<const double> b,
                    std::span<const double> c,
                    const SimplexOptions& options = {});

/// Objective vector for the moment LP: c_i = sum_j t_ij^(2n+1) with
/// the point coordinates mapped onto [-1,1] by the box.
std::vector<double> default_objective(const PointSet& points, int n,
                                      const BoundingBox& bbox);

}  // namespace catchkit
