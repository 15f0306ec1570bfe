#include "catchkit/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "catchkit/linalg.hpp"

namespace catchkit {

namespace {

constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

// Dense Gauss-Jordan tableau over [A | I] with an explicit cost row.
// Column-major: each pivot is a rank-one update swept column by column.
struct Tableau {
  Matrix t;
  std::vector<double> rhs;
  std::vector<double> cost;    // reduced costs over all columns
  double cost_rhs = 0.0;       // carries -objective
  std::vector<std::size_t> basis;
  std::size_t real_cols = 0;

  double objective() const { return -cost_rhs; }

  void pivot(std::size_t p, std::size_t e) {
    const std::size_t n = t.rows();
    const double pivval = t(p, e);
    std::vector<double> colfactor(n);
    for (std::size_t r = 0; r < n; ++r) colfactor[r] = t(r, e);
    colfactor[p] = 0.0;

    rhs[p] /= pivval;
    for (std::size_t r = 0; r < n; ++r) rhs[r] -= colfactor[r] * rhs[p];
    const double de = cost[e];
    cost_rhs -= de * rhs[p];

    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (j == e) continue;
      const double tpj = t(p, j);
      if (tpj == 0.0 && cost[j] == 0.0) continue;
      const double s = tpj / pivval;
      if (s != 0.0) {
        auto col = t.col(j);
        for (std::size_t r = 0; r < n; ++r) col[r] -= colfactor[r] * s;
        col[p] = s;
        cost[j] -= de * s;
      }
    }
    auto ce = t.col(e);
    for (std::size_t r = 0; r < n; ++r) ce[r] = 0.0;
    ce[p] = 1.0;
    cost[e] = 0.0;
    basis[p] = e;
  }
};

struct IterationState {
  std::size_t pivots = 0;
  std::size_t stall = 0;
  bool bland = false;
};

enum class LoopOutcome { optimal, unbounded };

// Runs pivots until no improving column remains. `allowed` bounds the
// entering-column range (real columns only in phase 2).
LoopOutcome run_pivots(Tableau& tab, std::size_t allowed, IterationState& st,
                       const SimplexOptions& opts, std::size_t max_pivots,
                       double dtol) {
  const std::size_t n = tab.t.rows();
  const double ptol = 1e-9;
  while (true) {
    std::size_t enter = kNoColumn;
    if (st.bland) {
      for (std::size_t j = 0; j < allowed; ++j) {
        if (tab.cost[j] < -dtol) {
          enter = j;
          break;
        }
      }
    } else {
      double best = -dtol;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (tab.cost[j] < best) {
          best = tab.cost[j];
          enter = j;
        }
      }
    }
    if (enter == kNoColumn) return LoopOutcome::optimal;

    auto col = tab.t.col(enter);
    std::size_t leave = kNoColumn;
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (col[r] <= ptol) continue;
      const double ratio = tab.rhs[r] / col[r];
      if (leave == kNoColumn) {
        best_ratio = ratio;
        leave = r;
        continue;
      }
      const double margin = 1e-12 * (1.0 + best_ratio);
      if (ratio < best_ratio - margin) {
        best_ratio = ratio;
        leave = r;
      } else if (ratio <= best_ratio + margin) {
        // Tie: Bland mode wants the lowest basis label; otherwise the
        // larger pivot element keeps the update well scaled.
        if (st.bland ? tab.basis[r] < tab.basis[leave]
                     : std::abs(col[r]) > std::abs(col[leave])) {
          best_ratio = std::min(best_ratio, ratio);
          leave = r;
        }
      }
    }
    if (leave == kNoColumn) return LoopOutcome::unbounded;

    const double z_before = tab.objective();
    tab.pivot(leave, enter);
    const double z_after = tab.objective();
    if (z_after > z_before + 1e-6 * (1.0 + std::abs(z_before))) {
      throw SolverToleranceError(
          "simplex_lp: objective increased across a pivot (" +
          std::to_string(z_before) + " -> " + std::to_string(z_after) + ")");
    }
    if (z_before - z_after <= 1e-13 * (1.0 + std::abs(z_before))) {
      if (++st.stall >= opts.stall_limit) st.bland = true;
    } else {
      st.stall = 0;
    }
    if (++st.pivots > max_pivots) {
      throw NoConvergenceError("simplex_lp: pivot cap " +
                               std::to_string(max_pivots) + " exceeded");
    }
  }
}

}  // namespace

std::vector<double> default_objective(const PointSet& points, int n,
                                      const BoundingBox& bbox) {
  if (points.dim() != bbox.dim) {
    throw InvalidInputError("default_objective: dimension mismatch");
  }
  const int power = 2 * n + 1;
  std::vector<double> c(points.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    double s = 0.0;
    for (int j = 0; j < points.dim(); ++j) {
      s += std::pow(bbox.to_unit(points(i, j), j), power);
    }
    c[i] = s;
  }
  return c;
}

LpResult simplex_lp(const Matrix& a, std::span<const double> b,
                    std::span<const double> c, const SimplexOptions& options) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  a.require_finite("simplex_lp");
  if (b.size() != n || c.size() != m) {
    throw InvalidInputError("simplex_lp: rhs or cost size mismatch");
  }
  for (double v : b) {
    if (!std::isfinite(v)) throw InvalidInputError("simplex_lp: non-finite rhs");
  }
  for (double v : c) {
    if (!std::isfinite(v)) throw InvalidInputError("simplex_lp: non-finite cost");
  }

  double b1 = 0.0;
  for (double v : b) b1 += std::abs(v);
  const std::size_t max_pivots = options.max_pivots > 0
                                     ? options.max_pivots
                                     : 20 * (n + m) + 200;

  Tableau tab;
  tab.t = Matrix(n, m + n);
  tab.rhs.assign(b.begin(), b.end());
  tab.basis.resize(n);
  tab.real_cols = m;
  for (std::size_t i = 0; i < n; ++i) {
    const double flip = tab.rhs[i] < 0.0 ? -1.0 : 1.0;
    tab.rhs[i] *= flip;
    for (std::size_t j = 0; j < m; ++j) tab.t(i, j) = flip * a(i, j);
    tab.t(i, m + i) = 1.0;
    tab.basis[i] = m + i;
  }

  // Phase 1: minimize the sum of artificials.
  tab.cost.assign(m + n, 0.0);
  tab.cost_rhs = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += tab.t(i, j);
    tab.cost[j] = -s;
  }
  for (double v : tab.rhs) tab.cost_rhs -= v;

  IterationState st;
  double scale1 = 0.0;
  for (double v : tab.cost) scale1 = std::max(scale1, std::abs(v));
  const double dtol1 = 1e-10 * (1.0 + scale1);
  run_pivots(tab, m + n, st, options, max_pivots, dtol1);

  LpResult result;
  result.phase1_objective = tab.objective();
  if (result.phase1_objective > 1e-7 * (1.0 + b1)) {
    result.status = LpStatus::infeasible;
    result.u.assign(m, 0.0);
    return result;
  }

  // Kick still-basic artificials out wherever a real pivot exists;
  // rows with none are redundant and keep a zero-valued artificial.
  for (std::size_t r = 0; r < n; ++r) {
    if (tab.basis[r] < m) continue;
    std::size_t enter = kNoColumn;
    for (std::size_t j = 0; j < m; ++j) {
      if (std::abs(tab.t(r, j)) > 1e-9) {
        enter = j;
        break;
      }
    }
    if (enter != kNoColumn) tab.pivot(r, enter);
  }

  // Phase 2: original objective, artificial columns barred.
  tab.cost.assign(m + n, 0.0);
  for (std::size_t j = 0; j < m; ++j) tab.cost[j] = c[j];
  tab.cost_rhs = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t jb = tab.basis[r];
    if (jb >= m || c[jb] == 0.0) continue;
    const double cb = c[jb];
    for (std::size_t j = 0; j < m + n; ++j) tab.cost[j] -= cb * tab.t(r, j);
    tab.cost_rhs -= cb * tab.rhs[r];
  }

  double scale2 = 1.0;
  for (double v : c) scale2 = std::max(scale2, std::abs(v));
  const double dtol2 = 1e-10 * scale2;
  st.stall = 0;
  if (run_pivots(tab, m, st, options, max_pivots, dtol2) ==
      LoopOutcome::unbounded) {
    result.status = LpStatus::unbounded;
    result.u.assign(m, 0.0);
    return result;
  }

  result.status = LpStatus::optimal;
  result.u.assign(m, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    if (tab.basis[r] < m) {
      result.u[tab.basis[r]] = std::max(tab.rhs[r], 0.0);
      result.basis.push_back(tab.basis[r]);
    }
  }
  std::sort(result.basis.begin(), result.basis.end());

  // Re-solve the basic system from the original columns; the tableau
  // value carries accumulated elimination error.
  if (!result.basis.empty()) {
    Matrix bmat(n, result.basis.size());
    for (std::size_t k = 0; k < result.basis.size(); ++k) {
      auto src = a.col(result.basis[k]);
      auto dst = bmat.col(k);
      std::copy(src.begin(), src.end(), dst.begin());
    }
    try {
      std::vector<double> w = solve_least_squares(bmat, b);
      bool sane = true;
      for (double v : w) {
        if (v < -options.ftol * (1.0 + b1)) sane = false;
      }
      if (sane) {
        for (std::size_t k = 0; k < result.basis.size(); ++k) {
          result.u[result.basis[k]] = std::max(w[k], 0.0);
        }
      }
    } catch (const SingularSystemError&) {
      // keep tableau values
    }
  }

  std::vector<double> au = matvec(a, result.u);
  double feas = 0.0;
  for (std::size_t i = 0; i < n; ++i) feas = std::hypot(feas, au[i] - b[i]);
  if (feas > std::max(options.ftol, 1e-8) * (1.0 + norm2(b))) {
    throw SolverToleranceError(
        "simplex_lp: optimal basis violates the constraints (residual " +
        std::to_string(feas) + ")");
  }

  result.objective = dot(c, result.u);
  return result;
}

}  // namespace catchkit
