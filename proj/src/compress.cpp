#include "catchkit/compress.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "catchkit/nnls.hpp"
#include "catchkit/simplex.hpp"

namespace catchkit {

std::string to_string(Solver s) {
  return s == Solver::nnls ? "nnls" : "lp";
}

Matrix OrthoFactorization::evaluate(const PointSet& points) const {
  // psi = phi(:, perm(1..N)) * r_n^{-1}, row by row via forward
  // substitution on the columns of the permuted Vandermonde matrix.
  Matrix phi = vandermonde(points, space);
  const std::size_t p = points.size();
  Matrix psi(p, rank);
  for (std::size_t j = 0; j < rank; ++j) {
    auto dst = psi.col(j);
    auto src = phi.col(perm[j]);
    std::copy(src.begin(), src.end(), dst.begin());
    for (std::size_t k = 0; k < j; ++k) {
      const double rkj = r_n(k, j);
      if (rkj == 0.0) continue;
      auto pk = psi.col(k);
      for (std::size_t i = 0; i < p; ++i) dst[i] -= rkj * pk[i];
    }
    const double d = r_n(j, j);
    if (d == 0.0) {
      throw SingularSystemError("OrthoFactorization: zero triangular diagonal");
    }
    for (std::size_t i = 0; i < p; ++i) dst[i] /= d;
  }
  return psi;
}

OrthoFactorization orthonormal_basis(const DiscreteMeasure& measure,
                                     const PolynomialSpace& space) {
  Matrix u = vandermonde(measure.points, space);
  const std::size_t m = u.rows();

  const std::size_t rank = numerical_rank(u);

  // sqrt(Lambda) U, then pivoted QR; dividing the sqrt-mass back out
  // of Q turns Euclidean orthonormality into measure orthonormality.
  std::vector<double> sqrt_mass(m);
  for (std::size_t i = 0; i < m; ++i) sqrt_mass[i] = std::sqrt(measure.masses[i]);
  Matrix su = u;
  for (std::size_t j = 0; j < su.cols(); ++j) {
    auto col = su.col(j);
    for (std::size_t i = 0; i < m; ++i) col[i] *= sqrt_mass[i];
  }
  PivotedQR f = pivoted_qr(su);

  OrthoFactorization fact{space, measure, Matrix(m, rank), Matrix(rank, rank),
                          std::move(f.perm), rank};
  for (std::size_t j = 0; j < rank; ++j) {
    auto dst = fact.v.col(j);
    auto src = f.q.col(j);
    for (std::size_t i = 0; i < m; ++i) dst[i] = src[i] / sqrt_mass[i];
    for (std::size_t i = 0; i <= j; ++i) fact.r_n(i, j) = f.r(i, j);
  }
  return fact;
}

std::vector<double> moments(const OrthoFactorization& fact,
                            const DiscreteMeasure& measure) {
  if (measure.size() != fact.v.rows()) {
    throw InvalidInputError("moments: measure does not match factorization");
  }
  std::vector<double> b(fact.rank, 0.0);
  for (std::size_t j = 0; j < fact.rank; ++j) {
    auto col = fact.v.col(j);
    double s = 0.0;
    for (std::size_t i = 0; i < measure.size(); ++i) {
      s += measure.masses[i] * col[i];
    }
    b[j] = s;
  }
  return b;
}

namespace {

double recomputed_residual(const Matrix& vt, std::span<const double> b,
                           std::span<const std::size_t> support,
                           std::span<const double> weights) {
  std::vector<double> r(b.begin(), b.end());
  for (std::size_t k = 0; k < support.size(); ++k) {
    auto col = vt.col(support[k]);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= col[i] * weights[k];
  }
  return norm2(r);
}

}  // namespace

CompressedRule compress(const DiscreteMeasure& measure, int exactness_degree,
                        Solver solver, const CompressOptions& options) {
  if (exactness_degree < 0) {
    throw InvalidInputError("compress: exactness degree must be >= 0");
  }
  const BoundingBox box =
      options.bbox ? *options.bbox : bounding_box(measure.points);
  PolynomialSpace space(measure.dim(), exactness_degree, box);
  OrthoFactorization fact = orthonormal_basis(measure, space);
  const std::size_t m = measure.size();
  const std::size_t n = fact.rank;

  CompressedRule rule;
  rule.exactness_degree = exactness_degree;
  rule.rank = n;
  rule.solver_used = solver;

  if (m <= n) {
    // Nothing to compress: the measure is its own rule, residual 0.
    rule.node_indices.resize(m);
    std::iota(rule.node_indices.begin(), rule.node_indices.end(), 0);
    rule.weights = measure.masses;
    rule.residual = 0.0;
    return rule;
  }

  const Matrix vt = fact.v.transposed();  // n x m moment system
  const std::vector<double> b = moments(fact, measure);

  std::vector<double> u;
  if (solver == Solver::nnls) {
    NnlsOptions nnls_opts;
    nnls_opts.ktol = options.ktol;
    u = nnls(vt, b, nnls_opts).u;
  } else {
    const int n_obj = (exactness_degree + 1) / 2;  // odd power above degree
    const std::vector<double> c =
        default_objective(measure.points, n_obj, box);
    LpResult lp = simplex_lp(vt, b, c);
    if (lp.status != LpStatus::optimal) {
      throw SolverToleranceError(
          "compress: LP reported " +
          std::string(lp.status == LpStatus::infeasible ? "infeasible"
                                                        : "unbounded") +
          " although the measure itself is feasible (phase-1 objective " +
          std::to_string(lp.phase1_objective) + ")");
    }
    u = std::move(lp.u);
  }

  double umax = 0.0;
  for (double v : u) umax = std::max(umax, v);
  const double cutoff = options.support_rel_tol * umax;
  for (std::size_t i = 0; i < m; ++i) {
    if (u[i] > cutoff) {
      rule.node_indices.push_back(i);
      rule.weights.push_back(u[i]);
    }
  }
  // Thresholding perturbs the solver's residual, so report the one the
  // error bounds actually see.
  rule.residual = recomputed_residual(vt, b, rule.node_indices, rule.weights);
  return rule;
}

double compression_ratio(const CompressedRule& rule, std::size_t original_m) {
  if (rule.size() == 0) {
    throw InvalidInputError("compression_ratio: empty rule");
  }
  return static_cast<double>(original_m) / static_cast<double>(rule.size());
}

double error_bound(const CompressedRule& rule, double total_mass,
                   double best_approx_bound, double f_l2_norm) {
  if (total_mass < 0.0 || best_approx_bound < 0.0 || f_l2_norm < 0.0) {
    throw InvalidInputError("error_bound: inputs must be nonnegative");
  }
  const double c_eps =
      2.0 * (total_mass + rule.residual * std::sqrt(total_mass));
  return c_eps * best_approx_bound + rule.residual * f_l2_norm;
}

double apply_rule(const CompressedRule& rule,
                  std::span<const double> f_values_on_support) {
  double s = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    s += rule.weights[k] * f_values_on_support[rule.node_indices[k]];
  }
  return s;
}

}  // namespace catchkit
