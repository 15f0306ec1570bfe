#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "catchkit/linalg.hpp"
#include "catchkit/matrix.hpp"
#include "catchkit/points.hpp"
#include "catchkit/polyspace.hpp"

namespace catchkit {

enum class Solver { nnls, lp };

std::string to_string(Solver s);

/// Orthonormal basis of the polynomial space restricted to the support
/// of a measure: v(i,j) = psi_j(x_i) with
///   sum_i lambda_i psi_j(x_i) psi_k(x_i) = delta_jk.
/// psi_j is representable anywhere in the box through the stored
/// triangular factor and permutation, psi = phi(perm(1..N)) * r_n^-1.
struct OrthoFactorization {
  PolynomialSpace space;
  DiscreteMeasure measure;
  Matrix v;                        // M x rank, psi values on the support
  Matrix r_n;                      // rank x rank upper triangular
  std::vector<std::size_t> perm;   // generator permutation, full length
  std::size_t rank = 0;

  /// psi values at arbitrary points inside the box (rows: points).
  Matrix evaluate(const PointSet& points) const;
};

OrthoFactorization orthonormal_basis(const DiscreteMeasure& measure,
                                     const PolynomialSpace& space);

/// Basis moments b_j = sum_i lambda_i psi_j(x_i).
std::vector<double> moments(const OrthoFactorization& fact,
                            const DiscreteMeasure& measure);

/// Positive quadrature rule extracted from a measure: node indices
/// into the original support, positive weights, and the moment
/// residual epsilon recomputed after support thresholding.
struct CompressedRule {
  std::vector<std::size_t> node_indices;
  std::vector<double> weights;
  double residual = 0.0;
  int exactness_degree = 0;
  std::size_t rank = 0;
  Solver solver_used = Solver::nnls;

  std::size_t size() const { return node_indices.size(); }
};

struct CompressOptions {
  /// Bounding box of the basis; defaults to the support's box.
  std::optional<BoundingBox> bbox;
  /// Rank tolerance forwarded to numerical_rank (0 = default).
  double rank_rtol = 0.0;
  /// NNLS dual tolerance (0 = default).
  double ktol = 0.0;
  /// Entries below this fraction of max(u) are dropped from the support.
  double support_rel_tol = 1e-13;
};

/// Compression of a discrete measure into a rule of the requested
/// exactness degree. When the support is already no larger than the
/// basis rank the measure is returned unchanged with residual 0.
CompressedRule compress(const DiscreteMeasure& measure, int exactness_degree,
                        Solver solver, const CompressOptions& options = {});

/// M / m.
double compression_ratio(const CompressedRule& rule, std::size_t original_m);

/// Quadrature error bound C_eps * E_S + eps * ||f||, with
/// C_eps = 2 (mu(X) + eps * sqrt(mu(X))).
double error_bound(const CompressedRule& rule, double total_mass,
                   double best_approx_bound, double f_l2_norm);

/// sum_j w_j f(t_j) for f given by its values on the original support.
double apply_rule(const CompressedRule& rule,
                  std::span<const double> f_values_on_support);

}  // namespace catchkit
