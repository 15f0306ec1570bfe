#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "catchkit/compress.hpp"
#include "catchkit/points.hpp"

namespace catchkit {

/// Discrete weighted least-squares polynomial in the orthonormal basis
/// of its sample measure.
struct LSFit {
  int degree = 0;
  std::vector<double> coefficients;  // length = basis rank
  OrthoFactorization basis;

  /// Fitted values at the fit's own sample points.
  std::vector<double> values_at_sample() const;
};

/// Orthogonal projection of f onto P^d_n with respect to the measure's
/// weighted inner product: c_j = sum_i lambda_i psi_j(x_i) f(x_i).
LSFit ls_fit(const DiscreteMeasure& measure, std::span<const double> f_values,
             int degree, const std::optional<BoundingBox>& bbox = {});

/// Fit values at arbitrary query points inside the fit's box.
std::vector<double> evaluate_fit(const LSFit& fit, const PointSet& points);

/// (1 / sqrt(total_count)) * ||f - fit||_2.
double rmse(std::span<const double> f_values,
            std::span<const double> fit_values, std::size_t total_count);

struct CatchlsReport {
  LSFit ls;            // degree-n fit on the full measure
  LSFit cls;           // degree-n fit on the extracted rule
  CompressedRule rule; // degree-2n compression
  double rmse_ls = 0.0;
  double rmse_cls = 0.0;
};

/// Compressed least squares: extract the degree-2n rule, fit degree n
/// on (T, w), and report both RMSEs over the full support.
CatchlsReport catchls(const DiscreteMeasure& measure,
                      std::span<const double> f_values, int degree,
                      Solver solver, const CompressOptions& options = {});

/// alpha = (1 - eps sqrt(M))^(-1/2), beta = alpha (1 + eps / sqrt(M))^(1/2);
/// requires eps sqrt(M) < 1.
struct StabilityFactors {
  double alpha = 1.0;
  double beta = 1.0;
  double epsilon_sqrt_m = 0.0;
};

StabilityFactors stability_factors(double epsilon, std::size_t big_m);

/// max over control points x of sum_i lambda_i |K(x, x_i)|, the
/// Lebesgue function of the discrete projection with kernel
/// K(x, y) = sum_j psi_j(x) psi_j(y).
double operator_norm_estimate(const OrthoFactorization& fit_basis,
                              const PointSet& control_points);

/// Certified mesh constant of extracted points: c_n * sqrt(M) * beta_M(eps).
double catch_mesh_bound(double c_n, std::size_t big_m, double epsilon);

}  // namespace catchkit
