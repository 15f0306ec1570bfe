#include "catchkit/leastsquares.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace catchkit {

std::vector<double> LSFit::values_at_sample() const {
  std::vector<double> out(basis.v.rows(), 0.0);
  for (std::size_t j = 0; j < basis.rank; ++j) {
    auto col = basis.v.col(j);
    const double cj = coefficients[j];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += cj * col[i];
  }
  return out;
}

LSFit ls_fit(const DiscreteMeasure& measure, std::span<const double> f_values,
             int degree, const std::optional<BoundingBox>& bbox) {
  if (f_values.size() != measure.size()) {
    throw InvalidInputError("ls_fit: function values do not match the sample");
  }
  const BoundingBox box = bbox ? *bbox : bounding_box(measure.points);
  PolynomialSpace space(measure.dim(), degree, box);
  LSFit fit;
  fit.degree = degree;
  fit.basis = orthonormal_basis(measure, space);
  fit.coefficients.resize(fit.basis.rank);
  for (std::size_t j = 0; j < fit.basis.rank; ++j) {
    auto col = fit.basis.v.col(j);
    double s = 0.0;
    for (std::size_t i = 0; i < measure.size(); ++i) {
      s += measure.masses[i] * col[i] * f_values[i];
    }
    fit.coefficients[j] = s;
  }
  return fit;
}

std::vector<double> evaluate_fit(const LSFit& fit, const PointSet& points) {
  Matrix psi = fit.basis.evaluate(points);
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t j = 0; j < fit.basis.rank; ++j) {
    auto col = psi.col(j);
    const double cj = fit.coefficients[j];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += cj * col[i];
  }
  return out;
}

double rmse(std::span<const double> f_values,
            std::span<const double> fit_values, std::size_t total_count) {
  if (f_values.size() != fit_values.size()) {
    throw InvalidInputError("rmse: length mismatch");
  }
  if (total_count == 0) {
    throw InvalidInputError("rmse: total count must be positive");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < f_values.size(); ++i) {
    const double d = f_values[i] - fit_values[i];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(total_count));
}

CatchlsReport catchls(const DiscreteMeasure& measure,
                      std::span<const double> f_values, int degree,
                      Solver solver, const CompressOptions& options) {
  CompressOptions opts = options;
  if (!opts.bbox) opts.bbox = bounding_box(measure.points);

  CatchlsReport report;
  report.rule = compress(measure, 2 * degree, solver, opts);
  report.ls = ls_fit(measure, f_values, degree, opts.bbox);

  DiscreteMeasure compressed =
      measure.subset(report.rule.node_indices, report.rule.weights);
  std::vector<double> f_nodes(report.rule.size());
  for (std::size_t k = 0; k < report.rule.size(); ++k) {
    f_nodes[k] = f_values[report.rule.node_indices[k]];
  }
  report.cls = ls_fit(compressed, f_nodes, degree, opts.bbox);

  const std::vector<double> ls_values = report.ls.values_at_sample();
  const std::vector<double> cls_values =
      evaluate_fit(report.cls, measure.points);
  report.rmse_ls = rmse(f_values, ls_values, measure.size());
  report.rmse_cls = rmse(f_values, cls_values, measure.size());
  return report;
}

StabilityFactors stability_factors(double epsilon, std::size_t big_m) {
  if (epsilon < 0.0 || !std::isfinite(epsilon)) {
    throw InvalidInputError("stability_factors: epsilon must be >= 0");
  }
  StabilityFactors out;
  out.epsilon_sqrt_m = epsilon * std::sqrt(static_cast<double>(big_m));
  if (out.epsilon_sqrt_m >= 1.0) {
    throw StabilityError("stability_factors: epsilon sqrt(M) = " +
                         std::to_string(out.epsilon_sqrt_m) +
                         " >= 1, factors undefined");
  }
  out.alpha = 1.0 / std::sqrt(1.0 - out.epsilon_sqrt_m);
  out.beta =
      out.alpha *
      std::sqrt(1.0 + epsilon / std::sqrt(static_cast<double>(big_m)));
  return out;
}

double operator_norm_estimate(const OrthoFactorization& fit_basis,
                              const PointSet& control_points) {
  const std::size_t sample_size = fit_basis.v.rows();
  const Matrix vt = fit_basis.v.transposed();  // rank x M, samples contiguous
  const std::size_t block = 2048;
  double best = 0.0;
  // K(x, x_i) in control-point blocks; the max-reduction makes the
  // blocking irrelevant to the result.
  for (std::size_t start = 0; start < control_points.size(); start += block) {
    const std::size_t stop = std::min(start + block, control_points.size());
    PointSet chunk(control_points.dim());
    for (std::size_t i = start; i < stop; ++i) {
      chunk.append(control_points.row(i));
    }
    const Matrix psi_t = fit_basis.evaluate(chunk).transposed();
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      auto pi = psi_t.col(i);
      double lebesgue = 0.0;
      for (std::size_t s = 0; s < sample_size; ++s) {
        lebesgue += fit_basis.measure.masses[s] * std::abs(dot(pi, vt.col(s)));
      }
      best = std::max(best, lebesgue);
    }
  }
  return best;
}

double catch_mesh_bound(double c_n, std::size_t big_m, double epsilon) {
  return c_n * std::sqrt(static_cast<double>(big_m)) *
         stability_factors(epsilon, big_m).beta;
}

}  // namespace catchkit
