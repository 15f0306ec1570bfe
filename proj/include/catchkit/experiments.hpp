#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "catchkit/compress.hpp"
#include "catchkit/pointsets.hpp"

namespace catchkit::experiments {

/// Union of four disks with ~56% Halton acceptance from its minimal
/// surrounding rectangle.
DomainSpec four_disk_domain();

/// The standard sample of the four-disk domain: `total` Halton points
/// of the surrounding rectangle filtered by the domain, unit masses.
DiscreteMeasure four_disk_measure(std::size_t total = 10000,
                                  std::size_t skip = 0);

/// Test functions of the reconstruction experiment, rho = |x|.
double gaussian_of_radius(std::span<const double> point);   // exp(-rho^2)
double power_of_radius(std::span<const double> point);      // (rho/2)^5

/// Polar sample of the quartic sublevel set {x^4 + 4y^4 <= 1} used for
/// the operator-norm experiment: Chebyshev-spaced radii on 4n+4 rays
/// plus the boundary ring and the center.
DiscreteMeasure quartic_mesh(int degree);

/// Control grid for norm estimation: Halton points of the domain
/// (factor x sample size, capped) plus a dense boundary ring.
PointSet quartic_control_grid(int degree, std::size_t sample_size,
                              std::size_t factor = 20,
                              std::size_t cap = 100000);

/// N_2n column of the comparison table.
std::vector<std::size_t> table_dimension_row(const std::vector<int>& degrees,
                                             int dim = 2);

struct TableRow {
  int degree = 0;
  std::size_t dim_2n = 0;
  std::size_t m_nnls = 0;
  std::size_t m_lp = 0;
  double cratio_nnls = 0.0;
  double cratio_lp = 0.0;
  double eps_nnls = 0.0;
  double eps_lp = 0.0;
  // per test function: LS on X, CATCHLS via NNLS rule, CATCHLS via LP rule
  std::vector<double> rmse_ls;
  std::vector<double> rmse_cls_nnls;
  std::vector<double> rmse_cls_lp;
};

using ScalarField = std::function<double(std::span<const double>)>;

/// One row per degree: compression by both solvers plus LS/CATCHLS
/// RMSEs for each function. Row order follows the degree list.
std::vector<TableRow> run_table(const DiscreteMeasure& measure,
                                const std::vector<int>& degrees,
                                const std::vector<ScalarField>& functions,
                                const CompressOptions& options = {});

std::string format_table_text(const std::vector<TableRow>& rows,
                              std::size_t sample_size);
std::string format_table_csv(const std::vector<TableRow>& rows);

struct NormRow {
  int degree = 0;
  std::size_t sample_size = 0;  // M_n
  std::size_t rule_size = 0;    // m
  double residual = 0.0;
  double ls_norm = 0.0;
  double catchls_norm = 0.0;
};

/// Operator norms of LS on the quartic mesh and of CATCHLS on its
/// extracted points, estimated on the control grid.
std::vector<NormRow> run_norms(const std::vector<int>& degrees, Solver solver,
                               const CompressOptions& options = {});

std::string format_norms_csv(const std::vector<NormRow>& rows);

}  // namespace catchkit::experiments
