#include "catchkit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "catchkit/leastsquares.hpp"

namespace catchkit::experiments {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

DomainSpec four_disk_domain() {
  // Calibrated so that ~56% of the Halton points of the surrounding
  // rectangle land inside, and the domain reaches radius ~2.5 from
  // the origin.
  PointSet centers(2, {0.0, 0.0, 1.75, 0.0, 0.9, 1.45, 0.9, -0.55});
  DiskUnion disks{std::move(centers), {0.75, 0.75, 0.75, 0.75}};
  return DomainSpec{2, std::move(disks)};
}

DiscreteMeasure four_disk_measure(std::size_t total, std::size_t skip) {
  const DomainSpec domain = four_disk_domain();
  PointSet candidates = halton_in_box(total, domain.enclosing_box(), skip);
  return DiscreteMeasure(filter_domain(candidates, domain));
}

double gaussian_of_radius(std::span<const double> point) {
  double rho2 = 0.0;
  for (double x : point) rho2 += x * x;
  return std::exp(-rho2);
}

double power_of_radius(std::span<const double> point) {
  double rho2 = 0.0;
  for (double x : point) rho2 += x * x;
  return std::pow(std::sqrt(rho2) / 2.0, 5);
}

DiscreteMeasure quartic_mesh(int degree) {
  if (degree < 1) {
    throw InvalidInputError("quartic_mesh: degree must be >= 1");
  }
  const QuarticLevelSet level{1.0};
  const std::size_t n_ang = 4 * static_cast<std::size_t>(degree) + 4;
  const std::size_t n_rad = 2 * static_cast<std::size_t>(degree) + 2;
  const PointSet ring = boundary_sample(level, n_ang);

  const double pi = std::acos(-1.0);
  PointSet pts(2);
  const std::array<double, 2> origin{0.0, 0.0};
  pts.append(origin);
  for (std::size_t k = 0; k < ring.size(); ++k) {
    for (std::size_t j = 0; j < n_rad; ++j) {
      // Chebyshev-spaced radii in (0, 1]; j = 0 is the ring itself.
      const double r = std::cos(pi * static_cast<double>(j) /
                                (2.0 * static_cast<double>(n_rad)));
      const std::array<double, 2> p{r * ring(k, 0), r * ring(k, 1)};
      pts.append(p);
    }
  }
  return DiscreteMeasure(std::move(pts));
}

PointSet quartic_control_grid(int degree, std::size_t sample_size,
                              std::size_t factor, std::size_t cap) {
  const DomainSpec domain{2, QuarticLevelSet{1.0}};
  const std::size_t want = std::min(factor * sample_size, cap);
  const BoundingBox box = domain.enclosing_box();

  PointSet控制;  // placeholder removed below
  PointSet control(2);
  std::size_t skip = 0;
  const std::size_t batch = std::max<std::size_t>(4 * want, 1024);
  while (control.size() < want) {
    PointSet candidates = halton_in_box(batch, box, skip);
    skip += batch;
    for (std::size_t i = 0; i < candidates.size() && control.size() < want;
         ++i) {
      if (domain.contains(candidates.row(i))) control.append(candidates.row(i));
    }
  }
  control.append(
      boundary_sample(QuarticLevelSet{1.0},
                      16 * static_cast<std::size_t>(degree) + 16));
  return control;
}

std::vector<std::size_t> table_dimension_row(const std::vector<int>& degrees,
                                             int dim) {
  std::vector<std::size_t> out;
  out.reserve(degrees.size());
  for (int n : degrees) out.push_back(space_dimension(dim, 2 * n));
  return out;
}

std::vector<TableRow> run_table(const DiscreteMeasure& measure,
                                const std::vector<int>& degrees,
                                const std::vector<ScalarField>& functions,
                                const CompressOptions& options) {
  CompressOptions opts = options;
  if (!opts.bbox) opts.bbox = bounding_box(measure.points);
  const std::size_t m_total = measure.size();

  std::vector<std::vector<double>> f_values;
  for (const auto& f : functions) {
    std::vector<double> vals(m_total);
    for (std::size_t i = 0; i < m_total; ++i) vals[i] = f(measure.points.row(i));
    f_values.push_back(std::move(vals));
  }

  std::vector<TableRow> rows;
  for (int n : degrees) {
    TableRow row;
    row.degree = n;
    row.dim_2n = space_dimension(measure.dim(), 2 * n);

    const CompressedRule rule_nnls = compress(measure, 2 * n, Solver::nnls, opts);
    const CompressedRule rule_lp = compress(measure, 2 * n, Solver::lp, opts);
    row.m_nnls = rule_nnls.size();
    row.m_lp = rule_lp.size();
    row.cratio_nnls = compression_ratio(rule_nnls, m_total);
    row.cratio_lp = compression_ratio(rule_lp, m_total);
    row.eps_nnls = rule_nnls.residual;
    row.eps_lp = rule_lp.residual;

    for (std::size_t k = 0; k < functions.size(); ++k) {
      const LSFit ls = ls_fit(measure, f_values[k], n, opts.bbox);
      row.rmse_ls.push_back(
          rmse(f_values[k], ls.values_at_sample(), m_total));
      for (const CompressedRule* rule : {&rule_nnls, &rule_lp}) {
        DiscreteMeasure nodes =
            measure.subset(rule->node_indices, rule->weights);
        std::vector<double> f_nodes(rule->size());
        for (std::size_t t = 0; t < rule->size(); ++t) {
          f_nodes[t] = f_values[k][rule->node_indices[t]];
        }
        const LSFit cls = ls_fit(nodes, f_nodes, n, opts.bbox);
        const double r =
            rmse(f_values[k], evaluate_fit(cls, measure.points), m_total);
        (rule == &rule_nnls ? row.rmse_cls_nnls : row.rmse_cls_lp).push_back(r);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_table_text(const std::vector<TableRow>& rows,
                              std::size_t sample_size) {
  std::string out;
  auto line = [&out](const std::string& label,
                     const std::vector<std::string>& cells) {
    out += label;
    for (const auto& c : cells) {
      out += ' ';
      out.append(std::max<int>(0, 11 - static_cast<int>(c.size())), ' ');
      out += c;
    }
    out += '\n';
  };

  std::vector<std::string> hdr, dims, mn, ml, crn, crl, en, el;
  for (const auto& r : rows) {
    hdr.push_back(std::to_string(r.degree));
    dims.push_back(std::to_string(r.dim_2n));
    mn.push_back(std::to_string(r.m_nnls));
    ml.push_back(std::to_string(r.m_lp));
    crn.push_back(fmt("%.1f", r.cratio_nnls));
    crl.push_back(fmt("%.1f", r.cratio_lp));
    en.push_back(fmt("%.1e", r.eps_nnls));
    el.push_back(fmt("%.1e", r.eps_lp));
  }
  out += "M = " + std::to_string(sample_size) + " sample points\n";
  line("deg n          ", hdr);
  line("N_2n           ", dims);
  line("NNLS: m        ", mn);
  line("LP: m          ", ml);
  line("NNLS: C_ratio  ", crn);
  line("LP: C_ratio    ", crl);
  line("NNLS: residual ", en);
  line("LP: residual   ", el);
  const std::size_t nfun = rows.empty() ? 0 : rows.front().rmse_ls.size();
  for (std::size_t k = 0; k < nfun; ++k) {
    std::vector<std::string> ls, cn, cl;
    for (const auto& r : rows) {
      ls.push_back(fmt("%.1e", r.rmse_ls[k]));
      cn.push_back(fmt("%.1e", r.rmse_cls_nnls[k]));
      cl.push_back(fmt("%.1e", r.rmse_cls_lp[k]));
    }
    const std::string tag = "f" + std::to_string(k + 1);
    line(tag + ": LS         ", ls);
    line(tag + ": NNLS-CATCHLS", cn);
    line(tag + ": LP-CATCHLS ", cl);
  }
  return out;
}

std::string format_table_csv(const std::vector<TableRow>& rows) {
  std::string out = "n,N_2n,m_nnls,m_lp,cratio_nnls,cratio_lp,eps_nnls,eps_lp";
  const std::size_t nfun = rows.empty() ? 0 : rows.front().rmse_ls.size();
  for (std::size_t k = 0; k < nfun; ++k) {
    const std::string tag = "f" + std::to_string(k + 1);
    out += "," + tag + "_rmse_ls," + tag + "_rmse_cls_nnls," + tag +
           "_rmse_cls_lp";
  }
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.degree) + ',' + std::to_string(r.dim_2n) + ',' +
           std::to_string(r.m_nnls) + ',' + std::to_string(r.m_lp) + ',' +
           fmt("%.17g", r.cratio_nnls) + ',' + fmt("%.17g", r.cratio_lp) +
           ',' + fmt("%.17g", r.eps_nnls) + ',' + fmt("%.17g", r.eps_lp);
    for (std::size_t k = 0; k < nfun; ++k) {
      out += ',' + fmt("%.17g", r.rmse_ls[k]) + ',' +
             fmt("%.17g", r.rmse_cls_nnls[k]) + ',' +
             fmt("%.17g", r.rmse_cls_lp[k]);
    }
    out += '\n';
  }
  return out;
}

std::vector<NormRow> run_norms(const std::vector<int>& degrees, Solver solver,
                               const CompressOptions& options) {
  const DomainSpec domain{2, QuarticLevelSet{1.0}};
  CompressOptions opts = options;
  opts.bbox = domain.enclosing_box();

  std::vector<NormRow> rows;
  for (int n : degrees) {
    NormRow row;
    row.degree = n;
    const DiscreteMeasure mesh = quartic_mesh(n);
    row.sample_size = mesh.size();
    const PointSet control = quartic_control_grid(n, mesh.size());

    PolynomialSpace space_n(2, n, *opts.bbox);
    const OrthoFactorization ls_basis = orthonormal_basis(mesh, space_n);
    row.ls_norm = operator_norm_estimate(ls_basis, control);

    const CompressedRule rule = compress(mesh, 2 * n, solver, opts);
    row.rule_size = rule.size();
    row.residual = rule.residual;
    const DiscreteMeasure nodes = mesh.subset(rule.node_indices, rule.weights);
    const OrthoFactorization cls_basis = orthonormal_basis(nodes, space_n);
    row.catchls_norm = operator_norm_estimate(cls_basis, control);

    rows.push_back(row);
  }
  return rows;
}

std::string format_norms_csv(const std::vector<NormRow>& rows) {
  std::string out = "degree,ls_norm,catchls_norm\n";
  for (const auto& r : rows) {
    out += std::to_string(r.degree) + ',' + fmt("%.17g", r.ls_norm) + ',' +
           fmt("%.17g", r.catchls_norm) + '\n';
  }
  return out;
}

}  // namespace catchkit::experiments
