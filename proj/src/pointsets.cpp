#include "catchkit/pointsets.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace catchkit {

namespace {

double radical_inverse(std::size_t base, std::size_t index) {
  double r = 0.0;
  double f = 1.0 / static_cast<double>(base);
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f /= static_cast<double>(base);
  }
  return r;
}

constexpr std::array<std::size_t, 3> kHaltonBases{2, 3, 5};

double quartic(double x, double y) { return x * x * x * x + 4.0 * y * y * y * y; }

}  // namespace

bool DomainSpec::contains(std::span<const double> point) const {
  if (point.size() != static_cast<std::size_t>(dim)) {
    throw InvalidInputError("DomainSpec::contains: dimension mismatch");
  }
  if (const auto* box = std::get_if<BoxDomain>(&shape)) {
    for (int j = 0; j < dim; ++j) {
      if (point[j] < box->box.lo[j] || point[j] > box->box.hi[j]) return false;
    }
    return true;
  }
  if (const auto* disks = std::get_if<DiskUnion>(&shape)) {
    for (std::size_t k = 0; k < disks->centers.size(); ++k) {
      const double dx = point[0] - disks->centers(k, 0);
      const double dy = point[1] - disks->centers(k, 1);
      const double r = disks->radii[k];
      if (dx * dx + dy * dy <= r * r) return true;
    }
    return false;
  }
  const auto& level = std::get<QuarticLevelSet>(shape);
  return quartic(point[0], point[1]) <= level.threshold;
}

BoundingBox DomainSpec::enclosing_box() const {
  BoundingBox box;
  box.dim = dim;
  if (const auto* b = std::get_if<BoxDomain>(&shape)) {
    return b->box;
  }
  if (const auto* disks = std::get_if<DiskUnion>(&shape)) {
    for (int j = 0; j < 2; ++j) {
      double lo = disks->centers(0, j) - disks->radii[0];
      double hi = disks->centers(0, j) + disks->radii[0];
      for (std::size_t k = 1; k < disks->centers.size(); ++k) {
        lo = std::min(lo, disks->centers(k, j) - disks->radii[k]);
        hi = std::max(hi, disks->centers(k, j) + disks->radii[k]);
      }
      box.lo[j] = lo;
      box.hi[j] = hi;
    }
    return box;
  }
  const auto& level = std::get<QuarticLevelSet>(shape);
  box.lo[0] = -std::pow(level.threshold, 0.25);
  box.hi[0] = std::pow(level.threshold, 0.25);
  box.lo[1] = -std::pow(level.threshold / 4.0, 0.25);
  box.hi[1] = std::pow(level.threshold / 4.0, 0.25);
  return box;
}

PointSet halton(std::size_t count, int dim, std::size_t skip) {
  if (dim < 1 || dim > 3) {
    throw InvalidInputError("halton: dimension must be 1, 2 or 3");
  }
  PointSet out(dim, count);
  for (std::size_t i = 0; i < count; ++i) {
    for (int j = 0; j < dim; ++j) {
      out(i, j) = radical_inverse(kHaltonBases[j], i + skip + 1);
    }
  }
  return out;
}

PointSet halton_in_box(std::size_t count, const BoundingBox& box,
                       std::size_t skip) {
  PointSet unit = halton(count, box.dim, skip);
  for (std::size_t i = 0; i < count; ++i) {
    for (int j = 0; j < box.dim; ++j) {
      unit(i, j) = box.lo[j] + unit(i, j) * (box.hi[j] - box.lo[j]);
    }
  }
  return unit;
}

PointSet filter_domain(const PointSet& points, const DomainSpec& spec) {
  if (points.dim() != spec.dim) {
    throw InvalidInputError("filter_domain: dimension mismatch");
  }
  PointSet kept(points.dim());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (spec.contains(points.row(i))) kept.append(points.row(i));
  }
  return kept;
}

PointSet boundary_sample(const QuarticLevelSet& spec, std::size_t per_arc) {
  if (per_arc == 0) {
    throw InvalidInputError("boundary_sample: need at least one angle");
  }
  if (!(spec.threshold > 0.0)) {
    throw InvalidInputError("boundary_sample: threshold must be positive");
  }
  PointSet out(2);
  const double pi = std::acos(-1.0);
  for (std::size_t k = 0; k < per_arc; ++k) {
    const double theta = 2.0 * pi * static_cast<double>(k) /
                         static_cast<double>(per_arc);
    const double cx = std::cos(theta);
    const double sy = std::sin(theta);
    double lo = 0.0;
    double hi = std::pow(spec.threshold, 0.25) + 1.0;
    if (quartic(hi * cx, hi * sy) <= spec.threshold) {
      throw GeometryError("boundary_sample: level curve not bracketed");
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (quartic(mid * cx, mid * sy) <= spec.threshold) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo < 1e-16 * hi) break;
    }
    const double r = 0.5 * (lo + hi);
    const std::array<double, 2> pt{r * cx, r * sy};
    out.append(pt);
  }
  return out;
}

namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ParsedFile {
  std::vector<std::vector<double>> rows;
  int header_dim = 0;
};

ParsedFile parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path.string());
  }
  ParsedFile parsed;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const auto pos = line.find("dim=");
      if (pos != std::string::npos) {
        parsed.header_dim = std::atoi(line.c_str() + pos + 4);
      }
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const char* begin = cell.c_str();
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      while (end && *end && std::isspace(static_cast<unsigned char>(*end))) {
        ++end;
      }
      if (end == begin || (end && *end != '\0')) {
        throw ParseError(path.string() + ":" + std::to_string(lineno) +
                         ": malformed value '" + cell + "'");
      }
      if (!std::isfinite(v)) {
        throw ParseError(path.string() + ":" + std::to_string(lineno) +
                         ": non-finite value");
      }
      row.push_back(v);
    }
    if (row.empty() || row.size() > 4) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": expected 1 to 4 columns, got " +
                       std::to_string(row.size()));
    }
    if (!parsed.rows.empty() && row.size() != parsed.rows.front().size()) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": inconsistent column count");
    }
    parsed.rows.push_back(std::move(row));
  }
  if (parsed.rows.empty()) {
    throw ParseError(path.string() + ": no data rows");
  }
  return parsed;
}

}  // namespace

DiscreteMeasure read_points(const std::filesystem::path& path, int dim_hint) {
  ParsedFile parsed = parse_csv(path);
  const std::size_t ncols = parsed.rows.front().size();

  int dim = parsed.header_dim > 0 ? parsed.header_dim : dim_hint;
  if (dim == 0) {
    // Headerless inference: up to three columns are all coordinates
    // (unit-mass convention), four columns are 3D plus weights.
    dim = ncols == 4 ? 3 : static_cast<int>(ncols);
  }
  if (dim < 1 || dim > 3) {
    throw ParseError(path.string() + ": unsupported dimension " +
                     std::to_string(dim));
  }
  const bool has_weights = ncols == static_cast<std::size_t>(dim) + 1;
  if (!has_weights && ncols != static_cast<std::size_t>(dim)) {
    throw ParseError(path.string() + ": rows have " + std::to_string(ncols) +
                     " columns but dimension is " + std::to_string(dim));
  }

  PointSet pts(dim);
  std::vector<double> masses;
  masses.reserve(parsed.rows.size());
  for (const auto& row : parsed.rows) {
    pts.append(std::span<const double>(row).subspan(0, dim));
    masses.push_back(has_weights ? row.back() : 1.0);
  }
  return DiscreteMeasure(std::move(pts), std::move(masses));
}

void write_points(const std::filesystem::path& path,
                  const DiscreteMeasure& measure) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write " + path.string());
  }
  out << "# catchkit points\n";
  out << "# dim=" << measure.dim() << " count=" << measure.size() << "\n";
  for (std::size_t i = 0; i < measure.size(); ++i) {
    for (int j = 0; j < measure.dim(); ++j) {
      out << format_value(measure.points(i, j)) << ",";
    }
    out << format_value(measure.masses[i]) << "\n";
  }
}

void write_rule(const std::filesystem::path& path,
                const DiscreteMeasure& original, const CompressedRule& rule) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write " + path.string());
  }
  out << "# catchkit rule: eps=" << format_value(rule.residual)
      << " degree=" << rule.exactness_degree
      << " solver=" << to_string(rule.solver_used) << "\n";
  out << "# dim=" << original.dim() << " count=" << rule.size() << "\n";
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const std::size_t i = rule.node_indices[k];
    for (int j = 0; j < original.dim(); ++j) {
      out << format_value(original.points(i, j)) << ",";
    }
    out << format_value(rule.weights[k]) << "\n";
  }
}

}  // namespace catchkit
