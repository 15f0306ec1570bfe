#include "catchkit/points.hpp"

#include <cmath>
#include <string>

namespace catchkit {

PointSet::PointSet(int dim, std::size_t count) : dim_(dim) {
  if (dim < 1 || dim > 3) {
    throw InvalidInputError("PointSet: dimension must be 1, 2 or 3");
  }
  coords_.assign(count * dim, 0.0);
}

PointSet::PointSet(int dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim < 1 || dim > 3) {
    throw InvalidInputError("PointSet: dimension must be 1, 2 or 3");
  }
  if (coords_.size() % dim != 0) {
    throw InvalidInputError("PointSet: coordinate count not divisible by dim");
  }
  for (double v : coords_) {
    if (!std::isfinite(v)) {
      throw InvalidInputError("PointSet: non-finite coordinate");
    }
  }
}

void PointSet::append(std::span<const double> point) {
  if (point.size() != static_cast<std::size_t>(dim_)) {
    throw InvalidInputError("PointSet::append: wrong dimension");
  }
  for (double v : point) {
    if (!std::isfinite(v)) {
      throw InvalidInputError("PointSet::append: non-finite coordinate");
    }
    coords_.push_back(v);
  }
}

void PointSet::append(const PointSet& other) {
  if (other.dim() != dim_) {
    throw InvalidInputError("PointSet::append: dimension mismatch");
  }
  coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
}

bool BoundingBox::contains(std::span<const double> point, double tol) const {
  for (int j = 0; j < dim; ++j) {
    const double slack = tol * (hi[j] - lo[j]);
    if (point[j] < lo[j] - slack || point[j] > hi[j] + slack) return false;
  }
  return true;
}

BoundingBox bounding_box(const PointSet& points) {
  if (points.empty()) {
    throw InvalidInputError("bounding_box: empty point set");
  }
  BoundingBox box;
  box.dim = points.dim();
  for (int j = 0; j < box.dim; ++j) {
    double lo = points(0, j), hi = points(0, j);
    for (std::size_t i = 1; i < points.size(); ++i) {
      lo = std::min(lo, points(i, j));
      hi = std::max(hi, points(i, j));
    }
    const double width = hi - lo;
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    if (width <= 1e-12 * scale) {
      // Degenerate axis: widen so the box keeps positive volume.
      const double c = 0.5 * (lo + hi);
      lo = c - 1.0;
      hi = c + 1.0;
    }
    box.lo[j] = lo;
    box.hi[j] = hi;
  }
  return box;
}

DiscreteMeasure::DiscreteMeasure(PointSet pts, std::vector<double> mass)
    : points(std::move(pts)), masses(std::move(mass)) {
  if (points.empty()) {
    throw InvalidInputError("DiscreteMeasure: empty support");
  }
  if (masses.size() != points.size()) {
    throw InvalidInputError("DiscreteMeasure: " + std::to_string(masses.size()) +
                            " masses for " + std::to_string(points.size()) +
                            " points");
  }
  for (double w : masses) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidInputError("DiscreteMeasure: masses must be positive");
    }
  }
}

DiscreteMeasure::DiscreteMeasure(PointSet pts)
    : points(std::move(pts)), masses(points.size(), 1.0) {
  if (points.empty()) {
    throw InvalidInputError("DiscreteMeasure: empty support");
  }
}

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (double w : masses) s += w;
  return s;
}

DiscreteMeasure DiscreteMeasure::subset(
    std::span<const std::size_t> indices,
    std::span<const double> new_masses) const {
  PointSet pts(points.dim());
  std::vector<double> mass;
  mass.reserve(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    pts.append(points.row(indices[k]));
    mass.push_back(new_masses[k]);
  }
  return DiscreteMeasure(std::move(pts), std::move(mass));
}

}  // namespace catchkit
