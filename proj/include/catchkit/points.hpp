#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "catchkit/errors.hpp"

namespace catchkit {

/// Flat list of points in R^d, d in {1,2,3}. Row-major (point-major).
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim, std::size_t count = 0);
  PointSet(int dim, std::vector<double> coords);

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ ? coords_.size() / dim_ : 0; }
  bool empty() const { return coords_.empty(); }

  double operator()(std::size_t i, int j) const {
    return coords_[i * dim_ + j];
  }
  double& operator()(std::size_t i, int j) { return coords_[i * dim_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }

  void append(std::span<const double> point);
  void append(const PointSet& other);

  const std::vector<double>& data() const { return coords_; }

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

/// Axis-aligned box [lo_1,hi_1] x ... x [lo_d,hi_d] with positive volume.
struct BoundingBox {
  int dim = 0;
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};

  /// Affine map of coordinate j onto [-1, 1].
  double to_unit(double x, int j) const {
    return (2.0 * x - lo[j] - hi[j]) / (hi[j] - lo[j]);
  }

  bool contains(std::span<const double> point, double tol = 1e-9) const;
};

/// Minimal axis-aligned box of the points; degenerate axes are widened
/// to [c-1, c+1] so the box always has positive volume.
BoundingBox bounding_box(const PointSet& points);

/// Finitely supported positive measure: support points plus masses.
struct DiscreteMeasure {
  PointSet points;
  std::vector<double> masses;

  DiscreteMeasure() = default;
  /// Validates sizes, positivity and finiteness.
  DiscreteMeasure(PointSet pts, std::vector<double> mass);
  /// Unit masses.
  explicit DiscreteMeasure(PointSet pts);

  std::size_t size() const { return points.size(); }
  int dim() const { return points.dim(); }
  double total_mass() const;

  DiscreteMeasure subset(std::span<const std::size_t> indices,
                         std::span<const double> new_masses) const;
};

}  // namespace catchkit
