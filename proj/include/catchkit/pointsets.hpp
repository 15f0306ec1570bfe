#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "catchkit/compress.hpp"
#include "catchkit/points.hpp"

namespace catchkit {

struct BoxDomain {
  BoundingBox box;
};

struct DiskUnion {
  PointSet centers;            // 2D
  std::vector<double> radii;   // one per center, > 0
};

/// Sublevel set {x^4 + 4 y^4 <= threshold} of the reference quartic.
struct QuarticLevelSet {
  double threshold = 1.0;
};

struct DomainSpec {
  int dim = 2;
  std::variant<BoxDomain, DiskUnion, QuarticLevelSet> shape;

  bool contains(std::span<const double> point) const;
  /// Minimal axis-aligned box enclosing the domain.
  BoundingBox enclosing_box() const;
};

/// Halton sequence in [0,1]^d with prime bases 2, 3, 5. Point i (after
/// skip) has coordinate j = radical inverse of i + skip + 1 in base
/// prime_j; indexing starts at 1 so the origin is never produced.
PointSet halton(std::size_t count, int dim, std::size_t skip = 0);

/// Halton points affinely mapped into a box.
PointSet halton_in_box(std::size_t count, const BoundingBox& box,
                       std::size_t skip = 0);

/// Points satisfying the domain indicator, order preserved.
PointSet filter_domain(const PointSet& points, const DomainSpec& spec);

/// Points on the level curve x^4 + 4 y^4 = threshold, located by
/// radial bisection along equally spaced angles; every returned point
/// satisfies the level equation to 1e-10.
PointSet boundary_sample(const QuarticLevelSet& spec, std::size_t per_arc);

/// CSV point files: one point per row, columns x[,y[,z]][,weight],
/// '#' comments. A "# dim=<d>" header fixes the dimension; without it
/// dim_hint is used, and failing that all columns (up to 3) are read
/// as coordinates with unit masses. Values round-trip exactly.
DiscreteMeasure read_points(const std::filesystem::path& path,
                            int dim_hint = 0);
void write_points(const std::filesystem::path& path,
                  const DiscreteMeasure& measure);

/// Rule files are point files whose header carries the residual,
/// exactness degree and solver of the compression.
void write_rule(const std::filesystem::path& path,
                const DiscreteMeasure& original, const CompressedRule& rule);

}  // namespace catchkit
