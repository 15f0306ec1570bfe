#include "catchkit/polyspace.hpp"

#include <cmath>
#include <string>

namespace catchkit {

std::size_t space_dimension(int dim, int degree) {
  if (dim < 1 || degree < 0) {
    throw InvalidInputError("space_dimension: need dim >= 1, degree >= 0");
  }
  // binomial(degree + dim, dim)
  std::size_t value = 1;
  for (int i = 1; i <= dim; ++i) {
    value = value * static_cast<std::size_t>(degree + i) /
            static_cast<std::size_t>(i);
  }
  return value;
}

std::vector<MultiIndex> exponent_list(int dim, int degree) {
  if (dim < 1 || dim > 3 || degree < 0) {
    throw InvalidInputError("exponent_list: need 1 <= dim <= 3, degree >= 0");
  }
  std::vector<MultiIndex> out;
  out.reserve(space_dimension(dim, degree));
  for (int total = 0; total <= degree; ++total) {
    if (dim == 1) {
      out.push_back({total, 0, 0});
    } else if (dim == 2) {
      for (int a = total; a >= 0; --a) out.push_back({a, total - a, 0});
    } else {
      for (int a = total; a >= 0; --a) {
        for (int b = total - a; b >= 0; --b) {
          out.push_back({a, b, total - a - b});
        }
      }
    }
  }
  return out;
}

PolynomialSpace::PolynomialSpace(int dim, int degree, BoundingBox bbox)
    : dim_(dim), degree_(degree), bbox_(bbox),
      exponents_(exponent_list(dim, degree)) {
  if (bbox_.dim != dim) {
    throw InvalidInputError("PolynomialSpace: box dimension mismatch");
  }
  for (int j = 0; j < dim; ++j) {
    if (!(bbox_.hi[j] > bbox_.lo[j])) {
      throw InvalidInputError("PolynomialSpace: box must have positive volume");
    }
  }
}

Matrix vandermonde(const PointSet& points, const PolynomialSpace& space) {
  if (points.dim() != space.dim()) {
    throw InvalidInputError("vandermonde: point dimension mismatch");
  }
  if (points.empty()) {
    throw InvalidInputError("vandermonde: empty point set");
  }
  const std::size_t count = points.size();
  const int d = space.dim();
  const int nu = space.degree();
  const BoundingBox& box = space.bbox();

  // Per-axis Chebyshev tables T_0..T_nu at the mapped coordinates.
  // The map may overshoot [-1,1] by rounding at the box faces; beyond
  // a hair of slack the point is rejected to protect conditioning.
  const double slack = 1e-9;
  const std::size_t width = static_cast<std::size_t>(nu) + 1;
  std::vector<std::vector<double>> cheb(d);
  for (int j = 0; j < d; ++j) {
    cheb[j].resize(count * width);
    for (std::size_t i = 0; i < count; ++i) {
      const double t = box.to_unit(points(i, j), j);
      if (!(t >= -1.0 - slack && t <= 1.0 + slack)) {
        throw OutOfDomainError("vandermonde: point " + std::to_string(i) +
                               " lies outside the bounding box");
      }
      double* row = cheb[j].data() + i * width;
      row[0] = 1.0;
      if (nu >= 1) row[1] = t;
      for (int k = 2; k <= nu; ++k) {
        row[k] = 2.0 * t * row[k - 1] - row[k - 2];
      }
    }
  }

  const auto& exps = space.exponents();
  Matrix v(count, exps.size());
  for (std::size_t k = 0; k < exps.size(); ++k) {
    auto col = v.col(k);
    const MultiIndex& alpha = exps[k];
    for (std::size_t i = 0; i < count; ++i) {
      double prod = cheb[0][i * width + alpha[0]];
      for (int j = 1; j < d; ++j) prod *= cheb[j][i * width + alpha[j]];
      col[i] = prod;
    }
  }
  return v;
}

}  // namespace catchkit
