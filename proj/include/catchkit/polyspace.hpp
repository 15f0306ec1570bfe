#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "catchkit/matrix.hpp"
#include "catchkit/points.hpp"

namespace catchkit {

using MultiIndex = std::array<int, 3>;  // unused trailing entries are 0

/// dim(P^d_nu) = binomial(nu + d, d).
std::size_t space_dimension(int dim, int degree);

/// Multi-indices |alpha| <= degree in graded lexicographic order:
/// total degree ascending, first coordinate descending within a
/// degree. The zero index comes first, and the degree-k list is a
/// prefix of the degree-nu list for k <= nu.
std::vector<MultiIndex> exponent_list(int dim, int degree);

/// Total-degree polynomial space on a bounding box, evaluated in the
/// product Chebyshev basis of the box.
class PolynomialSpace {
 public:
  PolynomialSpace(int dim, int degree, BoundingBox bbox);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const BoundingBox& bbox() const { return bbox_; }
  const std::vector<MultiIndex>& exponents() const { return exponents_; }
  std::size_t size() const { return exponents_.size(); }

 private:
  int dim_;
  int degree_;
  BoundingBox bbox_;
  std::vector<MultiIndex> exponents_;
};

/// Vandermonde-like matrix V(i,k) = prod_j T_{alpha(k,j)}(t_ij) where t
/// is the point mapped onto [-1,1]^d by the space's box. Points more
/// than a hair outside the box raise OutOfDomainError.
Matrix vandermonde(const PointSet& points, const PolynomialSpace& space);

}  // namespace catchkit
