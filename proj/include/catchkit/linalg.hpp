#pragma once

#include <cstddef>
#include <vector>

#include "catchkit/matrix.hpp"

namespace catchkit {

/// Householder QR factorization with column pivoting,
///   a(:, perm) = q * r,
/// where q has orthonormal columns, r is upper triangular with
/// diagonal normalized to be nonnegative and non-increasing in
/// magnitude. Pivoting selects at each step the remaining column of
/// largest residual norm; ties go to the lowest column index.
struct PivotedQR {
  Matrix q;                      // rows x k, k = min(rows, cols)
  Matrix r;                      // k x cols
  std::vector<std::size_t> perm; // original(:, perm) = q * r
};

PivotedQR pivoted_qr(const Matrix& a);

/// Singular values of a, largest first, via one-sided Jacobi applied
/// to the pivoted-QR triangular factor. Only the values are computed.
std::vector<double> singular_values(const Matrix& a);

/// Number of singular values exceeding rtol * sigma_max. A
/// non-positive rtol selects the default max(rows, cols) * eps.
std::size_t numerical_rank(const Matrix& a, double rtol = 0.0);

/// Back substitution for upper-triangular r. Diagonal entries below
/// 1e-14 * max|diag| raise SingularSystemError.
std::vector<double> solve_upper_triangular(const Matrix& r,
                                           std::span<const double> rhs);

/// Least-squares solve min ||a x - rhs||_2 through pivoted QR; used to
/// re-solve basic systems from original data. a must have full column
/// rank at the triangular-solve tolerance.
std::vector<double> solve_least_squares(const Matrix& a,
                                        std::span<const double> rhs);

}  // namespace catchkit
