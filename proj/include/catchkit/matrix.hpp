#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "catchkit/errors.hpp"

namespace catchkit {

/// Dense real matrix, column-major storage.
///
/// Column-major is the layout every kernel here wants: pivoted QR,
/// the active-set solver and the simplex tableau all sweep columns.
class Matrix {
 public:
  Matrix() = default;

  /// Zero matrix of the given shape. Dimensions must be positive.
  Matrix(std::size_t rows, std::size_t cols);

  /// Matrix from column-major data; rejects non-finite entries.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> column_major);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[j * rows_ + i];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return data_[j * rows_ + i];
  }

  std::span<const double> col(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }
  std::span<double> col(std::size_t j) {
    return {data_.data() + j * rows_, rows_};
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Matrix transposed() const;

  /// Throws InvalidInputError if any entry is NaN or infinite.
  void require_finite(const char* what) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// y = a * x
std::vector<double> matvec(const Matrix& a, std::span<const double> x);

/// y = a^T * x
std::vector<double> matvec_transposed(const Matrix& a,
                                      std::span<const double> x);

Matrix matmul(const Matrix& a, const Matrix& b);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

}  // namespace catchkit
