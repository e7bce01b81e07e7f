#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace orbivol {

// Small dense row-major matrix of doubles. Everything in this project is at
// most a few dozen rows, so all algorithms are plain O(n^3) loops.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix transposed() const;

  // y = A x; x.size() must equal cols().
  std::vector<double> apply(std::span<const double> x) const;

  double max_abs() const;

  // Partial-pivot LU determinant; square matrices only.
  double determinant() const;

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double max_abs_diff(const Matrix& a, const Matrix& b);

// Solves A x = b by partial-pivot LU for small square systems.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

}  // namespace orbivol
