#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsecw {

/// Raised when operand shapes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by iterative or direct solvers that cannot produce a trustworthy result
/// (singular systems, iteration caps, non-symmetric input).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using DenseVector = std::vector<double>;

/// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  DenseVector column(std::size_t c) const;
  const std::vector<double>& data() const noexcept { return data_; }

  DenseMatrix transpose() const;
  /// AᵀA.
  DenseMatrix gram() const;
  /// Square submatrix on the given (row = column) indices.
  DenseMatrix principal(std::span<const std::size_t> idx) const;
  /// Columns of this matrix restricted to idx, in that order.
  DenseMatrix columns(std::span<const std::size_t> idx) const;

  bool is_symmetric(double tol = 1e-12) const;
  bool all_finite() const;
  double max_abs() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseVector mat_vec(const DenseMatrix& a, std::span<const double> x);
/// Aᵀx.
DenseVector mat_t_vec(const DenseMatrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double squared_norm(std::span<const double> a);
double norm_inf(std::span<const double> a);
/// ‖a − b‖₂
double distance(std::span<const double> a, std::span<const double> b);

/// Largest eigenvalue of a symmetric matrix by shifted power iteration.
///
/// The iteration starts from the all-ones vector and is repeated once from a
/// fixed pseudo-random vector, so an unlucky start orthogonal to the dominant
/// eigenvector cannot hide it. Throws NumericalError on non-symmetric input or
/// when the eigen-residual does not fall below tolerance within the cap.
double lambda_max_sym(const DenseMatrix& m);
/// Smallest eigenvalue, via lambda_max_sym(−M).
double lambda_min_sym(const DenseMatrix& m);
/// Largest eigenvalue of a symmetric 2×2 matrix in closed form.
double lambda_max_2x2(double a, double b, double d) noexcept;

/// Solves H x = g by Gaussian elimination with partial pivoting. Throws
/// NumericalError when a pivot falls below rel_pivot_tol · max|H|.
DenseVector solve_linear(DenseMatrix h, DenseVector g, double rel_pivot_tol = 1e-12);

/// Real roots of c3 t³ + c2 t² + c1 t + c0 in ascending order.
///
/// Leading coefficients below 1e-14 · max|c| are treated as zero, so the call
/// degrades to the quadratic, linear or constant case. Each root gets one
/// Newton step. Throws std::invalid_argument for the zero polynomial.
std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0);

}  // namespace sparsecw
