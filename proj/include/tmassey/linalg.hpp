#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tmassey::linalg {

// Dense row-major matrix. Sized for season-scale problems (n in the tens).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool is_symmetric(double tol = 0.0) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
// a^T * diag(w) * b; w empty means identity.
Matrix gram(const Matrix& a, const Matrix& b, std::span<const double> w = {});
std::vector<double> multiply(const Matrix& a, std::span<const double> x);

double norm2(std::span<const double> x);
double max_abs_offdiag(const Matrix& a);

// Solves a x = b. Cholesky when `a` is symmetric positive definite,
// partial-pivot LU otherwise. One step of iterative refinement is applied.
// Throws SingularSystem when a pivot vanishes.
std::vector<double> solve(const Matrix& a, std::span<const double> b);

struct EigenResult {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
  int sweeps = 0;
};

// Cyclic Jacobi for symmetric matrices. Iterates until the off-diagonal
// Frobenius norm drops below `tol` or `max_sweeps` is reached.
EigenResult symmetric_eigen(const Matrix& a, double tol = 1e-12, int max_sweeps = 100);

}  // namespace tmassey::linalg
