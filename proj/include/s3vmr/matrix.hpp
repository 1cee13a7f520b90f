#pragma once

#include <cstddef>
#include <vector>

namespace s3vmr {

// Dense row-major matrix of doubles. Everything in this project is desk
// scale (a few thousand rows at most), so dense storage is the norm.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

  double* row(std::size_t i) { return a_.data() + i * cols_; }
  const double* row(std::size_t i) const { return a_.data() + i * cols_; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// C = A * B. Row-parallel.
Matrix matmul(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

// y = A * x
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

bool is_symmetric(const Matrix& a, double tol);

// Averages a with its transpose in place.
void symmetrize(Matrix& a);

double max_abs(const Matrix& a);

// Reorders rows and columns: out(i, j) = a(perm[i], perm[j]).
Matrix permute_symmetric(const Matrix& a, const std::vector<std::size_t>& perm);

// LU factorization with partial pivoting. `singular` is set when a pivot
// collapses below a scale-relative threshold; solves are then unreliable.
struct LuFactor {
  Matrix lu;
  std::vector<std::size_t> piv;
  bool singular = false;
  double min_pivot = 0.0;

  std::vector<double> solve(const std::vector<double>& rhs) const;
  Matrix solve(const Matrix& rhs) const;
};

LuFactor lu_factor(Matrix a);

}  // namespace s3vmr
