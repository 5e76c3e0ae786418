#pragma once

// Small dense linear algebra used by the kernel and the Newton solves.
// Row-major storage, no BLAS; sizes stay in the low thousands at most.

#include <cstddef>
#include <span>
#include <vector>

namespace sdfeas {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  const std::vector<double>& data() const noexcept { return data_; }

  Matrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double frobenius_norm(const Matrix& a);
double max_abs(std::span<const double> a);

/// LU factorization with partial (row) pivoting. Pivoting order depends only
/// on the input values, so repeated solves are bitwise reproducible.
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a);

  bool singular() const noexcept { return singular_; }
  /// Ratio of largest to smallest |U_kk|; a cheap lower bound on cond(A).
  double condition_estimate() const noexcept { return cond_estimate_; }

  Vector solve(std::span<const double> rhs) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  bool singular_ = false;
  double cond_estimate_ = 0.0;
};

/// Householder QR with column pivoting, A·P = Q·R.
class PivotedQr {
 public:
  /// Columns whose pivot falls below rel_drop·|R_00| count as dependent.
  explicit PivotedQr(Matrix a, double rel_drop = 1e-10);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<std::size_t>& permutation() const noexcept { return perm_; }
  double r(std::size_t i, std::size_t j) const { return qr_(i, j); }

  /// Explicit rows()×rows() orthogonal factor.
  Matrix full_q() const;

  /// Least-squares solution of A x = b for full column rank A.
  Vector solve_least_squares(std::span<const double> b) const;

 private:
  void apply_qt(std::span<double> v) const;

  Matrix qr_;
  Vector tau_;
  std::vector<std::size_t> perm_;
  std::size_t rank_ = 0;
};

/// Numerical rank of `a` by pivoted QR (drop tolerance relative to the largest pivot).
std::size_t numerical_rank(const Matrix& a, double rel_drop = 1e-10);

/// Orthonormal basis (as rows) of the null space {x : a x = 0}.
Matrix null_space_rows(const Matrix& a, double rel_drop = 1e-10);

/// Minimum-norm solution of a x = b for full row rank a.
Vector min_norm_solution(const Matrix& a, std::span<const double> b);

}  // namespace sdfeas
