#include "sdfeas/dense.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "sdfeas/errors.hpp"

namespace sdfeas {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix sum");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  return a + (-1.0) * b;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) {
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : a) s += (v / scale) * (v / scale);
  return scale * std::sqrt(s);
}

double frobenius_norm(const Matrix& a) { return norm2(a.data()); }

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------- LU

LuFactorization::LuFactorization(Matrix a) : lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols()) throw Error(ErrorCode::DimensionMismatch, "LU needs a square matrix");
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), 0);

  double umax = 0.0;
  double umin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (p != k) {
      auto rk = lu_.row(k);
      auto rp = lu_.row(p);
      std::swap_ranges(rk.begin(), rk.end(), rp.begin());
      std::swap(perm_[k], perm_[p]);
    }
    const double pivot = lu_(k, k);
    umax = std::max(umax, std::abs(pivot));
    umin = std::min(umin, std::abs(pivot));
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      singular_ = true;
      continue;
    }
    auto rk = lu_.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto ri = lu_.row(i);
      const double f = ri[k] / pivot;
      ri[k] = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
    }
  }
  cond_estimate_ = (umin > 0.0) ? umax / umin : std::numeric_limits<double>::infinity();
}

Vector LuFactorization::solve(std::span<const double> rhs) const {
  const std::size_t n = lu_.rows();
  if (rhs.size() != n) throw Error(ErrorCode::DimensionMismatch, "LU solve rhs");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    auto ri = lu_.row(i);
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= ri[j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    auto ri = lu_.row(i);
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= ri[j] * x[j];
    x[i] = s / ri[i];
  }
  return x;
}

// ---------------------------------------------------------------- QR

PivotedQr::PivotedQr(Matrix a, double rel_drop) : qr_(std::move(a)) {
  const std::size_t m = qr_.rows();
  const std::size_t n = qr_.cols();
  const std::size_t steps = std::min(m, n);
  tau_.assign(steps, 0.0);
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), 0);

  auto col_norm2 = [&](std::size_t j, std::size_t from) {
    double s = 0.0;
    for (std::size_t i = from; i < m; ++i) s += qr_(i, j) * qr_(i, j);
    return s;
  };

  double first_pivot = 0.0;
  rank_ = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    // Recompute trailing column norms each step; sizes here are small.
    std::size_t p = k;
    double best = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      const double c = col_norm2(j, k);
      if (c > best) {
        best = c;
        p = j;
      }
    }
    if (p != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(qr_(i, k), qr_(i, p));
      std::swap(perm_[k], perm_[p]);
    }

    const double alpha_norm = std::sqrt(std::max(best, 0.0));
    if (k == 0) first_pivot = alpha_norm;
    if (alpha_norm == 0.0 || alpha_norm <= rel_drop * first_pivot) {
      // Remaining columns are numerically dependent; leave them untouched.
      break;
    }
    ++rank_;

    // Householder vector v = x - beta e1 stored below the diagonal with v_0 = 1.
    const double x0 = qr_(k, k);
    const double beta = (x0 >= 0.0) ? -alpha_norm : alpha_norm;
    const double v0 = x0 - beta;
    for (std::size_t i = k + 1; i < m; ++i) qr_(i, k) /= v0;
    tau_[k] = (beta - x0) / beta;
    qr_(k, k) = beta;

    for (std::size_t j = k + 1; j < n; ++j) {
      double s = qr_(k, j);
      for (std::size_t i = k + 1; i < m; ++i) s += qr_(i, k) * qr_(i, j);
      s *= tau_[k];
      qr_(k, j) -= s;
      for (std::size_t i = k + 1; i < m; ++i) qr_(i, j) -= s * qr_(i, k);
    }
  }
}

void PivotedQr::apply_qt(std::span<double> v) const {
  const std::size_t m = qr_.rows();
  for (std::size_t k = 0; k < rank_; ++k) {
    double s = v[k];
    for (std::size_t i = k + 1; i < m; ++i) s += qr_(i, k) * v[i];
    s *= tau_[k];
    v[k] -= s;
    for (std::size_t i = k + 1; i < m; ++i) v[i] -= s * qr_(i, k);
  }
}

Matrix PivotedQr::full_q() const {
  const std::size_t m = qr_.rows();
  Matrix q = Matrix::identity(m);
  // Q = H_0 H_1 ... H_{r-1}; apply reflectors in reverse to the identity.
  for (std::size_t k = rank_; k-- > 0;) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = q(k, j);
      for (std::size_t i = k + 1; i < m; ++i) s += qr_(i, k) * q(i, j);
      s *= tau_[k];
      q(k, j) -= s;
      for (std::size_t i = k + 1; i < m; ++i) q(i, j) -= s * qr_(i, k);
    }
  }
  return q;
}

Vector PivotedQr::solve_least_squares(std::span<const double> b) const {
  const std::size_t m = qr_.rows();
  const std::size_t n = qr_.cols();
  if (b.size() != m) throw Error(ErrorCode::DimensionMismatch, "least squares rhs");
  if (rank_ < n) throw Error(ErrorCode::DimensionMismatch, "least squares needs full column rank");
  Vector w(b.begin(), b.end());
  apply_qt(w);
  Vector z(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = w[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= qr_(i, j) * z[j];
    z[i] = s / qr_(i, i);
  }
  Vector x(n);
  for (std::size_t j = 0; j < n; ++j) x[perm_[j]] = z[j];
  return x;
}

std::size_t numerical_rank(const Matrix& a, double rel_drop) {
  return PivotedQr(a, rel_drop).rank();
}

Matrix null_space_rows(const Matrix& a, double rel_drop) {
  // a^T P = Q R; the trailing columns of Q span range(a^T)^perp = null(a).
  PivotedQr qr(a.transposed(), rel_drop);
  const Matrix q = qr.full_q();
  const std::size_t dim = a.cols();
  const std::size_t r = qr.rank();
  Matrix out(dim - r, dim);
  for (std::size_t k = r; k < dim; ++k)
    for (std::size_t i = 0; i < dim; ++i) out(k - r, i) = q(i, k);
  return out;
}

Vector min_norm_solution(const Matrix& a, std::span<const double> b) {
  // a^T P = Q1 R  =>  P^T a = R^T Q1^T; x = Q1 z with R^T z = P^T b.
  const std::size_t p = a.rows();
  if (b.size() != p) throw Error(ErrorCode::DimensionMismatch, "min-norm rhs");
  PivotedQr qr(a.transposed());
  if (qr.rank() < p) throw Error(ErrorCode::InvalidProblem, "min-norm solve needs full row rank");
  const auto& perm = qr.permutation();
  Vector z(p);
  for (std::size_t i = 0; i < p; ++i) {
    double s = b[perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= qr.r(j, i) * z[j];
    z[i] = s / qr.r(i, i);
  }
  const Matrix q = qr.full_q();
  Vector x(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t k = 0; k < p; ++k) x[i] += q(i, k) * z[k];
  return x;
}

}  // namespace sdfeas
