#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sdfeas/dense.hpp"

namespace sdfeas {

/// Dense symmetric n×n matrix. Both triangles are stored and every mutator
/// writes the mirrored entry, so (i,j) == (j,i) holds bit-exactly.
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(std::size_t n);

  static SymMat identity(std::size_t n);
  static SymMat diagonal(std::span<const double> d);
  /// Rejects inputs whose asymmetry exceeds tol·(1 + max|a_ij|); averages the rest.
  static SymMat from_dense(const Matrix& a, double tol = 1e-12);
  /// (M + Mᵀ)/2 for an arbitrary square M.
  static SymMat symmetric_part(const Matrix& a);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  /// Row-major copy of all n² entries.
  const std::vector<double>& entries() const noexcept { return data_; }
  Matrix dense() const;

  SymMat& operator+=(const SymMat& o);
  SymMat& operator-=(const SymMat& o);
  SymMat& operator*=(double s);
  /// this += s·o
  SymMat& axpy(double s, const SymMat& o);

  friend bool operator==(const SymMat&, const SymMat&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

SymMat operator+(SymMat a, const SymMat& b);
SymMat operator-(SymMat a, const SymMat& b);
SymMat operator*(double s, SymMat a);
Matrix operator*(const SymMat& a, const SymMat& b);
Matrix operator*(const Matrix& a, const SymMat& b);
Matrix operator*(const SymMat& a, const Matrix& b);

/// Tr(XY) = Σ_ij X_ij Y_ij for symmetric X, Y.
double trace_product(const SymMat& x, const SymMat& y);
double trace(const SymMat& x);
double frobenius_norm(const SymMat& x);

/// Block-diagonal blkdiag(x, t) of size n+1.
SymMat block_diag(const SymMat& x, double t);

/// n(n+1)/2
constexpr std::size_t svec_dim(std::size_t n) { return n * (n + 1) / 2; }

/// Column-major lower triangle with off-diagonals scaled by √2:
/// (X11, √2 X21, ..., √2 Xn1, X22, √2 X32, ..., Xnn).
Vector svec(const SymMat& x);
/// Inverse of svec; throws NotTriangular when v.size() is not n(n+1)/2.
SymMat smat(std::span<const double> v);
/// Position of (i, j), i >= j, in the svec ordering.
std::size_t svec_index(std::size_t n, std::size_t i, std::size_t j);

struct EigenDecomposition {
  Vector values;   // ascending
  Matrix vectors;  // column k pairs with values[k]
};

/// Cyclic Jacobi eigendecomposition.
EigenDecomposition eigen_sym(const SymMat& x);

double min_eigenvalue(const SymMat& x);
/// Cholesky test; cheaper than min_eigenvalue(x) > 0 and used on the step-length paths.
bool is_positive_definite(const SymMat& x);

/// ‖Y^{1/2} X Y^{1/2} − μI‖_F, evaluated in extended precision. Throws
/// NotPositiveDefinite unless Y is positive definite.
double centrality_deviation(const SymMat& x, const SymMat& y, double mu);

/// Q diag(f(λ)) Qᵀ, assembled so the result is exactly symmetric.
SymMat spectral_function(const EigenDecomposition& eig, std::span<const double> fvals);

struct PsdRoot {
  SymMat root;      // Y^{1/2}
  SymMat inv_root;  // Y^{-1/2}
  double min_eigenvalue = 0.0;
};

/// Default positive-definiteness tolerance 1e-12·(1 + ‖Y‖_F).
double pd_tolerance(const SymMat& y);

/// Symmetric square root and its inverse; throws NotPositiveDefinite when the
/// smallest eigenvalue is at or below the tolerance (negative => pd_tolerance(y)).
PsdRoot psd_sqrt(const SymMat& y, double tol = -1.0);

/// Y⁻¹ via the eigendecomposition.
SymMat inverse_pd(const SymMat& y);

}  // namespace sdfeas
