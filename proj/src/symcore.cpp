#include "sdfeas/symcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sdfeas/errors.hpp"

namespace sdfeas {

namespace {

void require_same_size(const SymMat& a, const SymMat& b, const char* what) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, what);
}

}  // namespace

SymMat::SymMat(std::size_t n) : n_(n), data_(n * n, 0.0) {}

SymMat SymMat::identity(std::size_t n) {
  SymMat s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
  return s;
}

SymMat SymMat::diagonal(std::span<const double> d) {
  SymMat s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
  return s;
}

SymMat SymMat::from_dense(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "symmetric matrix must be square");
  const double scale = 1.0 + max_abs(a.data());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol * scale)
        throw Error(ErrorCode::NotSymmetric, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return symmetric_part(a);
}

SymMat SymMat::symmetric_part(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "symmetric part of non-square matrix");
  SymMat s(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    s.set(i, i, a(i, i));
    for (std::size_t j = 0; j < i; ++j) s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
  }
  return s;
}

Matrix SymMat::dense() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

SymMat& SymMat::operator+=(const SymMat& o) {
  require_same_size(*this, o, "symmetric sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

SymMat& SymMat::operator-=(const SymMat& o) {
  require_same_size(*this, o, "symmetric difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

SymMat& SymMat::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

SymMat& SymMat::axpy(double s, const SymMat& o) {
  require_same_size(*this, o, "symmetric axpy");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * o.data_[k];
  return *this;
}

SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
SymMat operator*(double s, SymMat a) { return a *= s; }

Matrix operator*(const SymMat& a, const SymMat& b) { return a.dense() * b.dense(); }
Matrix operator*(const Matrix& a, const SymMat& b) { return a * b.dense(); }
Matrix operator*(const SymMat& a, const Matrix& b) { return a.dense() * b; }

double trace_product(const SymMat& x, const SymMat& y) {
  require_same_size(x, y, "trace product");
  // Extended accumulation: Tr(XY) is O(μ) while the summands are O(1) near convergence.
  long double s = 0.0L;
  const auto& a = x.entries();
  const auto& b = y.entries();
  for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<long double>(a[k]) * b[k];
  return static_cast<double>(s);
}

double trace(const SymMat& x) {
  double t = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) t += x(i, i);
  return t;
}

double frobenius_norm(const SymMat& x) { return norm2(x.entries()); }

SymMat block_diag(const SymMat& x, double t) {
  const std::size_t n = x.size();
  SymMat out(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, x(i, j));
  out.set(n, n, t);
  return out;
}

std::size_t svec_index(std::size_t n, std::size_t i, std::size_t j) {
  // Column j starts after columns 0..j-1 which hold n, n-1, ..., n-j+1 entries.
  return j * n - j * (j - 1) / 2 + (i - j);
}

Vector svec(const SymMat& x) {
  const std::size_t n = x.size();
  Vector v;
  v.reserve(svec_dim(n));
  for (std::size_t j = 0; j < n; ++j) {
    v.push_back(x(j, j));
    for (std::size_t i = j + 1; i < n; ++i) v.push_back(std::numbers::sqrt2 * x(i, j));
  }
  return v;
}

SymMat smat(std::span<const double> v) {
  // n(n+1)/2 = len  =>  n = (sqrt(8 len + 1) - 1)/2
  const std::size_t len = v.size();
  auto n = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(len) + 1.0) - 1.0) / 2.0 + 0.5);
  if (svec_dim(n) != len || n == 0)
    throw Error(ErrorCode::NotTriangular, "svec length " + std::to_string(len) + " is not n(n+1)/2");
  SymMat x(n);
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    x.set(j, j, v[k++]);
    for (std::size_t i = j + 1; i < n; ++i) x.set(i, j, v[k++] / std::numbers::sqrt2);
  }
  return x;
}

// ---------------------------------------------------------------- Jacobi

namespace {

// Cyclic Jacobi on a row-major n×n array; `v` accumulates the rotations.
// A pair is settled when its coupling is negligible relative to its own
// diagonal, which keeps small eigenvalues of definite matrices accurate.
template <class T>
void jacobi_sweeps(std::vector<T>& a, std::vector<T>* v, std::size_t n, T rel_pair) {
  using std::abs;
  using std::sqrt;
  auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * n + j]; };
  auto vt = [&](std::size_t i, std::size_t j) -> T& { return (*v)[i * n + j]; };
  T fro = 0;
  for (const T& x : a) fro += x * x;
  fro = sqrt(fro);
  constexpr int kMaxSweeps = 80;

  for (int sweep = 0; sweep < kMaxSweeps && fro > 0; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = at(p, q);
        if (apq == 0) continue;
        const T app = at(p, p);
        const T aqq = at(q, q);
        if (abs(apq) <= rel_pair * sqrt(abs(app * aqq)) || abs(apq) <= T(1e-300) * fro) continue;
        rotated = true;
        const T theta = (aqq - app) / (2 * apq);
        const T t = (theta >= 0 ? T(1) : T(-1)) / (abs(theta) + sqrt(1 + theta * theta));
        const T c = 1 / sqrt(1 + t * t);
        const T s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const T akp = at(k, p);
          const T akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = at(p, k);
          const T aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0;
        at(q, p) = 0;
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;

        for (std::size_t k = 0; v && k < n; ++k) {
          const T vkp = vt(k, p);
          const T vkq = vt(k, q);
          vt(k, p) = c * vkp - s * vkq;
          vt(k, q) = s * vkp + c * vkq;
        }
      }
    }
    if (!rotated) break;
  }
}

template <class T>
std::vector<T> identity_array(std::size_t n) {
  std::vector<T> v(n * n, T(0));
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = T(1);
  return v;
}

}  // namespace

EigenDecomposition eigen_sym(const SymMat& x) {
  const std::size_t n = x.size();
  std::vector<double> a = x.entries();
  std::vector<double> v = identity_array<double>(n);
  jacobi_sweeps(a, &v, n, 1e-15);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a[order[k] * n + order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v[i * n + order[k]];
  }
  return out;
}

double centrality_deviation(const SymMat& x, const SymMat& y, double mu) {
  using LD = long double;
  const std::size_t n = y.size();
  if (x.size() != n) throw Error(ErrorCode::DimensionMismatch, "centrality deviation");
  // Y = LLᵀ gives L = Y^{1/2}U with U orthogonal, so ‖LᵀXL − μI‖_F equals the
  // deviation of Y^{1/2}XY^{1/2} without an eigendecomposition.
  std::vector<LD> l(n * n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    LD d = y(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    if (!(d > 0)) throw Error(ErrorCode::NotPositiveDefinite, "Y is not positive definite");
    const LD ljj = std::sqrt(d);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      LD acc = y(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = acc / ljj;
    }
  }
  // XL, then Lᵀ(XL); L is lower triangular.
  std::vector<LD> xl(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LD acc = 0;
      for (std::size_t k = j; k < n; ++k) acc += static_cast<LD>(x(i, k)) * l[k * n + j];
      xl[i * n + j] = acc;
    }
  LD sum = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      LD acc = 0;
      for (std::size_t k = i; k < n; ++k) acc += l[k * n + i] * xl[k * n + j];
      if (i == j) {
        acc -= static_cast<LD>(mu);
        sum += acc * acc;
      } else {
        sum += 2 * acc * acc;
      }
    }
  return static_cast<double>(std::sqrt(sum));
}

double min_eigenvalue(const SymMat& x) {
  if (x.size() == 0) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  const std::size_t n = x.size();
  std::vector<double> a = x.entries();
  jacobi_sweeps<double>(a, nullptr, n, 1e-15);
  double lo = a[0];
  for (std::size_t k = 1; k < n; ++k) lo = std::min(lo, a[k * n + k]);
  return lo;
}

bool is_positive_definite(const SymMat& x) {
  const std::size_t n = x.size();
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = x(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = x(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / ljj;
    }
  }
  return true;
}

SymMat spectral_function(const EigenDecomposition& eig, std::span<const double> fvals) {
  const std::size_t n = eig.values.size();
  SymMat out(n);
  const Matrix& q = eig.vectors;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q(i, k) * fvals[k] * q(j, k);
      out.set(i, j, s);
    }
  }
  return out;
}

double pd_tolerance(const SymMat& y) { return 1e-12 * (1.0 + frobenius_norm(y)); }

PsdRoot psd_sqrt(const SymMat& y, double tol) {
  if (tol < 0.0) tol = pd_tolerance(y);
  const EigenDecomposition eig = eigen_sym(y);
  const double lmin = eig.values.front();
  if (!(lmin > tol))
    throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue " + std::to_string(lmin));
  Vector root(eig.values.size());
  Vector inv_root(eig.values.size());
  for (std::size_t k = 0; k < root.size(); ++k) {
    root[k] = std::sqrt(eig.values[k]);
    inv_root[k] = 1.0 / root[k];
  }
  return {spectral_function(eig, root), spectral_function(eig, inv_root), lmin};
}

SymMat inverse_pd(const SymMat& y) {
  const EigenDecomposition eig = eigen_sym(y);
  if (!(eig.values.front() > 0.0))
    throw Error(ErrorCode::NotPositiveDefinite, "inverse of a non-definite matrix");
  Vector inv(eig.values.size());
  for (std::size_t k = 0; k < inv.size(); ++k) inv[k] = 1.0 / eig.values[k];
  return spectral_function(eig, inv);
}

}  // namespace sdfeas
