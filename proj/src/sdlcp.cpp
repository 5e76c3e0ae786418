#include "sdfeas/sdlcp.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sdfeas/errors.hpp"

namespace sdfeas {

OrthBasis build_orth_basis(const Lsdfp& p) {
  require_valid(p);
  const Matrix a = p.constraint_matrix();
  OrthBasis basis;
  basis.d1 = 1.0;
  basis.B1 = smat(min_norm_solution(a, p.b));
  const Matrix ns = null_space_rows(a);
  for (std::size_t k = 0; k < ns.rows(); ++k) basis.Bs.push_back(smat(ns.row(k)));
  return basis;
}

double orthogonality_defect(const Lsdfp& p, const OrthBasis& basis) {
  double worst = 0.0;
  for (std::size_t i = 0; i < p.m; ++i) {
    worst = std::max(worst, std::abs(trace_product(basis.B1, p.A[i]) - basis.d1 * p.b[i]));
    for (const auto& bj : basis.Bs) worst = std::max(worst, std::abs(trace_product(bj, p.A[i])));
  }
  return worst;
}

// ---------------------------------------------------------------- operators

Vector SdlcpOps::apply_A(const SymMat& x_hat) const {
  if (x_hat.size() != n1) throw Error(ErrorCode::DimensionMismatch, "A-hat argument");
  return A_hat * svec(x_hat);
}

Vector SdlcpOps::apply_B(const SymMat& y_hat) const {
  if (y_hat.size() != n1) throw Error(ErrorCode::DimensionMismatch, "B-hat argument");
  return B_hat * svec(y_hat);
}

Vector SdlcpOps::residual(const SymMat& x_hat, const SymMat& y_hat) const {
  Vector r = apply_A(x_hat);
  const Vector rb = apply_B(y_hat);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += rb[k];
  return r;
}

SymMat SdlcpOps::row_A(std::size_t k) const { return smat(A_hat.row(k)); }
SymMat SdlcpOps::row_B(std::size_t k) const { return smat(B_hat.row(k)); }

SdlcpOps build_ops(const Lsdfp& p, const OrthBasis& basis) {
  SdlcpOps ops;
  ops.n = p.n;
  ops.m = p.m;
  ops.n1 = p.n + 1;
  ops.dim = svec_dim(ops.n1);
  ops.A_hat = Matrix(ops.dim, ops.dim);
  ops.B_hat = Matrix(ops.dim, ops.dim);
  if (basis.size() + p.m + p.n != ops.dim)
    throw Error(ErrorCode::DimensionMismatch, "basis size does not complete the operator rows");

  auto put = [](Matrix& target, std::size_t row, const SymMat& s) {
    const Vector v = svec(s);
    std::copy(v.begin(), v.end(), target.row(row).begin());
  };

  for (std::size_t i = 0; i < p.m; ++i) put(ops.A_hat, i, block_diag(p.A[i], -p.b[i]));
  // E^{i,n+1}: 1/2 in positions (i, n+1), (n+1, i); svec scales this by √2.
  for (std::size_t i = 0; i < p.n; ++i)
    ops.A_hat(p.m + i, svec_index(ops.n1, p.n, i)) = std::numbers::sqrt2 / 2.0;

  const std::size_t base = p.m + p.n;
  put(ops.B_hat, base, block_diag(basis.B1, basis.d1));
  for (std::size_t j = 0; j < basis.Bs.size(); ++j) put(ops.B_hat, base + 1 + j, block_diag(basis.Bs[j], 0.0));
  return ops;
}

SdlcpOps build_ops(const Lsdfp& p) { return build_ops(p, build_orth_basis(p)); }

// ---------------------------------------------------------------- points

HatPoint embed(const HPoint& pt) { return {block_diag(pt.X, pt.tau), block_diag(pt.Y, pt.kappa)}; }

double off_block_deviation(const HatPoint& hp) {
  const std::size_t n = hp.Xhat.size() - 1;
  const double sx = std::max(1.0, frobenius_norm(hp.Xhat));
  const double sy = std::max(1.0, frobenius_norm(hp.Yhat));
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(hp.Xhat(i, n)) / sx);
    worst = std::max(worst, std::abs(hp.Yhat(i, n)) / sy);
  }
  return worst;
}

BlockParts extract(const HatPoint& hp) {
  if (hp.Xhat.size() != hp.Yhat.size() || hp.Xhat.size() < 2)
    throw Error(ErrorCode::DimensionMismatch, "hat point blocks");
  if (off_block_deviation(hp) > 1e-8) throw Error(ErrorCode::NotIterateForm, "off-block entries are not negligible");
  const std::size_t n = hp.Xhat.size() - 1;
  BlockParts parts{SymMat(n), SymMat(n), hp.Xhat(n, n), hp.Yhat(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      parts.X.set(i, j, hp.Xhat(i, j));
      parts.Y.set(i, j, hp.Yhat(i, j));
    }
  return parts;
}

// ---------------------------------------------------------------- checkers

Assumption32Report check_assumption_3_2(const SdlcpOps& ops, int trials, std::uint64_t seed) {
  Assumption32Report rep;
  const std::size_t dim = ops.dim;
  rep.expected_rank = dim;

  Matrix joint(dim, 2 * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      joint(i, j) = ops.A_hat(i, j);
      joint(i, dim + j) = ops.B_hat(i, j);
    }
  rep.rank = numerical_rank(joint);
  rep.surjective_ok = rep.rank == dim;
  if (!rep.surjective_ok)
    rep.failures.push_back("rank [A B] = " + std::to_string(rep.rank) + " < " + std::to_string(dim));

  const Vector zero_res = ops.residual(SymMat(ops.n1), SymMat(ops.n1));
  rep.existence_ok = max_abs(zero_res) == 0.0;
  if (!rep.existence_ok) rep.failures.push_back("(0, 0) does not solve the linear part");

  const Matrix kernel = null_space_rows(joint);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  rep.monotone_min = 0.0;
  for (int t = 0; t < trials && kernel.rows() > 0; ++t) {
    Vector z(2 * dim, 0.0);
    for (std::size_t k = 0; k < kernel.rows(); ++k) {
      const double c = gauss(rng);
      auto row = kernel.row(k);
      for (std::size_t j = 0; j < z.size(); ++j) z[j] += c * row[j];
    }
    const SymMat xh = smat(std::span<const double>(z).subspan(0, dim));
    const SymMat yh = smat(std::span<const double>(z).subspan(dim, dim));
    const double scale = frobenius_norm(xh) * frobenius_norm(yh);
    if (scale == 0.0) continue;
    const double rel = trace_product(xh, yh) / scale;
    rep.monotone_worst = std::max(rep.monotone_worst, std::abs(rel));
    rep.monotone_min = std::min(rep.monotone_min, rel);
  }
  rep.monotone_ok = rep.monotone_min >= -1e-10;
  if (!rep.monotone_ok) rep.failures.push_back("negative Tr(XY) on the affine solution set");
  return rep;
}

bool check_condition_52(const SdlcpOps& ops, const SymMat& yhat0) {
  const Vector v = ops.apply_B(yhat0);
  const double tol = 1e-10 * frobenius_norm(yhat0);
  const std::size_t skip = ops.m + ops.n;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != skip && std::abs(v[k]) > tol) return false;
  return true;
}

double b1_22_norm(const OrthBasis& basis, const Witness& w) {
  const std::size_t n = basis.B1.size();
  const std::size_t r = w.partition_rank;
  if (r >= n) return 0.0;
  const Matrix rotated = w.Q.transposed() * basis.B1 * w.Q;
  double s = 0.0;
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = r; j < n; ++j) s += rotated(i, j) * rotated(i, j);
  return std::sqrt(s);
}

B122Result check_B1_22(const OrthBasis& basis, const Witness& w, std::uint64_t seed) {
  B122Result res;
  res.basis = basis;
  if (w.partition_rank >= basis.B1.size()) {
    res.vacuous = true;
    res.original_ok = true;
    return res;
  }
  res.block_norm = b1_22_norm(basis, w);
  res.original_ok = res.block_norm > 1e-10;
  if (res.original_ok) return res;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-0.1, 0.1);
  for (res.retries = 1; res.retries <= 20; ++res.retries) {
    OrthBasis trial = basis;
    for (const auto& bj : basis.Bs) trial.B1.axpy(coef(rng), bj);
    const double norm = b1_22_norm(trial, w);
    if (norm > 1e-10) {
      res.block_norm = norm;
      res.basis = std::move(trial);
      return res;
    }
  }
  throw Error(ErrorCode::CannotSatisfyB122, "no admissible B1 after 20 retries");
}

}  // namespace sdfeas
