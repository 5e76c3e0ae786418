#include "sdfeas/newton.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sdfeas/errors.hpp"

namespace sdfeas {

namespace {

struct SvecSlot {
  std::size_t i;
  std::size_t j;
  double value;  // entry of smat(e_k) at (i, j) and (j, i)
};

std::vector<SvecSlot> svec_slots(std::size_t n) {
  std::vector<SvecSlot> slots;
  slots.reserve(svec_dim(n));
  for (std::size_t j = 0; j < n; ++j) {
    slots.push_back({j, j, 1.0});
    for (std::size_t i = j + 1; i < n; ++i) slots.push_back({i, j, 1.0 / std::numbers::sqrt2});
  }
  return slots;
}

// svec(L E R + (L E R)ᵀ) for E = smat(e_k), written into column `col` starting at `row0`.
void put_sym_product(Matrix& k, std::size_t row0, std::size_t col, const Matrix& l, const Matrix& r,
                     const SvecSlot& e, double scale) {
  const std::size_t n = l.rows();
  auto p = [&](std::size_t a, std::size_t b) {
    double v = l(a, e.i) * r(e.j, b);
    if (e.i != e.j) v += l(a, e.j) * r(e.i, b);
    return e.value * v;
  };
  std::size_t idx = row0;
  for (std::size_t b = 0; b < n; ++b) {
    k(idx++, col) += scale * 2.0 * p(b, b);
    for (std::size_t a = b + 1; a < n; ++a) k(idx++, col) += scale * std::numbers::sqrt2 * (p(a, b) + p(b, a));
  }
}

// Rows [row0, row0 + ñ) of the symmetrized HKM equation:
//   S(XΔY + ΔXY)S⁻¹ + transpose, S = Y^{1/2}.
// The ΔX part collapses to 2·SΔXS because Y·S⁻¹ = S.
void assemble_hkm(Matrix& k, std::size_t row0, std::size_t colX, std::size_t colY, const SymMat& x,
                  const PsdRoot& root) {
  const std::size_t n = x.size();
  const Matrix s = root.root.dense();
  const Matrix sinv = root.inv_root.dense();
  const Matrix sx = s * x;
  const auto slots = svec_slots(n);
  for (std::size_t c = 0; c < slots.size(); ++c) {
    put_sym_product(k, row0, colX + c, s, s, slots[c], 1.0);
    put_sym_product(k, row0, colY + c, sx, sinv, slots[c], 1.0);
  }
}

// svec(2(c·I − S X S))
Vector hkm_rhs(const SymMat& x, const PsdRoot& root, double center) {
  SymMat w = SymMat::symmetric_part(root.root * x * root.root);
  w *= -2.0;
  for (std::size_t i = 0; i < w.size(); ++i) w.set(i, i, w(i, i) + 2.0 * center);
  return svec(w);
}

Vector solve_refined(const Matrix& k, const Vector& rhs, double& condition) {
  LuFactorization lu(k);
  condition = lu.condition_estimate();
  if (lu.singular()) {
    std::ostringstream msg;
    msg << "Newton matrix of order " << k.rows() << " is singular (condition estimate " << condition << ")";
    throw Error(ErrorCode::SingularNewtonSystem, msg.str());
  }
  Vector x = lu.solve(rhs);
  // One refinement step, residual accumulated in extended precision.
  Vector res(x.size());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    long double acc = rhs[i];
    for (std::size_t j = 0; j < k.cols(); ++j) acc -= static_cast<long double>(k(i, j)) * x[j];
    res[i] = static_cast<double>(acc);
  }
  const Vector corr = lu.solve(res);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += corr[i];
  for (double v : x)
    if (!std::isfinite(v)) throw Error(ErrorCode::SingularNewtonSystem, "non-finite Newton direction");
  return x;
}

PsdRoot interior_root(const SymMat& y) {
  try {
    return psd_sqrt(y, 0.0);
  } catch (const Error&) {
    throw Error(ErrorCode::NotInterior, "dual matrix is not positive definite");
  }
}

}  // namespace

Direction solve_direction(const Lsdfp& p, const HPoint& pt, double sigma, std::span<const double> rbar,
                          const SymMat& sbar, double gbar) {
  return solve_direction_centered(p, pt, sigma * pt.mu(), rbar, sbar, gbar);
}

Direction solve_direction_centered(const Lsdfp& p, const HPoint& pt, double center,
                                   std::span<const double> rbar, const SymMat& sbar, double gbar) {
  const std::size_t n = p.n;
  const std::size_t m = p.m;
  if (pt.X.size() != n || pt.Y.size() != n || pt.y.size() != m || rbar.size() != m || sbar.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "Newton system inputs");

  const std::size_t nt = svec_dim(n);
  const std::size_t cX = 0, cy = nt, cY = nt + m, ctau = 2 * nt + m, ckap = ctau + 1;
  const std::size_t r1 = 0, r2 = nt, r3 = nt + 1, r4 = nt + 1 + m, r5 = 2 * nt + 1 + m;
  const std::size_t dim = 2 * nt + m + 2;

  const PsdRoot root = interior_root(pt.Y);
  Matrix k(dim, dim);
  Vector rhs(dim, 0.0);

  assemble_hkm(k, r1, cX, cY, pt.X, root);
  const Vector h = hkm_rhs(pt.X, root, center);
  std::copy(h.begin(), h.end(), rhs.begin() + static_cast<std::ptrdiff_t>(r1));

  k(r2, ctau) = pt.kappa;
  k(r2, ckap) = pt.tau;
  rhs[r2] = center - pt.tau * pt.kappa;

  for (std::size_t i = 0; i < m; ++i) {
    const Vector a = svec(p.A[i]);
    for (std::size_t c = 0; c < nt; ++c) {
      k(r3 + i, cX + c) = a[c];
      k(r4 + c, cy + i) = a[c];
    }
    k(r3 + i, ctau) = -p.b[i];
    rhs[r3 + i] = -rbar[i];
  }

  const Vector sv = svec(sbar);
  for (std::size_t c = 0; c < nt; ++c) {
    k(r4 + c, cY + c) = 1.0;
    rhs[r4 + c] = -sv[c];
  }

  k(r5, ckap) = 1.0;
  for (std::size_t i = 0; i < m; ++i) k(r5, cy + i) = -p.b[i];
  rhs[r5] = -gbar;

  Direction d;
  const Vector sol = solve_refined(k, rhs, d.condition);
  const std::span<const double> v(sol);
  d.dX = smat(v.subspan(cX, nt));
  d.dy.assign(sol.begin() + static_cast<std::ptrdiff_t>(cy), sol.begin() + static_cast<std::ptrdiff_t>(cY));
  d.dY = smat(v.subspan(cY, nt));
  d.dtau = sol[ctau];
  d.dkappa = sol[ckap];
  return d;
}

HatDirection solve_hat_direction(const SdlcpOps& ops, const HatPoint& hp, double sigma, std::span<const double> rbar) {
  return solve_hat_direction_centered(ops, hp, sigma * hp.mu(), rbar);
}

HatDirection solve_hat_direction_centered(const SdlcpOps& ops, const HatPoint& hp, double center,
                                          std::span<const double> rbar) {
  const std::size_t nt = ops.dim;
  if (hp.Xhat.size() != ops.n1 || hp.Yhat.size() != ops.n1 || rbar.size() != nt)
    throw Error(ErrorCode::DimensionMismatch, "hat Newton system inputs");

  const PsdRoot root = interior_root(hp.Yhat);
  Matrix k(2 * nt, 2 * nt);
  Vector rhs(2 * nt, 0.0);

  assemble_hkm(k, 0, 0, nt, hp.Xhat, root);
  const Vector h = hkm_rhs(hp.Xhat, root, center);
  std::copy(h.begin(), h.end(), rhs.begin());

  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t c = 0; c < nt; ++c) {
      k(nt + i, c) = ops.A_hat(i, c);
      k(nt + i, nt + c) = ops.B_hat(i, c);
    }
    rhs[nt + i] = -rbar[i];
  }

  HatDirection d;
  const Vector sol = solve_refined(k, rhs, d.condition);
  const std::span<const double> v(sol);
  d.dXhat = smat(v.subspan(0, nt));
  d.dYhat = smat(v.subspan(nt, nt));
  return d;
}

double delta_measure(const HPoint& pt, const Direction& d) {
  const PsdRoot root = interior_root(pt.Y);
  const Matrix prod = root.root * d.dX * d.dY * root.inv_root;
  const double tail = d.dtau * d.dkappa;
  return std::hypot(frobenius_norm(prod), tail) / pt.mu();
}

double delta_measure(const HatPoint& hp, const HatDirection& d) {
  const PsdRoot root = interior_root(hp.Yhat);
  const Matrix prod = root.root * d.dXhat * d.dYhat * root.inv_root;
  return frobenius_norm(prod) / hp.mu();
}

}  // namespace sdfeas
