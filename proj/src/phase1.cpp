#include "sdfeas/phase1.hpp"

#include <cmath>

#include "sdfeas/errors.hpp"

namespace sdfeas {

std::string to_string(DualInteriorStatus s) {
  switch (s) {
    case DualInteriorStatus::Found: return "Found";
    case DualInteriorStatus::NotStrictlyFeasible: return "NotStrictlyFeasible";
    case DualInteriorStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

bool has_margin(const SymMat& combo, double margin) {
  const double fro = frobenius_norm(combo);
  if (fro == 0.0) return false;
  return min_eigenvalue(-1.0 * combo) >= margin * fro;
}

DualInterior normalized(const Lsdfp& p, Vector y) {
  DualInterior out;
  const double lmin = min_eigenvalue(-1.0 * p.combine(y));
  for (double& v : y) v /= lmin;
  out.Y0 = -1.0 * p.combine(y);
  out.y0 = std::move(y);
  out.status = DualInteriorStatus::Found;
  return out;
}

}  // namespace

DualInterior find_dual_interior(const Lsdfp& p, double margin, const Params& params) {
  require_valid(p);

  // If −I = Σ y_i A_i is solvable the answer is immediate.
  const Matrix a = p.constraint_matrix();
  const Vector target = svec(-1.0 * SymMat::identity(p.n));
  const Vector y_direct = PivotedQr(a.transposed()).solve_least_squares(target);
  const SymMat direct = p.combine(y_direct);
  if (frobenius_norm(direct + SymMat::identity(p.n)) <= 1e-10 * std::sqrt(static_cast<double>(p.n)))
    return normalized(p, y_direct);

  Lsdfp aux;
  aux.n = p.n;
  aux.m = p.m + 1;
  aux.A = p.A;
  aux.A.push_back(-1.0 * SymMat::identity(p.n));
  aux.b.assign(p.m, 0.0);
  aux.b.push_back(-1.0);

  Vector found;
  RunOptions opts;
  opts.observer = [&](const HPoint& pt, int) {
    Vector y(pt.y.begin(), pt.y.begin() + static_cast<std::ptrdiff_t>(p.m));
    if (has_margin(p.combine(y), margin)) {
      found = std::move(y);
      return true;
    }
    return false;
  };

  RunResult res;
  try {
    res = run(aux, cold_start(aux, 1.0), params, opts);
  } catch (const RunBreach& e) {
    DualInterior out;
    if (!found.empty()) out = normalized(p, std::move(found));
    out.iterations = static_cast<int>(e.trace().size());
    return out;
  }
  DualInterior out;
  if (!found.empty()) {
    out = normalized(p, std::move(found));
  } else {
    Vector y(res.point.y.begin(), res.point.y.begin() + static_cast<std::ptrdiff_t>(p.m));
    if (has_margin(p.combine(y), margin)) {
      out = normalized(p, std::move(y));
    } else if (res.status == Status::Solved || res.status == Status::MuFloor) {
      out.status = DualInteriorStatus::NotStrictlyFeasible;
    } else {
      out.status = DualInteriorStatus::Inconclusive;
    }
  }
  out.iterations = static_cast<int>(res.trace.size());
  out.aux_status = res.status;
  return out;
}

HPoint centered_start(const Lsdfp& p, std::span<const double> y0, const SymMat& Y0, double mu0) {
  if (!(mu0 > 0.0)) throw Error(ErrorCode::InvalidParams, "mu0 must be positive");
  const SymMat s = p.combine(y0) + Y0;
  if (frobenius_norm(s) > 1e-10 * (1.0 + frobenius_norm(Y0)))
    throw Error(ErrorCode::NotDualFeasible, "sum y0_i A_i + Y0 != 0");
  if (!(min_eigenvalue(Y0) > 0.0)) throw Error(ErrorCode::NotDualFeasible, "Y0 is not positive definite");
  HPoint pt;
  pt.X = mu0 * inverse_pd(Y0);
  pt.y.assign(y0.begin(), y0.end());
  pt.Y = Y0;
  pt.tau = 1.0;
  pt.kappa = mu0;
  return pt;
}

HPoint cold_start(const Lsdfp& p, double rho) {
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidParams, "rho must be positive");
  HPoint pt;
  pt.X = rho * SymMat::identity(p.n);
  pt.y.assign(p.m, 0.0);
  pt.Y = rho * SymMat::identity(p.n);
  pt.tau = rho;
  pt.kappa = rho;
  return pt;
}

}  // namespace sdfeas
