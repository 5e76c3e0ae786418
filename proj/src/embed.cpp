#include "sdfeas/embed.hpp"

#include <cmath>

#include "sdfeas/errors.hpp"

namespace sdfeas {

double HPoint::complementarity() const { return trace_product(X, Y) + tau * kappa; }

double HPoint::mu() const { return complementarity() / static_cast<double>(X.size() + 1); }

Residuals residuals(const Lsdfp& p, const HPoint& pt) {
  if (pt.X.size() != p.n || pt.Y.size() != p.n || pt.y.size() != p.m)
    throw Error(ErrorCode::DimensionMismatch, "point does not match the instance");
  Residuals res;
  res.r = p.apply(pt.X);
  for (std::size_t i = 0; i < p.m; ++i) res.r[i] -= p.b[i] * pt.tau;
  res.s = p.combine(pt.y);
  res.s += pt.Y;
  res.gamma = pt.kappa - dot(p.b, pt.y);
  return res;
}

double gap_identity_defect(const Lsdfp& p, const HPoint& pt) {
  const Residuals res = residuals(p, pt);
  const double lhs = pt.complementarity();
  const double rhs = trace_product(res.s, pt.X) + pt.tau * res.gamma - dot(pt.y, res.r);
  return std::abs(lhs - rhs);
}

bool is_interior(const HPoint& pt) {
  if (!(pt.tau > 0.0) || !(pt.kappa > 0.0)) return false;
  return is_positive_definite(pt.X) && is_positive_definite(pt.Y);
}

NeighborhoodDistance neighborhood_distance(const HPoint& pt) {
  if (!(pt.tau > 0.0) || !(pt.kappa > 0.0)) throw Error(ErrorCode::NotInterior, "tau and kappa must be positive");
  if (!is_positive_definite(pt.X)) throw Error(ErrorCode::NotInterior, "X is not positive definite");
  const double mu = pt.mu();
  double fro = 0.0;
  try {
    fro = centrality_deviation(pt.X, pt.Y, mu);
  } catch (const Error&) {
    throw Error(ErrorCode::NotInterior, "Y is not positive definite");
  }
  const double tk = pt.tau * pt.kappa - mu;
  return {std::hypot(fro, tk), mu};
}

bool in_neighborhood(const HPoint& pt, double beta) {
  const auto nd = neighborhood_distance(pt);
  return nd.dist <= beta * nd.mu;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Continue: return "Continue";
    case Status::Solved: return "Solved";
    case Status::NoOptimalSolution: return "NoOptimalSolution";
    case Status::MuFloor: return "MuFloor";
    case Status::MaxIter: return "MaxIter";
  }
  return "?";
}

Solution scale_out(const HPoint& pt) {
  const double inv = 1.0 / pt.tau;
  Vector y = pt.y;
  for (double& v : y) v *= inv;
  return {inv * pt.X, std::move(y), inv * pt.Y};
}

Classification classify(const Lsdfp& p, const HPoint& pt, double eps, double eps_tau) {
  Classification c;
  const Residuals res = residuals(p, pt);
  if (pt.tau > 0.0) {
    c.gap = pt.complementarity() / (pt.tau * pt.tau);
    for (double ri : res.r) c.primal = std::max(c.primal, std::abs(ri / pt.tau));
    c.dual = frobenius_norm(res.s) / pt.tau;
    if (std::max({c.gap, c.primal, c.dual}) <= eps) {
      c.status = Status::Solved;
      c.solution = scale_out(pt);
      return c;
    }
  }
  if (pt.tau <= eps_tau && pt.kappa >= pt.tau / eps_tau) c.status = Status::NoOptimalSolution;
  return c;
}

}  // namespace sdfeas
