#pragma once

#include <optional>
#include <string>

#include "sdfeas/problem.hpp"

namespace sdfeas {

/// Iterate of the homogeneous model (X, y, Y, τ, κ).
struct HPoint {
  SymMat X;
  Vector y;
  SymMat Y;
  double tau = 0.0;
  double kappa = 0.0;

  /// Tr(XY) + τκ
  double complementarity() const;
  /// (Tr(XY) + τκ)/(n+1)
  double mu() const;
};

struct Residuals {
  Vector r;     // Tr(A_i X) − b_i τ
  SymMat s;     // Σ y_i A_i + Y
  double gamma = 0.0;  // κ − b·y
};

Residuals residuals(const Lsdfp& p, const HPoint& pt);

/// Numerical defect of Tr(XY) + τκ = Tr(sX) + τγ − y·r.
double gap_identity_defect(const Lsdfp& p, const HPoint& pt);

struct NeighborhoodDistance {
  double dist = 0.0;
  double mu = 0.0;
};

/// ‖Y^{1/2} X Y^{1/2} − μI‖_F² + (τκ − μ)², square-rooted. Throws NotInterior.
NeighborhoodDistance neighborhood_distance(const HPoint& pt);

/// dist ≤ β·μ with μ the point's own complementarity measure.
bool in_neighborhood(const HPoint& pt, double beta);

/// True when X, Y are positive definite and τ, κ > 0.
bool is_interior(const HPoint& pt);

enum class Status { Continue, Solved, NoOptimalSolution, MuFloor, MaxIter };

std::string to_string(Status s);

struct Solution {
  SymMat X;
  Vector y;
  SymMat Y;
};

struct Classification {
  Status status = Status::Continue;
  double gap = 0.0;        // (Tr(XY) + τκ)/τ²
  double primal = 0.0;     // max_i |r_i/τ|
  double dual = 0.0;       // ‖s/τ‖_F
  std::optional<Solution> solution;
};

/// (X/τ, y/τ, Y/τ)
Solution scale_out(const HPoint& pt);

Classification classify(const Lsdfp& p, const HPoint& pt, double eps, double eps_tau);

}  // namespace sdfeas
