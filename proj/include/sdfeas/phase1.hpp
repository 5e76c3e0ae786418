#pragma once

#include "sdfeas/embed.hpp"
#include "sdfeas/ipm.hpp"

namespace sdfeas {

enum class DualInteriorStatus { Found, NotStrictlyFeasible, Inconclusive };

std::string to_string(DualInteriorStatus s);

struct DualInterior {
  DualInteriorStatus status = DualInteriorStatus::Inconclusive;
  Vector y0;
  SymMat Y0;               // −Σ y0_i A_i, scaled so λ_min(Y0) = 1
  int iterations = 0;      // phase-I iterations (0 when I ∈ span{A_i})
  Status aux_status = Status::Continue;
};

/// Searches for y with −Σ y_i A_i ≻ 0 (relative margin λ_min ≥ margin·‖Σ y_i A_i‖_F)
/// through the auxiliary instance (A_1..A_m, −I), b̃ = (0, ..., 0, −1).
DualInterior find_dual_interior(const Lsdfp& p, double margin = 1e-3, const Params& params = {});

/// X0 = μ0·Y0⁻¹, τ0 = 1, κ0 = μ0. Throws NotDualFeasible.
HPoint centered_start(const Lsdfp& p, std::span<const double> y0, const SymMat& Y0, double mu0 = 1.0);

/// X = Y = ρI, y = 0, τ = κ = ρ.
HPoint cold_start(const Lsdfp& p, double rho = 1.0);

}  // namespace sdfeas
