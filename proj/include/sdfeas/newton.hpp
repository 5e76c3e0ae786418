#pragma once

#include "sdfeas/embed.hpp"
#include "sdfeas/sdlcp.hpp"

namespace sdfeas {

struct Direction {
  SymMat dX;
  Vector dy;
  SymMat dY;
  double dtau = 0.0;
  double dkappa = 0.0;
  double condition = 0.0;  // LU pivot-ratio estimate of the solved system
};

/// Dual-HKM direction with centering target σμ, μ taken at pt.
Direction solve_direction(const Lsdfp& p, const HPoint& pt, double sigma, std::span<const double> rbar,
                          const SymMat& sbar, double gbar);

/// Same system with the centering value (the σμ of the right-hand sides) given explicitly.
Direction solve_direction_centered(const Lsdfp& p, const HPoint& pt, double center,
                                   std::span<const double> rbar, const SymMat& sbar, double gbar);

struct HatDirection {
  SymMat dXhat;
  SymMat dYhat;
  double condition = 0.0;
};

HatDirection solve_hat_direction(const SdlcpOps& ops, const HatPoint& hp, double sigma, std::span<const double> rbar);

HatDirection solve_hat_direction_centered(const SdlcpOps& ops, const HatPoint& hp, double center,
                                          std::span<const double> rbar);

/// (1/μ)·‖blkdiag(Y,κ)^{1/2}·blkdiag(ΔX,Δτ)·blkdiag(ΔY,Δκ)·blkdiag(Y,κ)^{-1/2}‖_F
double delta_measure(const HPoint& pt, const Direction& d);

/// (1/μ̂)·‖Ŷ^{1/2} ΔX̂ ΔŶ Ŷ^{-1/2}‖_F
double delta_measure(const HatPoint& hp, const HatDirection& d);

}  // namespace sdfeas
