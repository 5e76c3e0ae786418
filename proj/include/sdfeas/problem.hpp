#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdfeas/dense.hpp"
#include "sdfeas/symcore.hpp"

namespace sdfeas {

/// Feasibility instance: find X ⪰ 0 with Tr(A_i X) = b_i; the dual reads
/// Σ y_i A_i + Y = 0, Y ⪰ 0 (zero cost matrix throughout).
struct Lsdfp {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<SymMat> A;
  Vector b;

  /// m×ñ matrix whose rows are svec(A_i)ᵀ.
  Matrix constraint_matrix() const;
  /// Σ y_i A_i
  SymMat combine(std::span<const double> y) const;
  /// (Tr(A_1 X), ..., Tr(A_m X))
  Vector apply(const SymMat& x) const;
};

struct ValidationReport {
  std::size_t rank = 0;
  bool shapes_ok = true;
  bool rank_ok = false;
  bool b_nonzero = false;
  std::vector<std::string> failures;

  bool valid() const { return shapes_ok && rank_ok && b_nonzero; }
};

/// Shape checks, rank of {svec(A_i)} (must be m) and b ≠ 0.
ValidationReport validate(const Lsdfp& p);

/// Throws InvalidProblem with the report's failures unless valid.
void require_valid(const Lsdfp& p);

/// A strictly complementary solution of the instance (τ* = 1).
struct Witness {
  SymMat Xstar;
  Vector ystar;
  SymMat Ystar;
  std::size_t partition_rank = 0;  // rank of X*
  Matrix Q;                        // columns: range(X*) first, then ker(X*)
};

struct WitnessDefects {
  double primal = 0.0;          // max_i |Tr(A_i X*) − b_i|
  double dual = 0.0;            // ‖Σ y*_i A_i + Y*‖_F
  double complementarity = 0.0; // ‖X* Y*‖_F
  double gap = 0.0;             // |b·y*|
  double min_eig_sum = 0.0;     // λ_min(X* + Y*)
  double min_eig_x = 0.0;
  double min_eig_y = 0.0;
};

WitnessDefects witness_defects(const Lsdfp& p, const Witness& w);

/// Σ_j z_j B_j + B_0 ⪰ 0 with B_0 stored first.
struct Lmi {
  std::vector<SymMat> B;  // B[0] = B_0, B[1..l]

  std::size_t l() const { return B.empty() ? 0 : B.size() - 1; }
  std::size_t n() const { return B.empty() ? 0 : B.front().size(); }
  SymMat evaluate(std::span<const double> z) const;
};

/// Recovers the LMI decision variables from a feasible X = B_0 + Σ z_j B_j.
class RecoveryMap {
 public:
  explicit RecoveryMap(Lmi lmi);

  Vector recover(const SymMat& x) const;
  const Lmi& lmi() const noexcept { return lmi_; }

 private:
  Lmi lmi_;
  PivotedQr basis_qr_;
};

struct LmiConversion {
  Lsdfp problem;
  RecoveryMap recovery;
};

/// Encodes the LMI as Tr(G_k X) = Tr(G_k B_0) over an orthonormal basis {G_k}
/// of span{B_1..B_l}^⊥. Throws DegenerateLmi or ZeroRhs.
LmiConversion from_lmi(const Lmi& lmi);

struct GeneratedInstance {
  Lsdfp problem;
  Witness witness;
  int attempts = 0;
};

/// Random instance with a known strictly complementary witness and a
/// strictly feasible dual; deterministic in `seed`.
GeneratedInstance generate(std::size_t n, std::size_t m, std::size_t r, std::uint64_t seed,
                           int retry_budget = 50);

}  // namespace sdfeas
