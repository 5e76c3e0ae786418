#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdfeas/embed.hpp"

namespace sdfeas {

/// d = (d1, 0, ..., 0) together with B_1 and an orthonormal basis B_2.. of
/// the null space of the constraint matrix.
struct OrthBasis {
  double d1 = 1.0;
  SymMat B1;
  std::vector<SymMat> Bs;

  std::size_t size() const noexcept { return Bs.size() + 1; }
};

OrthBasis build_orth_basis(const Lsdfp& p);

/// max |[d B]·[−bᵀ; 𝒜ᵀ]| over all entries.
double orthogonality_defect(const Lsdfp& p, const OrthBasis& basis);

/// Â, B̂ with q = 0. Row k of each operator is stored in svec coordinates of S^{n+1}.
struct SdlcpOps {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t n1 = 0;   // n + 1
  std::size_t dim = 0;  // (n+1)(n+2)/2
  Matrix A_hat;         // dim × dim
  Matrix B_hat;         // dim × dim

  Vector apply_A(const SymMat& x_hat) const;
  Vector apply_B(const SymMat& y_hat) const;
  /// Â(X̂) + B̂(Ŷ)
  Vector residual(const SymMat& x_hat, const SymMat& y_hat) const;
  SymMat row_A(std::size_t k) const;
  SymMat row_B(std::size_t k) const;
};

SdlcpOps build_ops(const Lsdfp& p, const OrthBasis& basis);
SdlcpOps build_ops(const Lsdfp& p);

struct HatPoint {
  SymMat Xhat;
  SymMat Yhat;

  double mu() const { return trace_product(Xhat, Yhat) / static_cast<double>(Xhat.size()); }
};

HatPoint embed(const HPoint& pt);

struct BlockParts {
  SymMat X;
  SymMat Y;
  double tau = 0.0;
  double kappa = 0.0;
};

/// Inverse of embed; throws NotIterateForm when an off-block exceeds 1e-8·max(1, ‖·‖_F).
BlockParts extract(const HatPoint& hp);

/// Largest off-block entry of X̂ and Ŷ relative to max(1, ‖·‖_F).
double off_block_deviation(const HatPoint& hp);

struct Assumption32Report {
  std::size_t rank = 0;
  std::size_t expected_rank = 0;
  double monotone_worst = 0.0;  // max |Tr(X̂Ŷ)| / (‖X̂‖_F‖Ŷ‖_F) over samples
  double monotone_min = 0.0;    // min Tr(X̂Ŷ) / (‖X̂‖_F‖Ŷ‖_F)
  bool monotone_ok = true;
  bool existence_ok = true;
  bool surjective_ok = false;
  std::vector<std::string> failures;

  bool passed() const { return monotone_ok && existence_ok && surjective_ok; }
};

Assumption32Report check_assumption_3_2(const SdlcpOps& ops, int trials, std::uint64_t seed = 1);

/// Every entry of B̂(Ŷ₀) except the B_1 row is ≤ 1e-10·‖Ŷ₀‖_F.
bool check_condition_52(const SdlcpOps& ops, const SymMat& yhat0);

struct B122Result {
  bool original_ok = false;
  bool vacuous = false;
  double block_norm = 0.0;
  int retries = 0;
  OrthBasis basis;  // original or adjusted
};

/// Norm of the kernel-of-X* block of QᵀB_1Q for a witness partition.
double b1_22_norm(const OrthBasis& basis, const Witness& w);

/// Checks (B_1)_22 ≠ 0 and, if needed, mixes in null-space matrices. Throws CannotSatisfyB122.
B122Result check_B1_22(const OrthBasis& basis, const Witness& w, std::uint64_t seed = 1);

}  // namespace sdfeas
