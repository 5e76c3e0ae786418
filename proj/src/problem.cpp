#include "sdfeas/problem.hpp"

#include <cmath>
#include <random>

#include "sdfeas/errors.hpp"
#include "sdfeas/phase1.hpp"

namespace sdfeas {

Matrix Lsdfp::constraint_matrix() const {
  const std::size_t dim = svec_dim(n);
  Matrix a(A.size(), dim);
  for (std::size_t i = 0; i < A.size(); ++i) {
    const Vector v = svec(A[i]);
    std::copy(v.begin(), v.end(), a.row(i).begin());
  }
  return a;
}

SymMat Lsdfp::combine(std::span<const double> y) const {
  if (y.size() != A.size()) throw Error(ErrorCode::DimensionMismatch, "multiplier count");
  SymMat s(n);
  for (std::size_t i = 0; i < A.size(); ++i) s.axpy(y[i], A[i]);
  return s;
}

Vector Lsdfp::apply(const SymMat& x) const {
  Vector out(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) out[i] = trace_product(A[i], x);
  return out;
}

ValidationReport validate(const Lsdfp& p) {
  ValidationReport rep;
  if (p.n == 0) {
    rep.shapes_ok = false;
    rep.failures.push_back("n must be positive");
  }
  if (p.m != p.A.size() || p.m != p.b.size()) {
    rep.shapes_ok = false;
    rep.failures.push_back("m does not match the number of matrices / rhs entries");
  }
  if (p.m == 0) {
    rep.shapes_ok = false;
    rep.failures.push_back("at least one constraint is required");
  }
  if (p.m > svec_dim(p.n)) {
    rep.shapes_ok = false;
    rep.failures.push_back("m exceeds n(n+1)/2");
  }
  for (const auto& a : p.A) {
    if (a.size() != p.n) {
      rep.shapes_ok = false;
      rep.failures.push_back("constraint matrix of wrong dimension");
      break;
    }
  }
  if (!rep.shapes_ok) return rep;

  rep.rank = numerical_rank(p.constraint_matrix());
  rep.rank_ok = rep.rank == p.m;
  if (!rep.rank_ok)
    rep.failures.push_back("constraint matrices are linearly dependent: rank " + std::to_string(rep.rank) +
                           " < m = " + std::to_string(p.m));
  for (double bi : p.b)
    if (bi != 0.0) rep.b_nonzero = true;
  if (!rep.b_nonzero) rep.failures.push_back("right-hand side b is zero");
  return rep;
}

void require_valid(const Lsdfp& p) {
  const ValidationReport rep = validate(p);
  if (rep.valid()) return;
  std::string msg;
  for (const auto& f : rep.failures) msg += (msg.empty() ? "" : "; ") + f;
  throw Error(ErrorCode::InvalidProblem, msg);
}

WitnessDefects witness_defects(const Lsdfp& p, const Witness& w) {
  WitnessDefects d;
  const Vector ax = p.apply(w.Xstar);
  for (std::size_t i = 0; i < p.m; ++i) d.primal = std::max(d.primal, std::abs(ax[i] - p.b[i]));
  d.dual = frobenius_norm(p.combine(w.ystar) + w.Ystar);
  d.complementarity = frobenius_norm(w.Xstar * w.Ystar);
  d.gap = std::abs(dot(p.b, w.ystar));
  d.min_eig_sum = min_eigenvalue(w.Xstar + w.Ystar);
  d.min_eig_x = min_eigenvalue(w.Xstar);
  d.min_eig_y = min_eigenvalue(w.Ystar);
  return d;
}

// ---------------------------------------------------------------- LMI

SymMat Lmi::evaluate(std::span<const double> z) const {
  if (z.size() != l()) throw Error(ErrorCode::DimensionMismatch, "LMI variable count");
  SymMat s = B.front();
  for (std::size_t j = 0; j < z.size(); ++j) s.axpy(z[j], B[j + 1]);
  return s;
}

namespace {

Matrix lmi_basis_columns(const Lmi& lmi) {
  const std::size_t dim = svec_dim(lmi.n());
  Matrix cols(dim, lmi.l());
  for (std::size_t j = 0; j < lmi.l(); ++j) {
    const Vector v = svec(lmi.B[j + 1]);
    for (std::size_t i = 0; i < dim; ++i) cols(i, j) = v[i];
  }
  return cols;
}

}  // namespace

RecoveryMap::RecoveryMap(Lmi lmi) : lmi_(std::move(lmi)), basis_qr_(lmi_basis_columns(lmi_)) {}

Vector RecoveryMap::recover(const SymMat& x) const {
  if (x.size() != lmi_.n()) throw Error(ErrorCode::DimensionMismatch, "recovery input dimension");
  if (lmi_.l() == 0) return {};
  Vector rhs = svec(x);
  const Vector b0 = svec(lmi_.B.front());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= b0[i];
  return basis_qr_.solve_least_squares(rhs);
}

LmiConversion from_lmi(const Lmi& lmi) {
  if (lmi.B.empty()) throw Error(ErrorCode::DegenerateLmi, "no matrices given");
  const std::size_t n = lmi.n();
  for (const auto& bj : lmi.B)
    if (bj.size() != n) throw Error(ErrorCode::DimensionMismatch, "LMI matrices differ in size");
  const std::size_t dim = svec_dim(n);
  const std::size_t l = lmi.l();
  if (l >= dim) throw Error(ErrorCode::DegenerateLmi, "l >= n(n+1)/2 leaves no constraints");

  Matrix brows(l, dim);
  for (std::size_t j = 0; j < l; ++j) {
    const Vector v = svec(lmi.B[j + 1]);
    std::copy(v.begin(), v.end(), brows.row(j).begin());
  }
  if (l > 0 && numerical_rank(brows) < l)
    throw Error(ErrorCode::DegenerateLmi, "B_1..B_l are linearly dependent");

  const Matrix complement = (l > 0) ? null_space_rows(brows) : Matrix::identity(dim);
  const Vector b0 = svec(lmi.B.front());

  Lsdfp p;
  p.n = n;
  p.m = complement.rows();
  for (std::size_t k = 0; k < p.m; ++k) {
    p.A.push_back(smat(complement.row(k)));
    p.b.push_back(dot(complement.row(k), b0));
  }
  if (norm2(p.b) <= 1e-10 * std::max(norm2(b0), 1e-300))
    throw Error(ErrorCode::ZeroRhs, "B_0 lies in span{B_1..B_l}");
  return {std::move(p), RecoveryMap(lmi)};
}

// ---------------------------------------------------------------- generator

namespace {

SymMat random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  SymMat s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) s.set(i, j, gauss(rng));
  return s;
}

Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = gauss(rng);
  return PivotedQr(std::move(g), 0.0).full_q();
}

}  // namespace

GeneratedInstance generate(std::size_t n, std::size_t m, std::size_t r, std::uint64_t seed, int retry_budget) {
  if (r < 1 || r + 1 > n) throw Error(ErrorCode::InvalidProblem, "rank r must satisfy 1 <= r <= n-1");
  if (m < 2 || m > svec_dim(n)) throw Error(ErrorCode::InvalidProblem, "m must satisfy 2 <= m <= n(n+1)/2");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> spectrum(0.5, 2.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  for (int attempt = 1; attempt <= retry_budget; ++attempt) {
    EigenDecomposition basis;
    basis.vectors = random_orthogonal(n, rng);
    basis.values.assign(n, 0.0);

    Vector primal(n, 0.0);
    Vector dual(n, 0.0);
    for (std::size_t k = 0; k < r; ++k) primal[k] = spectrum(rng);
    for (std::size_t k = r; k < n; ++k) dual[k] = spectrum(rng);

    Witness w;
    w.Xstar = spectral_function(basis, primal);
    w.Ystar = spectral_function(basis, dual);
    w.partition_rank = r;
    w.Q = basis.vectors;

    w.ystar.resize(m);
    for (auto& v : w.ystar) v = unit(rng);
    const double lead = 0.5 + 0.5 * (unit(rng) + 1.0);
    w.ystar[0] = (unit(rng) >= 0.0) ? lead : -lead;

    Lsdfp p;
    p.n = n;
    p.m = m;
    p.A.resize(m);
    for (std::size_t i = 1; i < m; ++i) p.A[i] = random_symmetric(n, rng);
    SymMat first = -1.0 * w.Ystar;
    for (std::size_t i = 1; i < m; ++i) first.axpy(-w.ystar[i], p.A[i]);
    p.A[0] = (1.0 / w.ystar[0]) * first;
    p.b = p.apply(w.Xstar);

    if (!validate(p).valid()) continue;
    if (find_dual_interior(p).status != DualInteriorStatus::Found) continue;
    return {std::move(p), std::move(w), attempt};
  }
  throw Error(ErrorCode::GenerationFailed,
              "no instance with a strictly feasible dual after " + std::to_string(retry_budget) + " attempts");
}

}  // namespace sdfeas
