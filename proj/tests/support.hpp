#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "sdfeas/embed.hpp"
#include "sdfeas/errors.hpp"
#include "sdfeas/problem.hpp"
#include "sdfeas/symcore.hpp"

namespace sdtest {

using namespace sdfeas;

using Rng = std::mt19937_64;

inline double gauss(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }
inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline SymMat sym(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  Matrix a(n, n);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double v : r) a(i, j++) = v;
    ++i;
  }
  return SymMat::from_dense(a);
}

inline SymMat random_sym(std::size_t n, Rng& rng, double scale = 1.0) {
  SymMat a(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < n; ++i) a.set(i, j, scale * gauss(rng));
  return a;
}

// Modified Gram-Schmidt on a Gaussian matrix; kept separate from the library QR.
inline Matrix random_orthogonal(std::size_t n, Rng& rng) {
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = gauss(rng);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += q(i, p) * q(i, c);
      for (std::size_t i = 0; i < n; ++i) q(i, c) -= d * q(i, p);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += q(i, c) * q(i, c);
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) q(i, c) /= nrm;
  }
  return q;
}

inline SymMat conjugate(const Matrix& q, const SymMat& a) {
  return SymMat::symmetric_part(q * a.dense() * q.transposed());
}

inline SymMat spectral(const Matrix& q, const std::vector<double>& lam) {
  const std::size_t n = lam.size();
  SymMat out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < n; ++i) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k) v += q(i, k) * lam[k] * q(j, k);
      out.set(i, j, v);
    }
  return out;
}

inline SymMat random_spd(std::size_t n, Rng& rng, double lo = 0.5, double hi = 2.0) {
  std::vector<double> lam(n);
  for (double& l : lam) l = uniform(rng, lo, hi);
  return spectral(random_orthogonal(n, rng), lam);
}

// Gauss-Jordan with partial pivoting.
inline Matrix dense_inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix w = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(w(r, c)) > std::abs(w(piv, c))) piv = r;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(w(c, j), w(piv, j));
      std::swap(inv(c, j), inv(piv, j));
    }
    const double d = w(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      w(c, j) /= d;
      inv(c, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = w(r, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        w(r, j) -= f * w(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline double fro(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

inline double dense_trace_product(const SymMat& x, const SymMat& y) {
  const std::size_t n = x.size();
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) t += x(i, k) * y(k, i);
  return t;
}

// Random instance with independent constraint matrices and b ≠ 0.
inline Lsdfp random_instance(std::size_t n, std::size_t m, Rng& rng) {
  Lsdfp p;
  p.n = n;
  p.m = m;
  for (std::size_t i = 0; i < m; ++i) p.A.push_back(random_sym(n, rng));
  p.b.resize(m);
  for (double& v : p.b) v = gauss(rng);
  return p;
}

struct InteriorDraw {
  HPoint pt;
  SymMat root;  // Y = root·root
};

inline InteriorDraw random_interior(const Lsdfp& p, Rng& rng) {
  InteriorDraw d;
  d.pt.X = random_spd(p.n, rng);
  d.root = random_spd(p.n, rng, 0.7, 1.4);
  d.pt.Y = SymMat::symmetric_part(d.root * d.root);
  d.pt.y.resize(p.m);
  for (double& v : d.pt.y) v = gauss(rng);
  d.pt.tau = uniform(rng, 0.5, 2.0);
  d.pt.kappa = uniform(rng, 0.5, 2.0);
  return d;
}

// Generated instance shapes used across suites: n ∈ 3..8, m ∈ 2..10, 1 ≤ r < n,
// m ≥ r + 2 so a strictly feasible dual is likely to exist, and m < n(n+1)/2 so
// the constraints never span all of S^n (that would put I in span{A_i}).
struct Shape {
  std::size_t n, m, r;
};

inline Shape shape_for(int s) {
  const std::size_t n = 3 + static_cast<std::size_t>(s % 6);
  const std::size_t r = 1 + static_cast<std::size_t>(s / 6) % (n - 1);
  std::size_t m = std::max<std::size_t>(2 + static_cast<std::size_t>(s % 9), r + 2);
  m = std::min<std::size_t>({m, 10, svec_dim(n) - 1});
  return {n, m, r};
}

// Instance for slot s; a GenerationFailed draw moves on to seed + 1000.
inline GeneratedInstance generated_instance(int s, std::uint64_t base) {
  const Shape sh = shape_for(s);
  for (std::uint64_t seed = base + static_cast<std::uint64_t>(s);; seed += 1000) {
    try {
      return generate(sh.n, sh.m, sh.r, seed);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::GenerationFailed) throw;
    }
  }
}

}  // namespace sdtest
