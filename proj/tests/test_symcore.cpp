#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "sdfeas/errors.hpp"
#include "support.hpp"

using namespace sdtest;

namespace {

void expect_error(ErrorCode code, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Svec, Identity) {
  const Vector v = svec(SymMat::identity(2));
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], 1.0);
  EXPECT_EQ(v[1], 0.0);
  EXPECT_EQ(v[2], 1.0);
}

TEST(Svec, OffDiagonalScaledByRootTwo) {
  const Vector v = svec(sym({{1, 2}, {2, 3}}));
  ASSERT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v[0], 1.0);
  EXPECT_DOUBLE_EQ(v[1], 2.0 * std::numbers::sqrt2);
  EXPECT_DOUBLE_EQ(v[2], 3.0);
}

TEST(Svec, ColumnMajorLowerTriangleOrder) {
  const SymMat x = sym({{1, 2, 3}, {2, 4, 5}, {3, 5, 6}});
  const Vector v = svec(x);
  const double r2 = std::numbers::sqrt2;
  const Vector want{1, 2 * r2, 3 * r2, 4, 5 * r2, 6};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_DOUBLE_EQ(v[k], want[k]) << k;
  EXPECT_EQ(svec_index(3, 2, 1), 4u);
  EXPECT_EQ(svec_index(3, 0, 0), 0u);
  EXPECT_EQ(svec_index(3, 2, 2), 5u);
}

TEST(Smat, Basics) {
  const Vector e{1, 0, 1};
  EXPECT_EQ(smat(e), SymMat::identity(2));
  const Vector z(10, 0.0);
  EXPECT_EQ(smat(z), SymMat(4));
  expect_error(ErrorCode::NotTriangular, [] { smat(Vector(5, 1.0)); });
}

TEST(Smat, RoundtripRandom) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    const SymMat x = random_sym(n, rng);
    const SymMat back = smat(svec(x));
    const double scale = 1.0 + frobenius_norm(x);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(back(i, j), x(i, j), 1e-15 * scale);
  }
}

TEST(Smat, RoundtripDiagonalExactOffDiagonalOneUlp) {
  // x·√2/√2 is not always x in binary64: the scaled values are too sparse to
  // tell apart every neighbouring x, so one unit in the last place is the floor.
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 6);
    const SymMat x = random_sym(n, rng);
    const SymMat back = smat(svec(x));
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(back(j, j), x(j, j));
      for (std::size_t i = j + 1; i < n; ++i) {
        const double v = x(i, j);
        const double inf = std::numeric_limits<double>::infinity();
        EXPECT_TRUE(back(i, j) == v || back(i, j) == std::nextafter(v, inf) || back(i, j) == std::nextafter(v, -inf));
      }
    }
  }
}

TEST(Svec, InnerProductIdentity) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const SymMat x = random_sym(4, rng), y = random_sym(4, rng);
    const double want = dense_trace_product(x, y);
    EXPECT_NEAR(dot(svec(x), svec(y)), want, 1e-12 * frobenius_norm(x) * frobenius_norm(y));
    EXPECT_NEAR(trace_product(x, y), want, 1e-12 * frobenius_norm(x) * frobenius_norm(y));
  }
}

TEST(Svec, IsometryForFrobeniusNorm) {
  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const SymMat x = random_sym(1 + static_cast<std::size_t>(t % 8), rng);
    EXPECT_NEAR(norm2(svec(x)), fro(x.dense()), 1e-12 * fro(x.dense()));
  }
}

TEST(SymMat, MirroredWritesAreExact) {
  SymMat a(3);
  a.set(2, 0, 0.1);
  a.axpy(3.7, SymMat::identity(3));
  a *= 1.0 / 3.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(a(i, j), a(j, i));
}

TEST(SymMat, FromDenseRejectsAsymmetry) {
  Matrix a(2, 2);
  a(0, 1) = 1.0;
  expect_error(ErrorCode::NotSymmetric, [&] { SymMat::from_dense(a); });
  expect_error(ErrorCode::DimensionMismatch, [] { SymMat::from_dense(Matrix(2, 3)); });
}

TEST(PsdSqrt, IdentityAndDiagonal) {
  const PsdRoot r = psd_sqrt(SymMat::identity(3));
  EXPECT_EQ(r.root, SymMat::identity(3));
  const Vector d{4.0, 9.0};
  const PsdRoot s = psd_sqrt(SymMat::diagonal(d));
  EXPECT_NEAR(s.root(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(s.root(1, 1), 3.0, 1e-15);
  EXPECT_NEAR(s.root(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(s.inv_root(1, 1), 1.0 / 3.0, 1e-15);
}

TEST(PsdSqrt, SquareDefectAndCommutation) {
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const SymMat y = random_spd(6, rng, 1e-2, 10.0);
    const PsdRoot r = psd_sqrt(y);
    const Matrix yd = y.dense();
    const Matrix s = r.root.dense();
    EXPECT_LE(fro(s * s - yd), 1e-10 * fro(yd));
    EXPECT_LE(fro(s * yd - yd * s), 1e-10 * fro(yd));
    EXPECT_LE(fro(s * r.inv_root.dense() - Matrix::identity(6)), 1e-10);
  }
}

TEST(PsdSqrt, RejectsIndefinite) {
  const Vector d{1.0, -1e-3};
  expect_error(ErrorCode::NotPositiveDefinite, [&] { psd_sqrt(SymMat::diagonal(d)); });
  const Vector tiny{1.0, 1e-14};
  expect_error(ErrorCode::NotPositiveDefinite, [&] { psd_sqrt(SymMat::diagonal(tiny)); });
}

TEST(MinEigenvalue, SimpleCases) {
  EXPECT_NEAR(min_eigenvalue(SymMat::identity(4)), 1.0, 1e-15);
  const Vector d{-3.0, 5.0};
  EXPECT_NEAR(min_eigenvalue(SymMat::diagonal(d)), -3.0, 1e-15);
}

TEST(MinEigenvalue, MatchesCharacteristicPolynomial) {
  Rng rng(16);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 3);
    const SymMat x = random_sym(n, rng);
    EXPECT_NEAR(min_eigenvalue(x), charpoly_min_eigenvalue(x), 1e-10) << "n = " << n;
  }
}

TEST(EigenSym, ReconstructsAndIsOrthogonal) {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 9);
    const SymMat x = random_sym(n, rng);
    const EigenDecomposition e = eigen_sym(x);
    for (std::size_t k = 1; k < n; ++k) EXPECT_LE(e.values[k - 1], e.values[k]);
    const SymMat back = spectral_function(e, e.values);
    EXPECT_LE(fro((back - x).dense()), 1e-12 * fro(x.dense()));
    const Matrix qtq = e.vectors.transposed() * e.vectors;
    EXPECT_LE(fro(qtq - Matrix::identity(n)), 1e-12);
  }
}

TEST(EigenSym, RepeatedEigenvalues) {
  Rng rng(18);
  const Matrix q = random_orthogonal(5, rng);
  const SymMat x = spectral(q, {2.0, 2.0, 2.0, -1.0, -1.0});
  const EigenDecomposition e = eigen_sym(x);
  EXPECT_NEAR(e.values[0], -1.0, 1e-13);
  EXPECT_NEAR(e.values[1], -1.0, 1e-13);
  EXPECT_NEAR(e.values[4], 2.0, 1e-13);
}

TEST(CentralityDeviation, ZeroAtCenterAndInvariantUnderRotation) {
  Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    const SymMat y = random_spd(4, rng);
    const SymMat x = 0.7 * inverse_pd(y);
    EXPECT_LE(centrality_deviation(x, y, 0.7), 1e-13);

    const SymMat x2 = random_spd(4, rng);
    const Matrix q = random_orthogonal(4, rng);
    const double a = centrality_deviation(x2, y, 1.3);
    const double b = centrality_deviation(conjugate(q, x2), conjugate(q, y), 1.3);
    EXPECT_NEAR(a, b, 1e-12 * (1.0 + a));
  }
}

TEST(InversePd, MatchesGaussJordan) {
  Rng rng(20);
  for (int t = 0; t < 20; ++t) {
    const SymMat y = random_spd(5, rng);
    const Matrix inv = dense_inverse(y.dense());
    EXPECT_LE(fro(inverse_pd(y).dense() - inv), 1e-12 * fro(inv));
  }
}
