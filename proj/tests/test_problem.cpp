#include <gtest/gtest.h>

#include <cmath>

#include "sdfeas/errors.hpp"
#include "sdfeas/ipm.hpp"
#include "sdfeas/phase1.hpp"
#include "support.hpp"

using namespace sdtest;

namespace {

Lsdfp make(std::vector<SymMat> a, Vector b) {
  Lsdfp p;
  p.n = a.front().size();
  p.m = a.size();
  p.A = std::move(a);
  p.b = std::move(b);
  return p;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(Validate, SingleIdentityIsValid) {
  const auto rep = validate(make({SymMat::identity(2)}, {1.0}));
  EXPECT_TRUE(rep.valid());
  EXPECT_EQ(rep.rank, 1u);
}

TEST(Validate, DependentRowsAreRejected) {
  const auto rep = validate(make({SymMat::identity(2), 2.0 * SymMat::identity(2)}, {1.0, 2.0}));
  EXPECT_FALSE(rep.valid());
  EXPECT_FALSE(rep.rank_ok);
  EXPECT_EQ(rep.rank, 1u);
  EXPECT_EQ(code_of([&] { require_valid(make({SymMat::identity(2), 2.0 * SymMat::identity(2)}, {1.0, 2.0})); }),
            ErrorCode::InvalidProblem);
}

TEST(Validate, ZeroRightHandSideIsRejected) {
  const auto rep = validate(make({sym({{0, 1}, {1, 0}}), sym({{1, 0}, {0, 0}})}, {0.0, 0.0}));
  EXPECT_TRUE(rep.rank_ok);
  EXPECT_FALSE(rep.b_nonzero);
  EXPECT_FALSE(rep.valid());
}

TEST(Validate, ShapeMismatch) {
  Lsdfp p = make({SymMat::identity(2), SymMat::identity(3)}, {1.0, 1.0});
  EXPECT_FALSE(validate(p).shapes_ok);
}

TEST(FromLmi, HandExample) {
  Lmi lmi;
  lmi.B = {sym({{1, 0}, {0, 0}}), sym({{0, 0}, {0, 1}})};
  const LmiConversion conv = from_lmi(lmi);
  const Lsdfp& p = conv.problem;
  ASSERT_EQ(p.m, 2u);
  EXPECT_TRUE(validate(p).valid());
  for (const SymMat& a : p.A) {
    EXPECT_NEAR(a(1, 1), 0.0, 1e-14);
    EXPECT_NEAR(frobenius_norm(a), 1.0, 1e-14);
  }
  EXPECT_NEAR(trace_product(p.A[0], p.A[1]), 0.0, 1e-14);
  // B_0 = diag(1,0) lies in the complement, so b is its coordinate vector: ‖b‖ = 1.
  EXPECT_NEAR(norm2(p.b), 1.0, 1e-14);

  for (double t : {0.0, 0.5, 3.25}) {
    const Vector z = conv.recovery.recover(sym({{1, 0}, {0, t}}));
    ASSERT_EQ(z.size(), 1u);
    EXPECT_NEAR(z[0], t, 1e-14);
  }
}

TEST(FromLmi, ZeroOffsetIsRejected) {
  Lmi lmi;
  lmi.B = {SymMat(2), sym({{0, 0}, {0, 1}})};
  EXPECT_EQ(code_of([&] { from_lmi(lmi); }), ErrorCode::ZeroRhs);
  lmi.B = {sym({{0, 0}, {0, 3}}), sym({{0, 0}, {0, 1}})};
  EXPECT_EQ(code_of([&] { from_lmi(lmi); }), ErrorCode::ZeroRhs);
}

TEST(FromLmi, DependentMatricesAreRejected) {
  Lmi lmi;
  lmi.B = {SymMat::identity(2), sym({{0, 1}, {1, 0}}), sym({{0, 2}, {2, 0}})};
  EXPECT_EQ(code_of([&] { from_lmi(lmi); }), ErrorCode::DegenerateLmi);
}

TEST(FromLmi, RecoveryIsIdempotentOnAffinePoints) {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    Lmi lmi;
    lmi.B = {random_sym(4, rng), random_sym(4, rng), random_sym(4, rng)};
    const LmiConversion conv = from_lmi(lmi);
    const Vector z0{gauss(rng), gauss(rng)};
    const SymMat x = lmi.evaluate(z0);
    const Vector resid = conv.problem.apply(x);
    for (std::size_t i = 0; i < conv.problem.m; ++i) EXPECT_NEAR(resid[i], conv.problem.b[i], 1e-12);
    const Vector z = conv.recovery.recover(x);
    EXPECT_NEAR(z[0], z0[0], 1e-10);
    EXPECT_NEAR(z[1], z0[1], 1e-10);
  }
}

TEST(FromLmi, SolveAndRecoverFeasiblePoint) {
  Rng rng(32);
  int solved = 0;
  for (int t = 0; t < 5; ++t) {
    Lmi lmi;
    const SymMat b1 = random_sym(4, rng), b2 = random_sym(4, rng);
    const Vector z0{gauss(rng), gauss(rng)};
    SymMat b0 = random_spd(4, rng);
    b0.axpy(-z0[0], b1).axpy(-z0[1], b2);
    lmi.B = {b0, b1, b2};
    const LmiConversion conv = from_lmi(lmi);
    const Lsdfp& p = conv.problem;

    const DualInterior di = find_dual_interior(p);
    const HPoint start = di.status == DualInteriorStatus::Found ? centered_start(p, di.y0, di.Y0) : cold_start(p);
    const RunResult res = run(p, start, Params{});
    ASSERT_TRUE(res.solution.has_value()) << to_string(res.status);
    ++solved;
    const Vector z = conv.recovery.recover(res.solution->X);
    EXPECT_GE(min_eigenvalue(lmi.evaluate(z)), -1e-8);
  }
  EXPECT_EQ(solved, 5);
}

TEST(Generate, WitnessIdentities) {
  for (int s = 0; s < 30; ++s) {
    const Shape sh = shape_for(s);
    GeneratedInstance g;
    try {
      g = generate(sh.n, sh.m, sh.r, 100 + static_cast<std::uint64_t>(s));
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::GenerationFailed);
      continue;
    }
    const Lsdfp& p = g.problem;
    EXPECT_TRUE(validate(p).valid());
    const Witness& w = g.witness;
    const double scale = 1.0 + frobenius_norm(w.Xstar) + frobenius_norm(w.Ystar);
    const Vector ax = p.apply(w.Xstar);
    for (std::size_t i = 0; i < p.m; ++i) EXPECT_EQ(ax[i], p.b[i]);
    EXPECT_LE(frobenius_norm(p.combine(w.ystar) + w.Ystar), 1e-10 * scale);
    EXPECT_LE(fro(w.Xstar * w.Ystar), 1e-10 * scale);
    EXPECT_LE(std::abs(dot(p.b, w.ystar)), 1e-12 * norm2(p.b) * norm2(w.ystar) + 1e-10 * scale);
    EXPECT_GT(min_eigenvalue(w.Xstar + w.Ystar), 0.0);
    EXPECT_GE(min_eigenvalue(w.Xstar), -1e-12);
    EXPECT_GE(min_eigenvalue(w.Ystar), -1e-12);
    EXPECT_EQ(w.partition_rank, sh.r);
  }
}

TEST(Generate, SmallCaseHasStrictComplementarity) {
  const GeneratedInstance g = generate(3, 2, 1, 7);
  EXPECT_GT(min_eigenvalue(g.witness.Xstar + g.witness.Ystar), 0.0);
  EXPECT_GE(g.attempts, 1);
}

TEST(Generate, Deterministic) {
  const GeneratedInstance a = generate(5, 4, 2, 7);
  const GeneratedInstance b = generate(5, 4, 2, 7);
  ASSERT_EQ(a.problem.m, b.problem.m);
  for (std::size_t i = 0; i < a.problem.m; ++i) EXPECT_EQ(a.problem.A[i], b.problem.A[i]);
  EXPECT_EQ(a.problem.b, b.problem.b);
  EXPECT_EQ(a.witness.Xstar, b.witness.Xstar);
}

TEST(Generate, RejectsBadShapes) {
  EXPECT_EQ(code_of([] { generate(4, 3, 4, 1); }), ErrorCode::InvalidProblem);
  EXPECT_EQ(code_of([] { generate(4, 3, 0, 1); }), ErrorCode::InvalidProblem);
  EXPECT_EQ(code_of([] { generate(3, 7, 1, 1); }), ErrorCode::InvalidProblem);
}

TEST(Lsdfp, ApplyAndCombineAreAdjoint) {
  Rng rng(33);
  for (int t = 0; t < 20; ++t) {
    const Lsdfp p = random_instance(5, 4, rng);
    const SymMat x = random_sym(5, rng);
    const Vector y{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    EXPECT_NEAR(dot(p.apply(x), y), dense_trace_product(p.combine(y), x), 1e-12 * (1.0 + frobenius_norm(x)) * 10);
  }
}
