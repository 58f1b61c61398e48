#include <gtest/gtest.h>

#include "support/helpers.hpp"
#include "support/oracles.hpp"
#include "witt/cancellation.hpp"
#include "witt/random.hpp"

using namespace witt;

namespace {

const FieldCtx Q = FieldCtx::rationals();
FieldCtx F(long p) { return FieldCtx::prime_field(p); }

Matrix mat(const FieldCtx& ctx, std::vector<std::vector<mpq_class>> rows) {
  std::vector<Vector> out;
  for (const auto& r : rows) {
    Vector v;
    for (const auto& a : r) v.push_back(ctx.from_rational(a));
    out.push_back(v);
  }
  return Matrix(ctx, out);
}

DiagonalForm diag(const FieldCtx& ctx, std::vector<mpq_class> e) {
  Vector v;
  for (const auto& a : e) v.push_back(ctx.from_rational(a));
  return DiagonalForm(ctx, v);
}

DiagonalForm tail(const DiagonalForm& f) { return {f.ctx, Vector(f.entries.begin() + 1, f.entries.end())}; }

long modulus(const FieldCtx& ctx) { return ctx.is_prime_field() ? ctx.p().get_si() : 0; }

const Matrix kRotation = mat(Q, {{mpq_class(3, 5), mpq_class(4, 5)}, {mpq_class(-4, 5), mpq_class(3, 5)}});

}  // namespace

TEST(Reflection, SwapsBasisOfSumOfSquares) {
  GramMatrix q = diag(Q, {1, 1}).gram();
  Matrix t = reflection_matrix(q, ReflectionVector::make(q, {Q.one(), Q.from_int(-1)}));
  EXPECT_EQ(t, mat(Q, {{0, 1}, {1, 0}}));
  EXPECT_EQ(kind_of([] {
              GramMatrix h = diag(Q, {1, -1}).gram();
              ReflectionVector::make(h, {Q.one(), Q.one()});
            }),
            ErrorKind::IsotropicReflectionVector);
}

TEST(Reflection, IsAnInvolutiveIsometry) {
  Rng rng(5);
  for (const FieldCtx& ctx : {Q, F(7)}) {
    for (int i = 0; i < 40; ++i) {
      DiagonalForm b = random_diagonal(ctx, 4, rng);
      Vector u;
      for (int k = 0; k < 4; ++k) u.push_back(random_scalar(ctx, rng));
      if (evaluate(b.gram(), u).is_zero()) continue;
      Matrix t = reflection_matrix(b.gram(), ReflectionVector::make(b.gram(), u));
      EXPECT_EQ(apply_congruence(b.gram(), t), b.gram());
      EXPECT_EQ(t * t, Matrix::identity(ctx, 4));
      EXPECT_EQ(t.apply(u), ctx.from_int(-1) * u);
    }
  }
}

TEST(Transporter, Examples) {
  GramMatrix q = diag(Q, {1, 1}).gram();
  Transport t = transporter(q, {Q.one(), Q.zero()}, {Q.zero(), Q.one()});
  EXPECT_FALSE(t.used_sum_branch);
  EXPECT_EQ(t.T, reflection_matrix(q, ReflectionVector::make(q, {Q.one(), Q.from_int(-1)})));

  Vector x{Q.from_int(2), Q.from_int(3)};
  EXPECT_EQ(transporter(q, x, x).T, Matrix::identity(Q, 2));

  GramMatrix h = diag(Q, {1, -1}).gram();
  Vector x2{Q.from_rational(mpq_class(5, 4)), Q.from_rational(mpq_class(3, 4))};
  Vector y2{Q.one(), Q.zero()};
  Transport t2 = transporter(h, x2, y2);
  EXPECT_EQ(t2.T.apply(x2), y2);
  EXPECT_EQ(apply_congruence(h, t2.T), h);
}

TEST(Transporter, SumBranchWhenDifferenceIsIsotropic) {
  GramMatrix h = diag(Q, {1, -1}).gram();
  Vector x{Q.from_int(2), Q.one()};
  Vector y{Q.one(), Q.zero()};
  ASSERT_EQ(evaluate(h, x), evaluate(h, y) + Q.from_int(2));
  // x - y = (0, 1, 1) is isotropic, so -tau_{x+y} is used.
  GramMatrix h3 = diag(Q, {1, 1, -1}).gram();
  Vector x3{Q.one(), Q.zero(), Q.zero()};
  Vector y3{Q.one(), Q.from_int(-1), Q.from_int(-1)};
  ASSERT_EQ(evaluate(h3, x3), evaluate(h3, y3));
  ASSERT_TRUE(evaluate(h3, x3 - y3).is_zero());
  Transport t = transporter(h3, x3, y3);
  EXPECT_TRUE(t.used_sum_branch);
  EXPECT_EQ(t.T.apply(x3), y3);
  EXPECT_EQ(apply_congruence(h3, t.T), h3);
  EXPECT_EQ(kind_of([&] { transporter(h, x, y); }), ErrorKind::PreconditionViolated);
}

TEST(Cancellation, IdentityTriggersSignFlip) {
  DiagonalForm a = diag(Q, {1, 2});
  Matrix I = Matrix::identity(Q, 2);
  CancellationResult r = cancel_first_algebraic(a, a, I);
  EXPECT_TRUE(r.sign_flip_applied);
  EXPECT_EQ(r.M_used(0, 0), Q.from_int(-1));
  EXPECT_EQ(r.N, Matrix::identity(Q, 1));
  CancellationResult g = cancel_first_geometric(a, a, I);
  EXPECT_EQ(g.N, Matrix::identity(Q, 1));
}

TEST(Cancellation, RationalRotation) {
  DiagonalForm a = diag(Q, {1, 1});
  CancellationResult r = cancel_first_algebraic(a, a, kRotation);
  EXPECT_FALSE(r.sign_flip_applied);
  EXPECT_EQ(r.substitution, (Vector{Q.from_int(2)}));
  EXPECT_EQ(r.N, mat(Q, {{-1}}));
  EXPECT_EQ(cancel_first_geometric(a, a, kRotation).N, mat(Q, {{-1}}));
  EXPECT_TRUE(r.witness.verify());
}

TEST(Cancellation, IdentityGeometricIsIdentityInEveryDimension) {
  for (std::size_t n = 2; n <= 5; ++n) {
    Vector e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(Q.from_int(static_cast<long>(i) + 1));
    DiagonalForm a(Q, e);
    EXPECT_EQ(cancel_first_geometric(a, a, Matrix::identity(Q, n)).N, Matrix::identity(Q, n - 1));
  }
}

TEST(Cancellation, RejectsBadInput) {
  DiagonalForm a = diag(Q, {1, 1});
  EXPECT_EQ(kind_of([&] { cancel_first_algebraic(a, diag(Q, {2, 1}), kRotation); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([&] { cancel_first_algebraic(a, a, mat(Q, {{1, 1}, {0, 1}})); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([&] { cancel_first_algebraic(diag(Q, {1}), diag(Q, {1}), Matrix::identity(Q, 1)); }),
            ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([&] { cancel_first_geometric(diag(Q, {1, 0}), diag(Q, {1, 0}), Matrix::identity(Q, 2)); }),
            ErrorKind::PreconditionViolated);
}

TEST(Cancellation, F7RandomIsometryOfDiagonal135) {
  FieldCtx f = F(7);
  DiagonalForm b = diag(f, {1, 3, 5});
  Rng rng(1357);
  for (int i = 0; i < 30; ++i) {
    CancellationInstance inst = random_cancellation_instance(b, rng, true);
    ASSERT_EQ(inst.a, b);
    for (auto* method : {&cancel_first_algebraic, &cancel_first_geometric}) {
      CancellationResult r = method(inst.a, inst.b, inst.M);
      EXPECT_TRUE(oracle::congruence_holds(tail(inst.a).gram().matrix(), tail(b).gram().matrix(), r.N, 7));
      EXPECT_FALSE(r.N.determinant().is_zero());
    }
  }
}

TEST(Cancellation, RandomInstancesBothMethodsAgree) {
  Rng rng(2024);
  int flips = 0;
  for (const FieldCtx& ctx : {Q, F(3), F(5), F(13)}) {
    for (int i = 0; i < 50; ++i) {
      const std::size_t n = 2 + i % 4;
      CancellationInstance inst = random_cancellation_instance(random_diagonal(ctx, n, rng), rng);
      CancellationResult alg = cancel_first_algebraic(inst.a, inst.b, inst.M);
      CancellationResult geo = cancel_first_geometric(inst.a, inst.b, inst.M);
      flips += alg.sign_flip_applied;
      EXPECT_TRUE(oracle::congruence_holds(tail(inst.a).gram().matrix(), tail(inst.b).gram().matrix(), alg.N,
                                           modulus(ctx)));
      EXPECT_EQ(alg.N, geo.N);
      EXPECT_EQ(alg.sign_flip_applied, geo.sign_flip_applied);
      EXPECT_FALSE(geo.used_sum_branch);
    }
  }
  EXPECT_GT(flips, 0);
}

TEST(Homotopy, Examples) {
  DiagonalForm a = diag(Q, {1, 1});
  HomotopyReport h = homotopy_check(a, a, kRotation);
  EXPECT_TRUE(h.ok());
  EXPECT_EQ(h.c_reflection, mat(Q, {{-1}}));
  EXPECT_EQ(h.d_substitution, mat(Q, {{-1}}));
  EXPECT_EQ(h.q_u, Q.from_rational(mpq_class(4, 5)));

  // First row (m11, 0, ..., 0): y = 0 and both coefficients reduce to m_ik.
  DiagonalForm b = diag(Q, {1, 2, 3});
  Matrix M = mat(Q, {{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
  DiagonalForm a2 = diag(Q, {1, 3, 2});
  HomotopyReport h2 = homotopy_check(a2, b, M);
  EXPECT_TRUE(h2.ok());
  EXPECT_EQ(h2.c_reflection, M.block(1, 1, 2, 2));
  EXPECT_EQ(h2.d_substitution, M.block(1, 1, 2, 2));
}

TEST(Homotopy, RandomIsometries) {
  Rng rng(99);
  for (const FieldCtx& ctx : {Q, F(3), F(7), F(13)}) {
    for (int i = 0; i < 50; ++i) {
      CancellationInstance inst = random_cancellation_instance(random_diagonal(ctx, 2 + i % 5, rng), rng);
      HomotopyReport h = homotopy_check(inst.a, inst.b, inst.M);
      EXPECT_TRUE(h.entries_equal);
      EXPECT_TRUE(h.q_u_matches);
    }
  }
}
