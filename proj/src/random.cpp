#include "witt/random.hpp"

#include <algorithm>
#include <numeric>

#include "witt/cancellation.hpp"

namespace witt {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Small integer entries keep rational heights (and isotropy searches) cheap.
Scalar small_scalar(const FieldCtx& ctx, Rng& rng, bool nonzero) {
  if (ctx.is_prime_field()) {
    const long p = ctx.p().get_si();
    return ctx.from_int(uniform(rng, nonzero ? 1 : 0, p - 1));
  }
  long num = 0;
  while (num == 0) {
    num = uniform(rng, -6, 6);
    if (!nonzero) break;
  }
  const long den = uniform(rng, 0, 3) == 0 ? uniform(rng, 1, 3) : 1;
  return ctx.from_rational(mpq_class(num, den));
}

}  // namespace

Scalar random_nonzero(const FieldCtx& ctx, Rng& rng) { return small_scalar(ctx, rng, true); }
Scalar random_scalar(const FieldCtx& ctx, Rng& rng) { return small_scalar(ctx, rng, false); }

DiagonalForm random_diagonal(const FieldCtx& ctx, std::size_t n, Rng& rng) {
  Vector e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(random_nonzero(ctx, rng));
  return DiagonalForm(ctx, e);
}

GramMatrix random_symmetric(const FieldCtx& ctx, std::size_t n, Rng& rng) {
  Matrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      // Zero entries on the diagonal exercise the off-diagonal pivot.
      Scalar s = uniform(rng, 0, 3) == 0 ? ctx.zero() : random_scalar(ctx, rng);
      m(i, j) = s;
      m(j, i) = s;
    }
  return GramMatrix(m);
}

Matrix random_invertible(const FieldCtx& ctx, std::size_t n, Rng& rng) {
  while (true) {
    Matrix m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = ctx.from_int(uniform(rng, -2, 2));
    if (m.is_invertible()) return m;
  }
}

Matrix random_orthogonal(const DiagonalForm& b, Rng& rng, bool fix_first) {
  const FieldCtx& ctx = b.ctx;
  const std::size_t n = b.dim();
  GramMatrix q = b.gram();
  Matrix R = Matrix::identity(ctx, n);
  const long count = uniform(rng, 1, 6);
  for (long r = 0; r < count; ++r) {
    Vector u(n, ctx.zero());
    for (std::size_t i = fix_first ? 1 : 0; i < n; ++i) u[i] = ctx.from_int(uniform(rng, -2, 2));
    if (evaluate(q, u).is_zero()) continue;
    R = reflection_matrix(q, ReflectionVector::make(q, u)) * R;
  }
  return R;
}

CancellationInstance random_cancellation_instance(const DiagonalForm& b, Rng& rng, bool keep_form) {
  const FieldCtx& ctx = b.ctx;
  const std::size_t n = b.dim();
  const bool fix_first = n > 1 && uniform(rng, 0, 4) == 0;
  Matrix R = random_orthogonal(b, rng, fix_first);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (!keep_form && n > 2) std::shuffle(perm.begin() + 1, perm.end(), rng);
  Matrix P(ctx, n, n);
  for (std::size_t c = 0; c < n; ++c) P(perm[c], c) = ctx.one();

  Matrix S = Matrix::identity(ctx, n);
  for (std::size_t i = 1; i < n; ++i)
    S(i, i) = keep_form ? (uniform(rng, 0, 1) ? ctx.one() : ctx.from_int(-1)) : random_nonzero(ctx, rng);

  Matrix M = R * P * S;
  GramMatrix a = apply_congruence(b.gram(), M);
  return {DiagonalForm(ctx, a.diagonal_entries()), b, M};
}

}  // namespace witt
