#include "witt/cancellation.hpp"

namespace witt {

namespace {

[[noreturn]] void violated(const std::string& what) { throw WittError(ErrorKind::PreconditionViolated, what); }

DiagonalForm tail(const DiagonalForm& f) {
  return {f.ctx, Vector(f.entries.begin() + 1, f.entries.end())};
}

// Negate the first row of M when m_11 = 1 (z_1 -> -z_1, equivalently f_1 -> -f_1).
Matrix normalize_first_row(const Matrix& M, bool& flipped) {
  Matrix out = M;
  flipped = M(0, 0).is_one();
  if (flipped)
    for (std::size_t k = 0; k < out.cols(); ++k) out(0, k) = -out(0, k);
  return out;
}

}  // namespace

ReflectionVector ReflectionVector::make(const GramMatrix& q, const Vector& u) {
  Scalar qu = evaluate(q, u);
  if (qu.is_zero()) throw WittError(ErrorKind::IsotropicReflectionVector, "q(u) = 0 for u = " + vector_str(u));
  return {u, qu};
}

Matrix reflection_matrix(const GramMatrix& q, const ReflectionVector& r) {
  const std::size_t n = q.dim();
  if (r.u.size() != n) throw WittError(ErrorKind::DimensionMismatch, "reflection vector length");
  Vector bu = q.matrix().apply(r.u);
  Scalar factor = q.ctx().from_int(2) / r.q_u;
  Matrix t = Matrix::identity(q.ctx(), n);
  for (std::size_t j = 0; j < n; ++j) {
    if (bu[j].is_zero()) continue;
    Scalar c = factor * bu[j];
    for (std::size_t i = 0; i < n; ++i) t(i, j) -= c * r.u[i];
  }
  return t;
}

Transport transporter(const GramMatrix& q, const Vector& x, const Vector& y) {
  Scalar qx = evaluate(q, x);
  Scalar qy = evaluate(q, y);
  if (!(qx == qy)) violated("transporter needs q(x) = q(y)");
  if (qx.is_zero()) violated("transporter needs q(x) != 0");
  if (x == y) return {Matrix::identity(q.ctx(), q.dim()), false};
  Vector diff = x - y;
  if (!evaluate(q, diff).is_zero()) {
    return {reflection_matrix(q, ReflectionVector::make(q, diff)), false};
  }
  // q(x+y) + q(x-y) = 4 q(x), so x + y is not isotropic here.
  Matrix t = reflection_matrix(q, ReflectionVector::make(q, x + y));
  return {q.ctx().from_int(-1) * t, true};
}

void validate_cancellation_input(const DiagonalForm& a, const DiagonalForm& b, const Matrix& M) {
  if (!(a.ctx == b.ctx) || !(M.ctx() == a.ctx)) violated("forms and matrix over different fields");
  if (a.dim() != b.dim()) violated("dimensions differ");
  if (a.dim() <= 1) violated("cancellation needs n > 1");
  if (!a.is_nondegenerate() || !b.is_nondegenerate()) violated("degenerate form");
  if (!(a.entries[0] == b.entries[0])) violated("a_1 != b_1");
  if (M.rows() != a.dim() || M.cols() != a.dim()) violated("matrix is not n x n");
  if (!(apply_congruence(b.gram(), M) == a.gram())) violated("M is not an isometry: M^t B M != A");
}

CancellationResult cancel_first_algebraic(const DiagonalForm& a, const DiagonalForm& b, const Matrix& M) {
  validate_cancellation_input(a, b, M);
  const FieldCtx& ctx = a.ctx;
  const std::size_t n = a.dim();
  CancellationResult r;
  std::vector<std::string> trace;
  r.M_used = normalize_first_row(M, r.sign_flip_applied);
  const Matrix& m = r.M_used;
  if (r.sign_flip_applied) trace.push_back("m11 = 1: negated row 1 of M (z1 -> -z1)");

  Scalar one_minus = ctx.one() - m(0, 0);
  for (std::size_t k = 1; k < n; ++k) r.substitution.push_back(m(0, k) / one_minus);
  trace.push_back("x1 = y/(1 - m11) with y = m12 x2 + ... + m1n xn, coefficients " + vector_str(r.substitution));

  // z_1 = m_11 x_1 + y must reduce to x_1 itself: y/(1-m) = m y/(1-m) + y.
  for (std::size_t k = 1; k < n; ++k) {
    if (!(m(0, 0) * r.substitution[k - 1] + m(0, k) == r.substitution[k - 1])) {
      throw WittError(ErrorKind::PreconditionViolated, "substitution identity failed");
    }
  }
  trace.push_back("z1 = x1 after substitution, so a1 x1^2 and b1 z1^2 cancel");

  r.N = Matrix(ctx, n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 1; k < n; ++k) r.N(i - 1, k - 1) = m(i, k) + m(i, 0) * r.substitution[k - 1];
  trace.push_back("N = " + r.N.str());
  r.witness = {r.N, tail(a).gram(), tail(b).gram(), std::move(trace)};
  return r;
}

CancellationResult cancel_first_geometric(const DiagonalForm& a, const DiagonalForm& b, const Matrix& M) {
  validate_cancellation_input(a, b, M);
  const FieldCtx& ctx = a.ctx;
  const std::size_t n = a.dim();
  GramMatrix q = b.gram();
  CancellationResult r;
  std::vector<std::string> trace;
  r.M_used = normalize_first_row(M, r.sign_flip_applied);
  if (r.sign_flip_applied) trace.push_back("e1 - f1 isotropic (m11 = 1): replaced f1 by -f1");

  Vector e1 = r.M_used.column(0);
  Vector f1 = unit_vector(ctx, n, 0);
  Transport t = transporter(q, e1, f1);
  r.used_sum_branch = t.used_sum_branch;
  trace.push_back(std::string(t.used_sum_branch ? "-tau_{e1+f1}" : "tau_{e1-f1}") + " sends e1 to f1");

  Matrix composite = t.T * r.M_used;
  r.N = composite.block(1, 1, n - 1, n - 1);
  trace.push_back("restricted to f1-perp: N = " + r.N.str());
  r.witness = {r.N, tail(a).gram(), tail(b).gram(), std::move(trace)};
  return r;
}

HomotopyReport homotopy_check(const DiagonalForm& a, const DiagonalForm& b, const Matrix& M) {
  validate_cancellation_input(a, b, M);
  const FieldCtx& ctx = a.ctx;
  const std::size_t n = a.dim();
  HomotopyReport rep;
  Matrix m = normalize_first_row(M, rep.sign_flip_applied);
  GramMatrix q = b.gram();
  Scalar one_minus = ctx.one() - m(0, 0);

  // Reflection side: u = e_1 - f_1, read coefficients of tau_u(e_k).
  Vector u = m.column(0);
  u[0] -= ctx.one();
  rep.q_u = evaluate(q, u);
  rep.expected_q_u = ctx.from_int(2) * b.entries[0] * one_minus;
  rep.q_u_matches = rep.q_u == rep.expected_q_u;
  Matrix tau = reflection_matrix(q, ReflectionVector::make(q, u));
  rep.c_reflection = Matrix(ctx, n - 1, n - 1);
  rep.c_formula = Matrix(ctx, n - 1, n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    Vector image = tau.apply(m.column(k));
    for (std::size_t i = 1; i < n; ++i) {
      rep.c_reflection(i - 1, k - 1) = image[i];
      rep.c_formula(i - 1, k - 1) = m(i, k) + m(0, k) * m(i, 0) / one_minus;
    }
  }

  // Substitution side: w_i = m_i1 * (m_12 x_2 + ... + m_1n x_n)/(1 - m_11) + m_i2 x_2 + ...
  rep.d_substitution = Matrix(ctx, n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    Vector w(n - 1, ctx.zero());
    for (std::size_t k = 1; k < n; ++k) w[k - 1] += m(i, 0) * (m(0, k) / one_minus);
    for (std::size_t k = 1; k < n; ++k) w[k - 1] += m(i, k);
    for (std::size_t k = 1; k < n; ++k) rep.d_substitution(i - 1, k - 1) = w[k - 1];
  }
  rep.entries_equal = rep.c_reflection == rep.c_formula && rep.c_formula == rep.d_substitution;
  return rep;
}

}  // namespace witt
