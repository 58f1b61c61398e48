#include "witt/form.hpp"

#include <algorithm>

namespace witt {

GramMatrix::GramMatrix(Matrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw WittError(ErrorKind::DimensionMismatch, "Gram matrix must be square");
  if (!m_.is_symmetric()) throw WittError(ErrorKind::PreconditionViolated, "Gram matrix must be symmetric");
}

bool GramMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      if (i != j && !m_(i, j).is_zero()) return false;
  return true;
}

Vector GramMatrix::diagonal_entries() const {
  Vector d;
  for (std::size_t i = 0; i < dim(); ++i) d.push_back(m_(i, i));
  return d;
}

DiagonalForm::DiagonalForm(FieldCtx c, Vector e) : ctx(std::move(c)), entries(std::move(e)) {
  for (const auto& x : entries)
    if (!ctx.contains(x)) throw WittError(ErrorKind::FieldMismatch, "entry outside " + ctx.tag());
}

bool DiagonalForm::is_nondegenerate() const {
  return std::none_of(entries.begin(), entries.end(), [](const Scalar& s) { return s.is_zero(); });
}

GramMatrix DiagonalForm::gram() const { return GramMatrix(Matrix::diagonal(ctx, entries)); }

std::string DiagonalForm::str() const {
  std::string s = "<";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ",";
    s += entries[i].str();
  }
  return s + ">";
}

bool IsometryWitness::verify() const {
  if (!M.is_square() || M.rows() != target.dim() || source.dim() != target.dim()) return false;
  if (!M.is_invertible()) return false;
  return apply_congruence(target, M) == source;
}

GramMatrix symmetrize(const Matrix& raw) {
  if (!raw.is_square()) throw WittError(ErrorKind::DimensionMismatch, "coefficient matrix must be square");
  const FieldCtx& ctx = raw.ctx();
  Scalar half = ctx.from_int(2).inverse();
  Matrix b(ctx, raw.rows(), raw.cols());
  for (std::size_t i = 0; i < raw.rows(); ++i)
    for (std::size_t j = 0; j < raw.cols(); ++j) b(i, j) = (raw(i, j) + raw(j, i)) * half;
  return GramMatrix(b);
}

Scalar bilinear(const GramMatrix& q, const Vector& x, const Vector& y) {
  if (x.size() != q.dim() || y.size() != q.dim()) {
    throw WittError(ErrorKind::DimensionMismatch, "vector length differs from form dimension");
  }
  Vector qy = q.matrix().apply(y);
  Scalar s = q.ctx().zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) s += x[i] * qy[i];
  return s;
}

Scalar evaluate(const GramMatrix& q, const Vector& v) { return bilinear(q, v, v); }

GramMatrix apply_congruence(const GramMatrix& q, const Matrix& M) {
  if (!M.is_square() || M.rows() != q.dim()) {
    throw WittError(ErrorKind::DimensionMismatch, "congruence matrix must be n x n");
  }
  return GramMatrix(M.transpose() * q.matrix() * M);
}

namespace {

// Basis changes applied simultaneously to the Gram matrix and the accumulated
// transform, keeping M^t q M == A.
class Eliminator {
 public:
  explicit Eliminator(const GramMatrix& q)
      : ctx_(q.ctx()), a_(q.matrix()), m_(Matrix::identity(q.ctx(), q.dim())) {}

  std::size_t n() const { return a_.rows(); }
  const Matrix& gram() const { return a_; }
  const Matrix& transform() const { return m_; }
  std::vector<std::string>& trace() { return trace_; }

  void swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n(); ++k) std::swap(m_(k, i), m_(k, j));
    for (std::size_t k = 0; k < n(); ++k) std::swap(a_(i, k), a_(j, k));
    for (std::size_t k = 0; k < n(); ++k) std::swap(a_(k, i), a_(k, j));
    trace_.push_back("swap e" + std::to_string(i + 1) + " <-> e" + std::to_string(j + 1));
  }

  // e_i <- e_i + c e_j
  void add(std::size_t i, std::size_t j, const Scalar& c) {
    if (c.is_zero()) return;
    for (std::size_t k = 0; k < n(); ++k) m_(k, i) += c * m_(k, j);
    for (std::size_t k = 0; k < n(); ++k) a_(i, k) += c * a_(j, k);
    for (std::size_t k = 0; k < n(); ++k) a_(k, i) += c * a_(k, j);
    trace_.push_back("e" + std::to_string(i + 1) + " <- e" + std::to_string(i + 1) + " + (" + c.str() + ")*e" +
                     std::to_string(j + 1));
  }

 private:
  FieldCtx ctx_;
  Matrix a_;
  Matrix m_;
  std::vector<std::string> trace_;
};

}  // namespace

Diagonalization diagonalize(const GramMatrix& q) {
  Eliminator el(q);
  const std::size_t n = q.dim();
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t pivot = n;
    for (std::size_t i = r; i < n && pivot == n; ++i)
      if (!el.gram()(i, i).is_zero()) pivot = i;
    if (pivot == n) {
      // All remaining diagonal entries vanish: e_i + e_j has q = 2 b_ij.
      std::size_t pi = n, pj = n;
      for (std::size_t i = r; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!el.gram()(i, j).is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      el.add(pi, pj, q.ctx().one());
      pivot = pi;
    }
    el.swap(r, pivot);
    Scalar inv = el.gram()(r, r).inverse();
    el.trace().push_back("pivot e" + std::to_string(r + 1) + " with q = " + el.gram()(r, r).str());
    for (std::size_t j = r + 1; j < n; ++j) {
      if (el.gram()(r, j).is_zero()) continue;
      el.add(j, r, -(el.gram()(r, j) * inv));
    }
  }
  Vector d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(el.gram()(i, i));
  DiagonalForm form(q.ctx(), d);
  IsometryWitness w{el.transform(), form.gram(), q, std::move(el.trace())};
  return {std::move(form), std::move(w)};
}

RadicalSplit radical_split(const GramMatrix& q) {
  if (q.is_nondegenerate()) {
    return {q, 0, {Matrix::identity(q.ctx(), q.dim()), q, q, {"non-degenerate: identity split"}}};
  }
  Diagonalization d = diagonalize(q);
  const std::size_t n = q.dim();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (!d.form.entries[i].is_zero()) order.push_back(i);
  const std::size_t rank = order.size();
  for (std::size_t i = 0; i < n; ++i)
    if (d.form.entries[i].is_zero()) order.push_back(i);
  Matrix perm(q.ctx(), n, n);
  Vector nonzero;
  for (std::size_t k = 0; k < n; ++k) {
    perm(order[k], k) = q.ctx().one();
    if (k < rank) nonzero.push_back(d.form.entries[order[k]]);
  }
  Matrix M = d.witness.M * perm;
  Vector all = nonzero;
  all.resize(n, q.ctx().zero());
  std::vector<std::string> trace = d.witness.trace;
  trace.push_back("move " + std::to_string(n - rank) + " radical direction(s) last");
  IsometryWitness w{M, DiagonalForm(q.ctx(), all).gram(), q, std::move(trace)};
  return {DiagonalForm(q.ctx(), nonzero).gram(), n - rank, std::move(w)};
}

GramMatrix direct_sum(const GramMatrix& a, const GramMatrix& b) {
  require_same_field(a.ctx(), b.ctx());
  return GramMatrix(block_diagonal(a.matrix(), b.matrix()));
}

GramMatrix tensor_product(const GramMatrix& a, const GramMatrix& b) {
  require_same_field(a.ctx(), b.ctx());
  const std::size_t n = a.dim(), m = b.dim();
  Matrix k(a.ctx(), n * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) k(i * m + r, j * m + s) = a(i, j) * b(r, s);
    }
  return GramMatrix(k);
}

DiagonalForm direct_sum(const DiagonalForm& a, const DiagonalForm& b) {
  require_same_field(a.ctx, b.ctx);
  Vector e = a.entries;
  e.insert(e.end(), b.entries.begin(), b.entries.end());
  return {a.ctx, e};
}

DiagonalForm tensor_product(const DiagonalForm& a, const DiagonalForm& b) {
  require_same_field(a.ctx, b.ctx);
  Vector e;
  for (const auto& x : a.entries)
    for (const auto& y : b.entries) e.push_back(x * y);
  return {a.ctx, e};
}

DiagonalForm negate(const DiagonalForm& a) {
  Vector e;
  for (const auto& x : a.entries) e.push_back(-x);
  return {a.ctx, e};
}

SquareClass signed_discriminant(const DiagonalForm& q) {
  if (!q.is_nondegenerate()) throw WittError(ErrorKind::DegenerateForm, "discriminant of " + q.str());
  const std::size_t n = q.dim();
  Scalar d = ((n * (n - 1) / 2) % 2) ? q.ctx.from_int(-1) : q.ctx.one();
  for (const auto& a : q.entries) d *= a;
  return square_class(q.ctx, d);
}

std::pair<std::size_t, std::size_t> sign_counts(const DiagonalForm& q) {
  std::size_t pos = 0, neg = 0;
  for (const auto& a : q.entries) {
    if (a.sign() > 0) ++pos;
    if (a.sign() < 0) ++neg;
  }
  return {pos, neg};
}

}  // namespace witt
