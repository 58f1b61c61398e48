#include "witt/matrix.hpp"

#include <sstream>
#include <utility>

namespace witt {

namespace {

void require_dims(bool ok, const std::string& what) {
  if (!ok) throw WittError(ErrorKind::DimensionMismatch, what);
}

}  // namespace

Matrix::Matrix(const FieldCtx& ctx, std::size_t rows, std::size_t cols)
    : ctx_(ctx), rows_(rows), cols_(cols), data_(rows * cols, ctx.zero()) {}

Matrix::Matrix(const FieldCtx& ctx, const std::vector<Vector>& rows)
    : Matrix(ctx, rows.size(), rows.empty() ? 0 : rows.front().size()) {
  for (std::size_t i = 0; i < rows_; ++i) {
    require_dims(rows[i].size() == cols_, "ragged matrix rows");
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!ctx.contains(rows[i][j])) throw WittError(ErrorKind::FieldMismatch, "matrix entry outside " + ctx.tag());
      (*this)(i, j) = rows[i][j];
    }
  }
}

Matrix Matrix::identity(const FieldCtx& ctx, std::size_t n) {
  Matrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ctx.one();
  return m;
}

Matrix Matrix::diagonal(const FieldCtx& ctx, const Vector& entries) {
  Matrix m(ctx, entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::from_columns(const FieldCtx& ctx, std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(ctx, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require_dims(cols[j].size() == rows, "column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(ctx_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require_dims(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
  Matrix b(ctx_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (!((*this)(i, j) == (*this)(j, i))) return false;
  return true;
}

Scalar Matrix::determinant() const {
  require_dims(is_square(), "determinant of non-square matrix");
  Matrix a = *this;
  Scalar det = ctx_.one();
  for (std::size_t c = 0; c < rows_; ++c) {
    std::size_t pivot = c;
    while (pivot < rows_ && a(pivot, c).is_zero()) ++pivot;
    if (pivot == rows_) return ctx_.zero();
    if (pivot != c) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(a(c, j), a(pivot, j));
      det = -det;
    }
    det *= a(c, c);
    Scalar inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < rows_; ++i) {
      if (a(i, c).is_zero()) continue;
      Scalar factor = a(i, c) * inv;
      for (std::size_t j = c; j < cols_; ++j) a(i, j) -= factor * a(c, j);
    }
  }
  return det;
}

std::size_t Matrix::rank() const {
  Matrix a = *this;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t pivot = r;
    while (pivot < rows_ && a(pivot, c).is_zero()) ++pivot;
    if (pivot == rows_) continue;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(a(r, j), a(pivot, j));
    Scalar inv = a(r, c).inverse();
    for (std::size_t i = r + 1; i < rows_; ++i) {
      if (a(i, c).is_zero()) continue;
      Scalar factor = a(i, c) * inv;
      for (std::size_t j = c; j < cols_; ++j) a(i, j) -= factor * a(r, j);
    }
    ++r;
  }
  return r;
}

Vector Matrix::apply(const Vector& v) const {
  require_dims(v.size() == cols_, "matrix-vector product");
  Vector out(rows_, ctx_.zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a.ctx_, b.ctx_);
  require_dims(a.cols_ == b.rows_, "matrix product");
  Matrix c(a.ctx_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a.ctx_, b.ctx_);
  require_dims(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix c = a;
  for (auto& x : c.data_) x *= s;
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.ctx_ == b.ctx_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::str() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ',';
    out << vector_str(row(i));
  }
  out << ']';
  return out.str();
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  require_same_field(a.ctx(), b.ctx());
  Matrix m(a.ctx(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

Matrix embed(const Matrix& inner, std::size_t n, std::size_t offset) {
  require_dims(inner.is_square() && offset + inner.rows() <= n, "embedding out of range");
  Matrix m = Matrix::identity(inner.ctx(), n);
  for (std::size_t i = 0; i < inner.rows(); ++i)
    for (std::size_t j = 0; j < inner.cols(); ++j) m(offset + i, offset + j) = inner(i, j);
  return m;
}

Vector operator+(const Vector& a, const Vector& b) {
  require_dims(a.size() == b.size(), "vector sum");
  Vector c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

Vector operator-(const Vector& a, const Vector& b) {
  require_dims(a.size() == b.size(), "vector difference");
  Vector c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

Vector operator*(const Scalar& s, const Vector& v) {
  Vector c = v;
  for (auto& x : c) x *= s;
  return c;
}

Vector zero_vector(const FieldCtx& ctx, std::size_t n) { return Vector(n, ctx.zero()); }

Vector unit_vector(const FieldCtx& ctx, std::size_t n, std::size_t i) {
  Vector v = zero_vector(ctx, n);
  v[i] = ctx.one();
  return v;
}

bool is_zero_vector(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

std::string vector_str(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].str();
  }
  return s + "]";
}

}  // namespace witt
