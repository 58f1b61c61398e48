#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "witt/field.hpp"

namespace witt {

// Dense row-major matrix of exact scalars over a single field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const FieldCtx& ctx, std::size_t rows, std::size_t cols);
  // Rows must be rectangular; scalars must belong to ctx.
  Matrix(const FieldCtx& ctx, const std::vector<Vector>& rows);

  static Matrix identity(const FieldCtx& ctx, std::size_t n);
  static Matrix diagonal(const FieldCtx& ctx, const Vector& entries);
  static Matrix from_columns(const FieldCtx& ctx, std::size_t rows, const std::vector<Vector>& cols);

  const FieldCtx& ctx() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  bool is_symmetric() const;

  Scalar determinant() const;
  std::size_t rank() const;
  bool is_invertible() const { return is_square() && !determinant().is_zero(); }

  Vector apply(const Vector& v) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string str() const;

 private:
  FieldCtx ctx_ = FieldCtx::rationals();
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix block_diagonal(const Matrix& a, const Matrix& b);
// Identity of size n with `inner` placed at (offset, offset).
Matrix embed(const Matrix& inner, std::size_t n, std::size_t offset);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Scalar& s, const Vector& v);
Vector zero_vector(const FieldCtx& ctx, std::size_t n);
Vector unit_vector(const FieldCtx& ctx, std::size_t n, std::size_t i);
bool is_zero_vector(const Vector& v);
std::string vector_str(const Vector& v);

}  // namespace witt
