#pragma once

// Quadratic forms as symmetric Gram matrices, q(x) = x^t B x.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "witt/field.hpp"
#include "witt/matrix.hpp"

namespace witt {

class GramMatrix {
 public:
  GramMatrix() = default;
  // Throws DimensionMismatch for non-square input and PreconditionViolated
  // for a non-symmetric one.
  explicit GramMatrix(Matrix m);

  static GramMatrix zero_dim(const FieldCtx& ctx) { return GramMatrix(Matrix(ctx, 0, 0)); }

  const FieldCtx& ctx() const { return m_.ctx(); }
  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  bool is_diagonal() const;
  bool is_nondegenerate() const { return m_.is_invertible(); }
  Vector diagonal_entries() const;

  friend bool operator==(const GramMatrix& a, const GramMatrix& b) { return a.m_ == b.m_; }
  std::string str() const { return m_.str(); }

 private:
  Matrix m_;
};

// <a_1, ..., a_n>
struct DiagonalForm {
  FieldCtx ctx = FieldCtx::rationals();
  Vector entries;

  DiagonalForm() = default;
  DiagonalForm(FieldCtx c, Vector e);

  std::size_t dim() const { return entries.size(); }
  bool is_nondegenerate() const;
  GramMatrix gram() const;
  std::string str() const;

  friend bool operator==(const DiagonalForm& a, const DiagonalForm& b) {
    return a.ctx == b.ctx && a.entries == b.entries;
  }
};

// source = M^t * target * M, i.e. source(x) = target(Mx).
struct IsometryWitness {
  Matrix M;
  GramMatrix source;
  GramMatrix target;
  std::vector<std::string> trace;

  bool verify() const;
};

GramMatrix symmetrize(const Matrix& raw);

Scalar evaluate(const GramMatrix& q, const Vector& v);
Scalar bilinear(const GramMatrix& q, const Vector& x, const Vector& y);

// M^t q M; M need not be invertible.
GramMatrix apply_congruence(const GramMatrix& q, const Matrix& M);

struct Diagonalization {
  DiagonalForm form;
  IsometryWitness witness;
};

Diagonalization diagonalize(const GramMatrix& q);

struct RadicalSplit {
  GramMatrix nondegenerate;
  std::size_t null_dim = 0;
  // source = nondegenerate (+) zero block of size null_dim.
  IsometryWitness witness;
};

RadicalSplit radical_split(const GramMatrix& q);

GramMatrix direct_sum(const GramMatrix& a, const GramMatrix& b);
GramMatrix tensor_product(const GramMatrix& a, const GramMatrix& b);
DiagonalForm direct_sum(const DiagonalForm& a, const DiagonalForm& b);
DiagonalForm tensor_product(const DiagonalForm& a, const DiagonalForm& b);
DiagonalForm negate(const DiagonalForm& a);

// Square class of (-1)^(n(n-1)/2) * prod a_i; DegenerateForm on a zero entry.
SquareClass signed_discriminant(const DiagonalForm& q);

// Counts of positive and negative entries; only meaningful over Q and R_Q.
std::pair<std::size_t, std::size_t> sign_counts(const DiagonalForm& q);

}  // namespace witt
