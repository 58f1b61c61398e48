#pragma once

// Exact coefficient fields: the rationals, prime fields of odd characteristic,
// and the rationals viewed inside the reals (square class = sign).

#include <gmpxx.h>

#include <string>
#include <vector>

#include "witt/error.hpp"

namespace witt {

enum class FieldKind { Rationals, PrimeField, RealQ };

class Scalar {
 public:
  Scalar() = default;

  static Scalar rational(const mpq_class& value);
  // `value` is reduced into [0, modulus).
  static Scalar residue(const mpz_class& value, const mpz_class& modulus);

  const mpq_class& value() const { return value_; }
  // 0 for characteristic zero.
  const mpz_class& modulus() const { return modulus_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  int sign() const { return sgn(value_); }

  Scalar inverse() const;
  Scalar operator-() const;

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.value_ == y.value_ && x.modulus_ == y.modulus_;
  }
  friend bool operator<(const Scalar& x, const Scalar& y) { return x.value_ < y.value_; }

  // "n" or "n/d".
  std::string str() const;

 private:
  Scalar(mpq_class value, mpz_class modulus) : value_(std::move(value)), modulus_(std::move(modulus)) {}

  mpq_class value_;
  mpz_class modulus_;
};

using Vector = std::vector<Scalar>;

class FieldCtx {
 public:
  static FieldCtx rationals();
  static FieldCtx real();
  // Throws InvalidField unless p is an odd prime.
  static FieldCtx prime_field(const mpz_class& p);

  FieldKind kind() const { return kind_; }
  const mpz_class& p() const { return p_; }
  bool is_prime_field() const { return kind_ == FieldKind::PrimeField; }
  bool is_rationals() const { return kind_ == FieldKind::Rationals; }
  bool is_real() const { return kind_ == FieldKind::RealQ; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  Scalar from_integer(const mpz_class& v) const;
  // Over F_p the denominator must be invertible (DivisionByZero otherwise).
  Scalar from_rational(const mpq_class& v) const;
  bool contains(const Scalar& s) const;

  // "Q", "R" or "Fp(<p>)".
  std::string tag() const;

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }

 private:
  FieldCtx(FieldKind kind, mpz_class p) : kind_(kind), p_(std::move(p)) {}

  FieldKind kind_ = FieldKind::Rationals;
  mpz_class p_ = 0;
};

void require_same_field(const FieldCtx& a, const FieldCtx& b);

enum class ArithOp { Add, Sub, Mul, Div, Neg };

Scalar field_arith(const FieldCtx& ctx, ArithOp op, const Scalar& x, const Scalar& y);

// Canonical representative of a F*/(F*)^2 class: a square-free integer over Q,
// 1 or the least nonresidue over F_p, +-1 over R_Q.
struct SquareClass {
  Scalar representative;

  bool is_trivial() const { return representative.is_one(); }
  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.representative == b.representative;
  }
  friend bool operator<(const SquareClass& a, const SquareClass& b) {
    return a.representative < b.representative;
  }
};

SquareClass square_class(const FieldCtx& ctx, const Scalar& a);
bool is_square(const FieldCtx& ctx, const Scalar& a);
SquareClass class_product(const FieldCtx& ctx, const SquareClass& a, const SquareClass& b);

// Only the finite cases (F_p, R_Q); throws InfiniteSquareClassGroup for Q.
std::vector<SquareClass> square_class_group(const FieldCtx& ctx);

// Least positive quadratic nonresidue mod p.
mpz_class least_nonresidue(const mpz_class& p);

}  // namespace witt
