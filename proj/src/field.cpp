#include "witt/field.hpp"

#include "witt/number_theory.hpp"

namespace witt {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroScalar: return "ZeroScalar";
    case ErrorKind::InfiniteSquareClassGroup: return "InfiniteSquareClassGroup";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::IsotropicReflectionVector: return "IsotropicReflectionVector";
    case ErrorKind::NotIsotropic: return "NotIsotropic";
    case ErrorKind::NotIsotropicVector: return "NotIsotropicVector";
    case ErrorKind::UnsupportedFieldForVectorSearch: return "UnsupportedFieldForVectorSearch";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::InfiniteRing: return "InfiniteRing";
    case ErrorKind::NotInIdealPower: return "NotInIdealPower";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ZeroEntry: return "ZeroEntry";
  }
  return "UnknownError";
}

namespace {

mpz_class mod_reduce(const mpz_class& v, const mpz_class& p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r;
}

void check_moduli(const Scalar& x, const Scalar& y) {
  if (x.modulus() != y.modulus()) {
    throw WittError(ErrorKind::FieldMismatch, "scalars from different fields");
  }
}

}  // namespace

Scalar Scalar::rational(const mpq_class& value) {
  mpq_class v = value;
  v.canonicalize();
  return Scalar(v, 0);
}

Scalar Scalar::residue(const mpz_class& value, const mpz_class& modulus) {
  return Scalar(mpq_class(mod_reduce(value, modulus)), modulus);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw WittError(ErrorKind::DivisionByZero, "inverse of zero");
  if (modulus_ == 0) return Scalar(1 / value_, 0);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), value_.get_num_mpz_t(), modulus_.get_mpz_t());
  return Scalar(mpq_class(inv), modulus_);
}

Scalar Scalar::operator-() const {
  if (modulus_ == 0) return Scalar(-value_, 0);
  return residue(-value_.get_num(), modulus_);
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  check_moduli(x, y);
  if (x.modulus_ == 0) return Scalar(x.value_ + y.value_, 0);
  return Scalar::residue(x.value_.get_num() + y.value_.get_num(), x.modulus_);
}

Scalar operator-(const Scalar& x, const Scalar& y) {
  check_moduli(x, y);
  if (x.modulus_ == 0) return Scalar(x.value_ - y.value_, 0);
  return Scalar::residue(x.value_.get_num() - y.value_.get_num(), x.modulus_);
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  check_moduli(x, y);
  if (x.modulus_ == 0) return Scalar(x.value_ * y.value_, 0);
  return Scalar::residue(x.value_.get_num() * y.value_.get_num(), x.modulus_);
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  check_moduli(x, y);
  return x * y.inverse();
}

std::string Scalar::str() const { return value_.get_str(); }

FieldCtx FieldCtx::rationals() { return FieldCtx(FieldKind::Rationals, 0); }

FieldCtx FieldCtx::real() { return FieldCtx(FieldKind::RealQ, 0); }

FieldCtx FieldCtx::prime_field(const mpz_class& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_probable_prime(p)) {
    throw WittError(ErrorKind::InvalidField, "Fp(" + p.get_str() + ") needs an odd prime");
  }
  return FieldCtx(FieldKind::PrimeField, p);
}

Scalar FieldCtx::zero() const { return from_int(0); }

Scalar FieldCtx::one() const { return from_int(1); }

Scalar FieldCtx::from_int(long v) const { return from_integer(mpz_class(v)); }

Scalar FieldCtx::from_integer(const mpz_class& v) const {
  if (kind_ == FieldKind::PrimeField) return Scalar::residue(v, p_);
  return Scalar::rational(mpq_class(v));
}

Scalar FieldCtx::from_rational(const mpq_class& v) const {
  if (kind_ != FieldKind::PrimeField) return Scalar::rational(v);
  mpq_class c = v;
  c.canonicalize();
  Scalar den = Scalar::residue(c.get_den(), p_);
  if (den.is_zero()) {
    throw WittError(ErrorKind::DivisionByZero, "denominator of " + c.get_str() + " vanishes mod " + p_.get_str());
  }
  return Scalar::residue(c.get_num(), p_) / den;
}

bool FieldCtx::contains(const Scalar& s) const {
  return s.modulus() == (kind_ == FieldKind::PrimeField ? p_ : mpz_class(0));
}

std::string FieldCtx::tag() const {
  switch (kind_) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::RealQ: return "R";
    case FieldKind::PrimeField: return "Fp(" + p_.get_str() + ")";
  }
  return "?";
}

void require_same_field(const FieldCtx& a, const FieldCtx& b) {
  if (!(a == b)) throw WittError(ErrorKind::FieldMismatch, a.tag() + " vs " + b.tag());
}

Scalar field_arith(const FieldCtx& ctx, ArithOp op, const Scalar& x, const Scalar& y) {
  if (!ctx.contains(x) || (op != ArithOp::Neg && !ctx.contains(y))) {
    throw WittError(ErrorKind::FieldMismatch, "operand outside " + ctx.tag());
  }
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
    case ArithOp::Neg: return -x;
  }
  return x;
}

mpz_class least_nonresidue(const mpz_class& p) {
  mpz_class g = 2;
  while (legendre(g, p) != -1) ++g;
  return g;
}

SquareClass square_class(const FieldCtx& ctx, const Scalar& a) {
  if (a.is_zero()) throw WittError(ErrorKind::ZeroScalar, "square class of zero");
  switch (ctx.kind()) {
    case FieldKind::RealQ:
      return {ctx.from_int(a.sign())};
    case FieldKind::Rationals:
      return {ctx.from_integer(squarefree_part(a.value()))};
    case FieldKind::PrimeField:
      if (legendre(a.value().get_num(), ctx.p()) == 1) return {ctx.one()};
      return {ctx.from_integer(least_nonresidue(ctx.p()))};
  }
  return {ctx.one()};
}

bool is_square(const FieldCtx& ctx, const Scalar& a) {
  return a.is_zero() || square_class(ctx, a).is_trivial();
}

SquareClass class_product(const FieldCtx& ctx, const SquareClass& a, const SquareClass& b) {
  return square_class(ctx, a.representative * b.representative);
}

std::vector<SquareClass> square_class_group(const FieldCtx& ctx) {
  switch (ctx.kind()) {
    case FieldKind::Rationals:
      throw WittError(ErrorKind::InfiniteSquareClassGroup, "Q*/(Q*)^2 is infinite");
    case FieldKind::RealQ:
      return {{ctx.one()}, {ctx.from_int(-1)}};
    case FieldKind::PrimeField:
      return {{ctx.one()}, {ctx.from_integer(least_nonresidue(ctx.p()))}};
  }
  return {};
}

}  // namespace witt
