#include "witt/expression.hpp"

#include <cctype>

#include "witt/error.hpp"
#include "witt/witt_ring.hpp"

namespace witt {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  FormExpr parse_input() {
    FormExpr out;
    out.root = parse_expr();
    skip();
    if (peek() == '@') {
      ++i_;
      out.field = parse_field_tag();
    }
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return out;
  }

  FieldCtx parse_bare_field() {
    FieldCtx f = parse_field_tag();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::string near = i_ < s_.size() ? std::string("'") + s_[i_] + "'" : "end of input";
    throw ParseError(i_, what + " near " + near);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  bool keyword(const std::string& kw) {
    skip();
    if (s_.compare(i_, kw.size(), kw) != 0) return false;
    i_ += kw.size();
    return true;
  }

  mpz_class parse_digits() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    return mpz_class(s_.substr(start, i_ - start));
  }

  mpq_class parse_scalar() {
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++i_;
    }
    mpz_class num = parse_digits();
    mpz_class den = 1;
    if (peek() == '/') {
      ++i_;
      const std::size_t at = i_;
      den = parse_digits();
      if (den == 0) {
        i_ = at;
        fail("zero denominator");
      }
    }
    mpq_class q(negative ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
  }

  std::vector<mpq_class> parse_list(char close, bool allow_empty) {
    std::vector<mpq_class> out;
    if (allow_empty && peek() == close) {
      ++i_;
      return out;
    }
    out.push_back(parse_scalar());
    while (peek() == ',') {
      ++i_;
      out.push_back(parse_scalar());
    }
    expect(close);
    return out;
  }

  static Expr combine(Expr::Kind kind, std::vector<Expr> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    Expr e;
    e.kind = kind;
    for (auto& p : parts) {
      if (p.kind == kind) {
        for (auto& c : p.children) e.children.push_back(std::move(c));
      } else {
        e.children.push_back(std::move(p));
      }
    }
    return e;
  }

  Expr parse_expr() {
    std::vector<Expr> parts{parse_term()};
    while (peek() == '+') {
      ++i_;
      parts.push_back(parse_term());
    }
    return combine(Expr::Kind::Sum, std::move(parts));
  }

  Expr parse_term() {
    std::vector<Expr> parts{parse_factor()};
    while (peek() == '*') {
      ++i_;
      parts.push_back(parse_factor());
    }
    return combine(Expr::Kind::Product, std::move(parts));
  }

  Expr parse_factor() {
    Expr e;
    const char c = peek();
    if (c == '<') {
      ++i_;
      e.kind = Expr::Kind::Diagonal;
      e.scalars = parse_list('>', true);
      return e;
    }
    if (c == '(') {
      ++i_;
      e = parse_expr();
      expect(')');
      return e;
    }
    if (keyword("mat")) {
      e.kind = Expr::Kind::Matrix;
      expect('[');
      do {
        expect('[');
        e.rows.push_back(parse_list(']', false));
      } while (peek() == ',' && (++i_, true));
      expect(']');
      return e;
    }
    if (keyword("pfister")) {
      e.kind = Expr::Kind::Pfister;
      expect('(');
      e.scalars = parse_list(')', true);
      return e;
    }
    fail("expected '<', '(', 'mat' or 'pfister'");
  }

  FieldCtx parse_field_tag() {
    skip();
    const std::size_t at = i_;
    if (keyword("Fp")) {
      expect('(');
      const std::size_t pos = i_;
      mpz_class p = parse_digits();
      expect(')');
      try {
        return FieldCtx::prime_field(p);
      } catch (const WittError&) {
        throw WittError(ErrorKind::InvalidField, "at position " + std::to_string(pos) + ": Fp(" + p.get_str() +
                                                     ") needs an odd prime");
      }
    }
    if (keyword("Q")) return FieldCtx::rationals();
    if (keyword("R")) return FieldCtx::real();
    i_ = at;
    fail("expected field Q, R or Fp(p)");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

std::string join(const std::vector<mpq_class>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s;
}

Vector to_field(const FieldCtx& ctx, const std::vector<mpq_class>& v) {
  Vector out;
  for (const auto& a : v) out.push_back(ctx.from_rational(a));
  return out;
}

GramMatrix eval(const Expr& e, const FieldCtx& ctx) {
  switch (e.kind) {
    case Expr::Kind::Diagonal:
      return DiagonalForm(ctx, to_field(ctx, e.scalars)).gram();
    case Expr::Kind::Pfister:
      return pfister(ctx, to_field(ctx, e.scalars)).expanded.gram();
    case Expr::Kind::Matrix: {
      std::vector<Vector> rows;
      for (const auto& r : e.rows) {
        if (r.size() != e.rows.size()) throw WittError(ErrorKind::DimensionMismatch, "matrix form is not square");
        rows.push_back(to_field(ctx, r));
      }
      return GramMatrix(Matrix(ctx, rows));
    }
    case Expr::Kind::Sum: {
      GramMatrix acc = eval(e.children.front(), ctx);
      for (std::size_t i = 1; i < e.children.size(); ++i) acc = direct_sum(acc, eval(e.children[i], ctx));
      return acc;
    }
    case Expr::Kind::Product: {
      GramMatrix acc = eval(e.children.front(), ctx);
      for (std::size_t i = 1; i < e.children.size(); ++i) acc = tensor_product(acc, eval(e.children[i], ctx));
      return acc;
    }
  }
  throw WittError(ErrorKind::PreconditionViolated, "unknown expression node");
}

}  // namespace

FormExpr parse_form(const std::string& text) { return Parser(text).parse_input(); }

FieldCtx parse_field(const std::string& text) { return Parser(text).parse_bare_field(); }

std::string format(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Diagonal:
      return "<" + join(e.scalars) + ">";
    case Expr::Kind::Pfister:
      return "pfister(" + join(e.scalars) + ")";
    case Expr::Kind::Matrix: {
      std::string s = "mat[";
      for (std::size_t i = 0; i < e.rows.size(); ++i) s += (i ? ",[" : "[") + join(e.rows[i]) + "]";
      return s + "]";
    }
    case Expr::Kind::Sum:
    case Expr::Kind::Product: {
      const bool product = e.kind == Expr::Kind::Product;
      std::string s;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) s += product ? " * " : " + ";
        const Expr& c = e.children[i];
        // Nested nodes of the same kind are flattened by the parser, so only
        // a sum inside a product needs brackets.
        const bool wrap = product && c.kind == Expr::Kind::Sum;
        s += wrap ? "(" + format(c) + ")" : format(c);
      }
      return s;
    }
  }
  return {};
}

std::string format(const FormExpr& f) {
  std::string s = format(f.root);
  if (f.field) s += " @ " + f.field->tag();
  return s;
}

GramMatrix evaluate(const FormExpr& f) { return eval(f.root, f.ctx()); }

std::string to_expression(const GramMatrix& q) {
  Expr e;
  if (q.is_diagonal()) {
    e.kind = Expr::Kind::Diagonal;
    for (const auto& a : q.diagonal_entries()) e.scalars.push_back(a.value());
  } else {
    e.kind = Expr::Kind::Matrix;
    for (std::size_t i = 0; i < q.dim(); ++i) {
      std::vector<mpq_class> row;
      for (std::size_t j = 0; j < q.dim(); ++j) row.push_back(q(i, j).value());
      e.rows.push_back(row);
    }
  }
  return format(FormExpr{e, q.ctx()});
}

}  // namespace witt
