#pragma once

// Textual forms:
//
//   expr    := term ('+' term)*                  orthogonal sum
//   term    := factor ('*' factor)*              tensor product
//   factor  := '<' [scalar (',' scalar)*] '>'
//            | 'mat' '[' row (',' row)* ']'      row := '[' scalar (',' scalar)* ']'
//            | 'pfister' '(' scalar (',' scalar)* ')'
//            | '(' expr ')'
//   input   := expr ['@' ('Q' | 'R' | 'Fp' '(' prime ')')]
//   scalar  := ['-'] digits ['/' digits]
//
// Without a suffix the field is Q.

#include <optional>
#include <string>
#include <vector>

#include "witt/form.hpp"

namespace witt {

struct Expr {
  enum class Kind { Diagonal, Matrix, Pfister, Sum, Product };

  Kind kind = Kind::Diagonal;
  std::vector<mpq_class> scalars;              // Diagonal, Pfister
  std::vector<std::vector<mpq_class>> rows;    // Matrix
  std::vector<Expr> children;                  // Sum, Product (flattened, >= 2)

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.scalars == b.scalars && a.rows == b.rows && a.children == b.children;
  }
};

struct FormExpr {
  Expr root;
  std::optional<FieldCtx> field;

  FieldCtx ctx() const { return field.value_or(FieldCtx::rationals()); }
  friend bool operator==(const FormExpr& a, const FormExpr& b) { return a.root == b.root && a.field == b.field; }
};

// Throws ParseError carrying the 0-based offset of the offending character.
FormExpr parse_form(const std::string& text);
// Also throws ParseError for a bare field tag that is not Q, R or Fp(p).
FieldCtx parse_field(const std::string& text);

std::string format(const Expr& e);
std::string format(const FormExpr& f);

GramMatrix evaluate(const FormExpr& f);
inline GramMatrix evaluate_form(const std::string& text) { return evaluate(parse_form(text)); }

// Diagonal input prints as "<...>", anything else as "mat[...]"; the field
// suffix is always present.
std::string to_expression(const GramMatrix& q);

}  // namespace witt
