#pragma once

// Random expression trees for parser round trips. Children of a sum are never
// sums and children of a product are never products, matching the flattened
// shape the parser produces.

#include <string>
#include <vector>

#include "witt/expression.hpp"
#include "witt/random.hpp"

namespace corpus {

inline mpq_class scalar(witt::Rng& rng, bool integral) {
  long num = static_cast<long>(rng() % 41) - 20;
  if (num == 0) num = 1;
  if (integral || rng() % 3) return num;
  mpq_class q(num, static_cast<long>(1 + rng() % 9));
  q.canonicalize();
  return q;
}

inline witt::Expr tree(witt::Rng& rng, int depth, bool integral, witt::Expr::Kind parent = witt::Expr::Kind::Diagonal) {
  using K = witt::Expr::Kind;
  witt::Expr e;
  const unsigned pick = depth > 0 ? rng() % 5 : rng() % 3;
  if (pick >= 3) {
    e.kind = pick == 3 ? K::Sum : K::Product;
    if (e.kind == parent) e.kind = e.kind == K::Sum ? K::Product : K::Sum;
    const std::size_t n = 2 + rng() % 2;
    for (std::size_t i = 0; i < n; ++i) e.children.push_back(tree(rng, depth - 1, integral, e.kind));
    return e;
  }
  if (pick == 0) {
    e.kind = K::Diagonal;
    for (std::size_t i = 0, n = 1 + rng() % 4; i < n; ++i) e.scalars.push_back(scalar(rng, integral));
  } else if (pick == 1) {
    e.kind = K::Matrix;
    const std::size_t n = 1 + rng() % 3;
    e.rows.assign(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) e.rows[i][j] = e.rows[j][i] = scalar(rng, integral);
  } else {
    e.kind = K::Pfister;
    for (std::size_t i = 0, n = 1 + rng() % 2; i < n; ++i) e.scalars.push_back(scalar(rng, integral));
  }
  return e;
}

// `count` expressions with a mix of field suffixes.
inline std::vector<witt::FormExpr> expressions(std::size_t count, std::uint64_t seed) {
  witt::Rng rng(seed);
  const std::vector<long> primes{3, 5, 7, 11, 13, 101};
  std::vector<witt::FormExpr> out;
  for (std::size_t i = 0; i < count; ++i) {
    witt::FormExpr f;
    switch (rng() % 4) {
      case 0:
        break;
      case 1:
        f.field = witt::FieldCtx::rationals();
        break;
      case 2:
        f.field = witt::FieldCtx::real();
        break;
      default:
        f.field = witt::FieldCtx::prime_field(primes[rng() % primes.size()]);
    }
    f.root = tree(rng, 2, f.field && f.field->is_prime_field());
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace corpus
