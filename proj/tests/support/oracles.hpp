#pragma once

// Brute-force reference implementations used to cross-check the library.
// They share no code with it beyond GMP and the Matrix container.

#include <gmpxx.h>

#include <cstdlib>
#include <set>
#include <vector>

#include "witt/matrix.hpp"

namespace oracle {

inline long mod(long a, long m) { return ((a % m) + m) % m; }

inline std::set<long> squares_mod(long p) {
  std::set<long> s;
  for (long x = 0; x < p; ++x) s.insert(x * x % p);
  return s;
}

inline bool is_square_mod(long a, long p) { return squares_mod(p).count(mod(a, p)) > 0; }

inline int legendre(long a, long p) {
  if (mod(a, p) == 0) return 0;
  return is_square_mod(a, p) ? 1 : -1;
}

inline long least_nonresidue(long p) {
  for (long a = 2;; ++a)
    if (!is_square_mod(a, p)) return a;
}

// Trial division by squares.
inline long squarefree(long n) {
  long sign = n < 0 ? -1 : 1;
  long m = std::labs(n);
  for (long d = 2; d * d <= m; ++d)
    while (m % (d * d) == 0) m /= d * d;
  return sign * m;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// (a, b)_v for square-free integers by searching for a primitive solution of
// a x^2 + b y^2 = z^2 modulo p^2 (odd p) or 16 (p = 2), which decides local
// solvability for coefficients of valuation at most 1. p = 0 is the real place.
inline int hilbert(long a, long b, long p) {
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  const long m = p == 2 ? 16 : p * p;
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y)
      for (long z = 0; z < m; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        if (mod(a * x * x + b * y * y - z * z, m) == 0) return 1;
      }
  return -1;
}

// Whether the diagonal form with the given integer entries has a nonzero
// zero over F_p, by exhausting F_p^n.
inline bool isotropic_mod(const std::vector<long>& entries, long p) {
  const std::size_t n = entries.size();
  std::vector<long> v(n, 0);
  while (true) {
    std::size_t i = 0;
    while (i < n && v[i] == p - 1) v[i++] = 0;
    if (i == n) return false;
    ++v[i];
    long s = 0;
    for (std::size_t k = 0; k < n; ++k) s = mod(s + entries[k] * v[k] * v[k], p);
    if (s == 0) return true;
  }
}

// Number of vectors in F_p^n (including 0) on which the diagonal form vanishes.
inline long count_zeros_mod(const std::vector<long>& entries, long p) {
  const std::size_t n = entries.size();
  std::vector<long> v(n, 0);
  long count = 0;
  while (true) {
    long s = 0;
    for (std::size_t k = 0; k < n; ++k) s = mod(s + entries[k] * v[k] * v[k], p);
    count += s == 0;
    std::size_t i = 0;
    while (i < n && v[i] == p - 1) v[i++] = 0;
    if (i == n) return count;
    ++v[i];
  }
}

// A non-degenerate diagonal form of dimension 2m over F_p is hyperbolic iff it
// has exactly p^(2m-1) + (p-1) p^(m-1) zeros; the other form of that
// dimension has p^(2m-1) - (p-1) p^(m-1). The empty form is hyperbolic.
inline bool hyperbolic_mod(const std::vector<long>& entries, long p) {
  if (entries.size() % 2) return false;
  const long m = static_cast<long>(entries.size()) / 2;
  if (m == 0) return true;
  long big = 1, small = 1;
  for (long i = 0; i < 2 * m - 1; ++i) big *= p;
  for (long i = 0; i < m - 1; ++i) small *= p;
  return count_zeros_mod(entries, p) == big + (p - 1) * small;
}

// M^t B M recomputed with plain rational loops (reduced mod p when p > 0)
// and compared entrywise against A.
inline bool congruence_holds(const witt::Matrix& A, const witt::Matrix& B, const witt::Matrix& M, long p) {
  const std::size_t n = B.rows(), m = M.cols();
  if (A.rows() != m || A.cols() != m || M.rows() != n) return false;
  auto reduce = [&](mpq_class x) {
    if (p == 0) return x;
    mpz_class num = x.get_num() % p;
    if (num < 0) num += p;
    return mpq_class(num);
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      mpq_class s = 0;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) s += M(k, i).value() * B(k, l).value() * M(l, j).value();
      if (p != 0 && s.get_den() != 1) return false;
      if (reduce(s) != reduce(A(i, j).value())) return false;
    }
  return true;
}

}  // namespace oracle
