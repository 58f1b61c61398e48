#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace witt {

// Euler's criterion: a^((p-1)/2) mod p mapped to {-1, 0, +1}.
int legendre(const mpz_class& a, const mpz_class& p);

bool is_probable_prime(const mpz_class& n);

// Prime factorization of |n| (n != 0), ascending primes with multiplicity.
std::map<mpz_class, unsigned> factorize(const mpz_class& n);

// Sign-preserving square-free kernel: n = kernel * s^2.
mpz_class squarefree_part(const mpz_class& n);
// Square-free integer in the square class of a nonzero rational.
mpz_class squarefree_part(const mpq_class& q);

// Square root of a residue mod an odd prime (Tonelli-Shanks); nullopt if none.
std::optional<mpz_class> sqrt_mod(const mpz_class& a, const mpz_class& p);

std::optional<mpq_class> rational_sqrt(const mpq_class& q);

struct Place {
  bool real = true;
  mpz_class prime = 0;

  static Place real_place() { return {}; }
  static Place finite(const mpz_class& q) { return {false, q}; }

  std::string str() const;

  friend bool operator==(const Place& a, const Place& b) { return a.real == b.real && a.prime == b.prime; }
  friend bool operator<(const Place& a, const Place& b) {
    if (a.real != b.real) return a.real;
    return a.prime < b.prime;
  }
};

// (a, b)_v for nonzero rationals; throws ZeroScalar on zero input.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v);

// Whether a nonzero rational is a square in the completion at v.
bool is_local_square(const mpq_class& a, const Place& v);

// prod_{i<j} (a_i, a_j)_v
int hasse_invariant(const std::vector<mpq_class>& entries, const Place& v);

// RealPlace, 2, and every prime dividing a numerator or denominator to an odd
// power (primes dividing only squares cannot change any Hilbert symbol).
std::vector<Place> relevant_places(const std::vector<mpq_class>& entries);

}  // namespace witt
