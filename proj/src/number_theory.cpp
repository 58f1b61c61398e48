#include "witt/number_theory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <vector>

#include "witt/error.hpp"

namespace witt {

namespace {

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    constexpr unsigned long kLimit = 10000;
    std::vector<bool> composite(kLimit, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i < kLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j < kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Brent's variant of Pollard rho; n odd composite.
mpz_class pollard_rho(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const mpz_class& v) { return mod(v * v + c, n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mod(q * abs(x - y), n);
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

int odd_part_char(const mpz_class& u, int modulus) {
  mpz_class r = mod(u, modulus);
  return static_cast<int>(r.get_si());
}

// (a, b)_v for square-free integers a, b.
int hilbert_squarefree(const mpz_class& a, const mpz_class& b, const Place& v) {
  if (v.real) return (a < 0 && b < 0) ? -1 : 1;
  const mpz_class& p = v.prime;
  int alpha = mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()) ? 1 : 0;
  int beta = mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()) ? 1 : 0;
  mpz_class u = alpha ? mpz_class(a / p) : a;
  mpz_class w = beta ? mpz_class(b / p) : b;
  if (p == 2) {
    auto eps = [](const mpz_class& x) { return odd_part_char(x, 4) == 3 ? 1 : 0; };
    auto omega = [](const mpz_class& x) {
      int r = odd_part_char(x, 8);
      return (r == 3 || r == 5) ? 1 : 0;
    };
    int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
    return (e % 2) ? -1 : 1;
  }
  int result = 1;
  mpz_class half = (p - 1) / 2;
  if (alpha && beta && mpz_odd_p(half.get_mpz_t())) result = -result;
  if (beta) result *= legendre(u, p);
  if (alpha) result *= legendre(w, p);
  return result;
}

}  // namespace

int legendre(const mpz_class& a, const mpz_class& p) {
  mpz_class r = mod(a, p);
  if (r == 0) return 0;
  mpz_class e = powm(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

bool is_probable_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::map<mpz_class, unsigned> factorize(const mpz_class& n) {
  if (n == 0) throw WittError(ErrorKind::ZeroScalar, "factorization of zero");
  // Hilbert symbols factor the same entries, and products of them, over and
  // over. Results are memoised and every large prime seen is kept so later
  // products can be split by division before falling back to Pollard rho.
  static std::mutex cache_mutex;
  static std::map<mpz_class, std::map<mpz_class, unsigned>> cache;
  static std::set<mpz_class> large_primes;
  mpz_class m = abs(n);
  std::vector<mpz_class> known;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
    known.assign(large_primes.begin(), large_primes.end());
  }
  const mpz_class key = m;
  std::map<mpz_class, unsigned> out;
  auto divide_out = [&](const mpz_class& q) {
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), q.get_mpz_t());
      ++e;
    }
    if (e) out[q] += e;
  };
  for (unsigned long q : small_primes()) {
    if (m == 1 || mpz_cmp_ui(m.get_mpz_t(), q * q) < 0) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), q)) divide_out(mpz_class(q));
  }
  if (m > 1 && !is_probable_prime(m)) {
    for (const auto& q : known) {
      if (m == 1) break;
      divide_out(q);
    }
  }
  factor_into(m, out);
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (cache.size() > 200000) cache.clear();
  if (large_primes.size() > 20000) large_primes.clear();
  cache.emplace(key, out);
  for (const auto& [q, e] : out)
    if (q > 10000) large_primes.insert(q);
  return out;
}

mpz_class squarefree_part(const mpz_class& n) {
  if (n == 0) throw WittError(ErrorKind::ZeroScalar, "square class of zero");
  mpz_class kernel = sgn(n);
  for (const auto& [prime, exponent] : factorize(n)) {
    if (exponent % 2) kernel *= prime;
  }
  return kernel;
}

mpz_class squarefree_part(const mpq_class& q) {
  // n/d and n*d differ by the square d^2.
  return squarefree_part(mpz_class(q.get_num() * q.get_den()));
}

std::optional<mpz_class> sqrt_mod(const mpz_class& a, const mpz_class& p) {
  mpz_class n = mod(a, p);
  if (n == 0) return mpz_class(0);
  if (legendre(n, p) != 1) return std::nullopt;
  if (mod(p, 4) == 3) {
    mpz_class r = powm(n, (p + 1) / 4, p);
    return std::min(r, mpz_class(p - r));
  }
  // Tonelli-Shanks
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (legendre(z, p) != -1) ++z;
  mpz_class c = powm(z, q, p);
  mpz_class r = powm(n, (q + 1) / 2, p);
  mpz_class t = powm(n, q, p);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class t2 = t;
    while (t2 != 1) {
      t2 = mod(t2 * t2, p);
      ++i;
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = mod(b * b, p);
    r = mod(r * b, p);
    c = mod(b * b, p);
    t = mod(t * c, p);
    m = i;
  }
  return std::min(r, mpz_class(p - r));
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn, rd);
}

std::string Place::str() const { return real ? "inf" : prime.get_str(); }

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v) {
  if (sgn(a) == 0 || sgn(b) == 0) throw WittError(ErrorKind::ZeroScalar, "Hilbert symbol of zero");
  return hilbert_squarefree(squarefree_part(a), squarefree_part(b), v);
}

bool is_local_square(const mpq_class& a, const Place& v) {
  if (sgn(a) == 0) return true;
  mpz_class s = squarefree_part(a);
  if (v.real) return s > 0;
  if (mpz_divisible_p(s.get_mpz_t(), v.prime.get_mpz_t())) return false;
  if (v.prime == 2) return mod(s, 8) == 1;
  return legendre(s, v.prime) == 1;
}

int hasse_invariant(const std::vector<mpq_class>& entries, const Place& v) {
  std::vector<mpz_class> sf;
  for (const auto& e : entries) sf.push_back(squarefree_part(e));
  int c = 1;
  for (std::size_t i = 0; i < sf.size(); ++i)
    for (std::size_t j = i + 1; j < sf.size(); ++j) c *= hilbert_squarefree(sf[i], sf[j], v);
  return c;
}

std::vector<Place> relevant_places(const std::vector<mpq_class>& entries) {
  std::set<mpz_class> primes{2};
  for (const auto& e : entries) {
    if (sgn(e) == 0) continue;
    for (const auto& [prime, exponent] : factorize(squarefree_part(e))) primes.insert(prime);
  }
  std::vector<Place> places{Place::real_place()};
  for (const auto& q : primes) places.push_back(Place::finite(q));
  return places;
}

}  // namespace witt
