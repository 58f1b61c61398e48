#include "witt/isotropy.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <set>

#include "witt/number_theory.hpp"

namespace witt {

namespace {

using IntVec = std::vector<mpz_class>;

std::vector<mpq_class> rational_entries(const DiagonalForm& d) {
  std::vector<mpq_class> out;
  for (const auto& a : d.entries) out.push_back(a.value());
  return out;
}

DiagonalForm nondegenerate_diagonal(const GramMatrix& q, Matrix* transform = nullptr) {
  Diagonalization d = diagonalize(q);
  if (!d.form.is_nondegenerate()) throw WittError(ErrorKind::DegenerateForm, "form " + q.str() + " is degenerate");
  if (transform) *transform = d.witness.M;
  return d.form;
}

bool has_both_signs(const std::vector<mpq_class>& a) {
  bool pos = false, neg = false;
  for (const auto& x : a) (sgn(x) > 0 ? pos : neg) = true;
  return pos && neg;
}

bool rational_isotropic(const std::vector<mpq_class>& a) {
  const std::size_t n = a.size();
  if (n < 2 || !has_both_signs(a)) return false;
  if (n == 2) return rational_sqrt(-a[0] * a[1]).has_value();
  if (n >= 5) return true;
  for (const Place& v : relevant_places(a)) {
    if (!v.real && !is_locally_isotropic(a, v)) return false;
  }
  return true;
}

bool rational_isotropic(const IntVec& a) {
  std::vector<mpq_class> q(a.begin(), a.end());
  return rational_isotropic(q);
}

mpz_class isqrt_floor(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Primitive integer vector proportional to a rational one.
IntVec to_primitive(std::vector<mpq_class> v) {
  for (auto& x : v) x.canonicalize();
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  IntVec out;
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class c = x.get_num() * (l / x.get_den());
    out.push_back(c);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g > 1)
    for (auto& c : out) c /= g;
  return out;
}

// Pairs (u, w) with max(|u|, |w|) = h inside the box, one per +- class.
template <typename Fn>
bool for_shell(long h, long bu, long bw, Fn&& fn) {
  for (long u = 0; u <= std::min(h, bu); ++u) {
    for (long w = -std::min(h, bw); w <= std::min(h, bw); ++w) {
      if (std::max(u, std::labs(w)) != h) continue;
      if (u == 0 && w <= 0) continue;
      if (fn(u, w)) return true;
    }
  }
  return false;
}

using Int3 = std::array<mpz_class, 3>;

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_invert(r.get_mpz_t(), mod_pos(a, m).get_mpz_t(), m.get_mpz_t());
  return r;
}

// t with t^2 = a modulo the square-free modulus m, by CRT over its prime factors.
std::optional<mpz_class> sqrt_mod_squarefree(const mpz_class& a, const mpz_class& m) {
  mpz_class t = 0, modulus = 1;
  if (m == 1) return t;
  for (const auto& [p, e] : factorize(m)) {
    mpz_class ap = mod_pos(a, p);
    std::optional<mpz_class> r = p == 2 ? std::optional<mpz_class>(ap) : sqrt_mod(ap, p);
    if (!r) return std::nullopt;
    mpz_class k = mod_pos((*r - t) * inverse_mod(modulus, p), p);
    t += modulus * k;
    modulus *= p;
  }
  return t;
}

// x = r_i mod m_i for pairwise coprime positive moduli.
mpz_class crt(const std::array<mpz_class, 3>& r, const std::array<mpz_class, 3>& m) {
  mpz_class x = 0, modulus = 1;
  for (int i = 0; i < 3; ++i) {
    if (m[i] == 1) continue;
    mpz_class k = mod_pos((r[i] - x) * inverse_mod(modulus, m[i]), m[i]);
    x += modulus * k;
    modulus *= m[i];
  }
  return x;
}

// Basis of the lattice spanned by the generators (row echelon over Z).
std::array<Int3, 3> lattice_basis(std::vector<Int3> gens) {
  std::array<Int3, 3> basis;
  for (int col = 0; col < 3; ++col) {
    while (true) {
      int piv = -1;
      for (int i = 0; i < static_cast<int>(gens.size()); ++i)
        if (gens[i][col] != 0 && (piv < 0 || abs(gens[i][col]) < abs(gens[piv][col]))) piv = i;
      bool done = true;
      for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
        if (i == piv || gens[i][col] == 0) continue;
        mpz_class q = gens[i][col] / gens[piv][col];
        for (int k = 0; k < 3; ++k) gens[i][k] -= q * gens[piv][k];
        if (gens[i][col] != 0) done = false;
      }
      if (done) {
        basis[col] = gens[piv];
        gens.erase(gens.begin() + piv);
        break;
      }
    }
  }
  return basis;
}

using IntMat = std::vector<IntVec>;

mpq_class form_on(const IntMat& g, const std::vector<mpq_class>& x, const std::vector<mpq_class>& y) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    mpq_class row = 0;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) row += mpq_class(g[i][j]) * y[j];
    s += x[i] * row;
  }
  return s;
}

mpz_class round_q(const mpq_class& x) {
  mpz_class r;
  mpz_class num = 2 * x.get_num() + x.get_den();
  mpz_class den = 2 * x.get_den();
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return r;
}

// LLL (delta = 3/4) on the lattice spanned by b for the symmetric integral
// form g. With `absolute` the Lovasz test compares |q(b*_k)|, which is Simon's
// variant for indefinite forms; if a Gram-Schmidt vector is isotropic it is
// returned (rational coordinates) and b is left partially reduced.
std::optional<std::vector<mpq_class>> lll(std::vector<IntVec>& b, const IntMat& g, bool absolute) {
  const std::size_t m = b.size();
  if (m == 0) return std::nullopt;
  const std::size_t n = b[0].size();
  std::vector<std::vector<mpq_class>> mu(m, std::vector<mpq_class>(m)), star(m);
  std::vector<mpq_class> norm(m);
  auto gram_schmidt = [&]() -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < m; ++i) {
      star[i].assign(b[i].begin(), b[i].end());
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = form_on(g, std::vector<mpq_class>(b[i].begin(), b[i].end()), star[j]) / norm[j];
        for (std::size_t k = 0; k < n; ++k) star[i][k] -= mu[i][j] * star[j][k];
      }
      norm[i] = form_on(g, star[i], star[i]);
      if (norm[i] == 0) return i;
    }
    return std::nullopt;
  };
  if (auto i = gram_schmidt()) return star[*i];
  const mpq_class delta(3, 4);
  std::size_t k = 1;
  for (long swaps = 0; k < m && swaps < 20000;) {
    for (std::size_t j = k; j-- > 0;) {
      mpz_class q = round_q(mu[k][j]);
      if (q == 0) continue;
      for (std::size_t c = 0; c < n; ++c) b[k][c] -= q * b[j][c];
      if (auto i = gram_schmidt()) return star[*i];
    }
    mpq_class moved = norm[k] + mu[k][k - 1] * mu[k][k - 1] * norm[k - 1];
    bool swap = absolute ? abs(moved) < delta * abs(norm[k - 1]) : moved < delta * norm[k - 1];
    if (!swap) {
      ++k;
      continue;
    }
    std::swap(b[k], b[k - 1]);
    ++swaps;
    if (auto i = gram_schmidt()) return star[*i];
    k = std::max<std::size_t>(k - 1, 1);
  }
  return std::nullopt;
}

IntMat diagonal_int(const Int3& d) {
  IntMat g(3, IntVec(3, 0));
  for (int i = 0; i < 3; ++i) g[i][i] = d[i];
  return g;
}

// Integer basis of {x in Z^n : r . x = 0 for every row r}, by unimodular
// column operations on the (linearly independent) rows.
std::vector<IntVec> integer_kernel(std::vector<IntVec> rows, std::size_t n) {
  std::vector<IntVec> u(n, IntVec(n, 0));  // u[j] is column j of the transform
  for (std::size_t j = 0; j < n; ++j) u[j][j] = 1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = r + 1; j < n; ++j) {
      if (rows[r][j] == 0) continue;
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[r][r].get_mpz_t(), rows[r][j].get_mpz_t());
      const mpz_class ag = rows[r][r] / g, bg = rows[r][j] / g;
      auto mix = [&](mpz_class& x, mpz_class& y) {
        mpz_class nx = s * x + t * y;
        mpz_class ny = -bg * x + ag * y;
        x = nx;
        y = ny;
      };
      for (auto& row : rows) mix(row[r], row[j]);
      for (std::size_t i = 0; i < n; ++i) mix(u[r][i], u[j][i]);
    }
  }
  return std::vector<IntVec>(u.begin() + static_cast<long>(rows.size()), u.end());
}

// Zero of the integral ternary form g of height at most `height`.
std::optional<Int3> small_zero(const std::array<std::array<mpz_class, 3>, 3>& g, long height) {
  auto value = [&](long c0, long c1, long c2) {
    const long c[3] = {c0, c1, c2};
    mpz_class s = 0;
    for (int i = 0; i < 3; ++i) {
      s += g[i][i] * c[i] * c[i];
      for (int j = i + 1; j < 3; ++j) s += 2 * g[i][j] * c[i] * c[j];
    }
    return s;
  };
  for (long h = 1; h <= height; ++h)
    for (long c0 = 0; c0 <= h; ++c0)
      for (long c1 = -h; c1 <= h; ++c1) {
        const bool on_face = std::max(c0, std::labs(c1)) == h;
        for (long c2 = -h; c2 <= h; c2 += on_face ? 1 : 2 * h) {
          if (c0 == 0 && (c1 < 0 || (c1 == 0 && c2 <= 0))) continue;
          if (value(c0, c1, c2) == 0) return Int3{c0, c1, c2};
        }
      }
  return std::nullopt;
}

// a x^2 + b y^2 + c z^2 = 0 over square-free nonzero integers, known to be
// solvable. A short scan by height comes first so small solutions are
// preferred. Otherwise the coefficients are made pairwise coprime and the
// solution is read off the lattice {v : abc | a x^2 + b y^2 + c z^2}, on which
// the form divided by abc is unimodular; after LLL its zeros are small.
std::optional<IntVec> solve_ternary(const IntVec& coeffs) {
  constexpr long kScanHeight = 30;
  constexpr long kReducedHeight = 400;
  std::optional<IntVec> found;
  for (long h = 1; h <= kScanHeight && !found; ++h) {
    for_shell(h, h, h, [&](long u, long w) {
      mpz_class rhs = -(coeffs[0] * u * u + coeffs[1] * w * w);
      if (!mpz_divisible_p(rhs.get_mpz_t(), coeffs[2].get_mpz_t())) return false;
      mpz_class z2 = rhs / coeffs[2];
      if (z2 < 0 || !mpz_perfect_square_p(z2.get_mpz_t()) || isqrt_floor(z2) > h) return false;
      found = to_primitive({mpq_class(u), mpq_class(w), mpq_class(isqrt_floor(z2))});
      return true;
    });
  }
  if (found) return found;

  Int3 co{coeffs[0], coeffs[1], coeffs[2]};
  std::array<mpq_class, 3> scale{1, 1, 1};
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), co[i].get_mpz_t(), co[j].get_mpz_t());
      if (g == 1) continue;
      // g a' x^2 + g b' y^2 + c z^2 = 0 with z = (g/h) z'' and h = gcd(c, g).
      mpz_class h;
      mpz_gcd(h.get_mpz_t(), co[k].get_mpz_t(), g.get_mpz_t());
      co[i] /= g;
      co[j] /= g;
      co[k] = (co[k] / h) * (g / h);
      scale[k] *= mpq_class(g, h);
      scale[k].canonicalize();
      changed = true;
    }
  }
  if ((co[0] > 0 && co[1] > 0 && co[2] > 0) || (co[0] < 0 && co[1] < 0 && co[2] < 0)) return std::nullopt;

  const Int3 m{abs(co[0]), abs(co[1]), abs(co[2])};
  // r_i^2 = -x/y mod m_i comes from s^2 = -x y and r = s / y.
  auto root = [&](int i, const mpz_class& x, const mpz_class& y) -> std::optional<mpz_class> {
    if (m[i] == 1) return mpz_class(0);
    auto s = sqrt_mod_squarefree(-x * y, m[i]);
    if (!s) return std::nullopt;
    return mod_pos(*s * inverse_mod(y, m[i]), m[i]);
  };
  auto ra = root(0, co[2], co[1]);  // y = ra z mod a
  auto rb = root(1, co[0], co[2]);  // z = rb x mod b
  auto rc = root(2, co[1], co[0]);  // x = rc y mod c
  if (!ra || !rb || !rc) return std::nullopt;
  const mpz_class n = m[0] * m[1] * m[2];
  Int3 u{crt({1, 0, 0}, m), crt({0, 1, 0}, m), crt({0, 0, 1}, m)};
  Int3 w{crt({0, 1, *rc}, m), crt({*ra, 0, 1}, m), crt({1, *rb, 0}, m)};
  std::array<Int3, 3> basis = lattice_basis({u, w, {n, 0, 0}, {0, n, 0}, {0, 0, n}});
  std::vector<IntVec> reduced;
  for (const auto& v : basis) reduced.push_back(IntVec(v.begin(), v.end()));
  lll(reduced, diagonal_int(m), false);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) basis[i][k] = reduced[i][k];

  std::array<std::array<mpz_class, 3>, 3> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      mpz_class v = co[0] * basis[i][0] * basis[j][0] + co[1] * basis[i][1] * basis[j][1] +
                    co[2] * basis[i][2] * basis[j][2];
      if (!mpz_divisible_p(v.get_mpz_t(), n.get_mpz_t()))
        throw WittError(ErrorKind::PreconditionViolated, "ternary lattice is not integral");
      g[i][j] = v / n;
    }
  auto c = small_zero(g, kReducedHeight);
  if (!c) return std::nullopt;
  std::vector<mpq_class> x(3);
  for (int k = 0; k < 3; ++k) {
    mpz_class v = (*c)[0] * basis[0][k] + (*c)[1] * basis[1][k] + (*c)[2] * basis[2][k];
    x[k] = mpq_class(v) * scale[k];
  }
  return to_primitive(x);
}

IntVec embed_solution(std::size_t n, const std::vector<std::size_t>& idx, const IntVec& sol) {
  IntVec v(n, 0);
  for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = sol[i];
  return v;
}

IntVec pick(const IntVec& a, const std::vector<std::size_t>& idx) {
  IntVec out;
  for (auto i : idx) out.push_back(a[i]);
  return out;
}

// A square-free t such that <a0, a1, -t> and rest (+) <t> are both isotropic.
// The square class of t is fixed at infinity and at every prime dividing
// 2 a0 a1 rest, then realised as s l with l a prime in a suitable arithmetic
// progression. At l the ternary half is isotropic by reciprocity and the other
// half has at least three unit coefficients (or is ternary as well).
mpz_class split_value(const mpz_class& a0, const mpz_class& a1, const IntVec& rest, long budget) {
  std::set<mpz_class> primes{2};
  auto collect = [&](const mpz_class& e) {
    for (const auto& [p, k] : factorize(e)) primes.insert(p);
  };
  collect(a0);
  collect(a1);
  for (const auto& e : rest) collect(e);
  auto halves_ok = [&](const mpz_class& tau, const Place& v) {
    std::vector<mpq_class> f{mpq_class(a0), mpq_class(a1), mpq_class(-tau)};
    std::vector<mpq_class> g(rest.begin(), rest.end());
    g.push_back(mpq_class(tau));
    return is_locally_isotropic(f, v) && is_locally_isotropic(g, v);
  };

  mpz_class s = halves_ok(1, Place::real_place()) ? 1 : -1;
  if (!halves_ok(s, Place::real_place())) throw WittError(ErrorKind::NotIsotropic, "no real splitting value");
  struct LocalClass {
    mpz_class p;
    bool ramified;
    mpz_class unit;
  };
  std::vector<LocalClass> classes;
  for (const auto& p : primes) {
    std::vector<mpz_class> units{1};
    if (p == 2) {
      units = {1, 3, 5, 7};
    } else {
      mpz_class u = 2;
      while (legendre(u, p) != -1) ++u;
      units.push_back(u);
    }
    std::optional<LocalClass> pickc;
    for (bool ramified : {false, true}) {
      for (const auto& u : units) {
        mpz_class tau = s * u * (ramified ? p : mpz_class(1));
        if (halves_ok(tau, Place::finite(p))) {
          pickc = LocalClass{p, ramified, s * u};
          break;
        }
      }
      if (pickc) break;
    }
    if (!pickc) throw WittError(ErrorKind::NotIsotropic, "no local splitting value at " + p.get_str());
    classes.push_back(*pickc);
  }
  for (const auto& c : classes)
    if (c.ramified) s *= c.p;

  // Requirements on l: its unit square class at p must be unit(tau) / unit(s).
  mpz_class modulus = 1, residue = 0;
  bool one_works = true;
  for (const auto& c : classes) {
    const mpz_class s_unit = c.ramified ? mpz_class(s / c.p) : s;
    mpz_class target, pm;
    if (c.p == 2) {
      pm = 8;
      target = mod_pos(c.unit * s_unit, 8);  // units mod 8 are their own inverses
      one_works = one_works && target == 1;
    } else {
      pm = c.p;
      const bool square = legendre(c.unit * s_unit, c.p) == 1;
      one_works = one_works && square;
      if (square) {
        target = 1;
      } else {
        target = 2;
        while (legendre(target, c.p) != -1) ++target;
      }
    }
    mpz_class k = mod_pos((target - residue) * inverse_mod(modulus, pm), pm);
    residue += modulus * k;
    modulus *= pm;
  }
  if (one_works) return s;
  mpz_class l = residue;
  for (long tries = 0; tries < budget; ++tries, l += modulus) {
    if (l > 1 && is_probable_prime(l)) return s * l;
  }
  throw SearchBudgetExceeded(budget, "no prime found for the splitting value");
}

// Isotropic integer vector of an isotropic diagonal form with square-free
// integer entries.
IntVec find_rational_diagonal(const IntVec& a, long budget) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a[i] == -a[j]) return embed_solution(n, {i, j}, {1, 1});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        IntVec sub = pick(a, {i, j, k});
        if (!rational_isotropic(sub)) continue;
        if (auto sol = solve_ternary(sub)) return embed_solution(n, {i, j, k}, *sol);
        throw SearchBudgetExceeded(budget, "ternary zero beyond the reduced search height");
      }
  if (n <= 3) throw WittError(ErrorKind::NotIsotropic, "no isotropic vector exists");

  // q = <a_0, a_1> (+) rest: a_0 x^2 + a_1 y^2 = t z^2 and rest(w) = -t w_t^2.
  std::vector<std::size_t> rest_idx;
  for (std::size_t i = 2; i < n; ++i) rest_idx.push_back(i);
  IntVec rest = pick(a, rest_idx);
  if (rational_isotropic(rest)) return embed_solution(n, rest_idx, find_rational_diagonal(rest, budget));
  const mpz_class t = split_value(a[0], a[1], rest, budget);
  auto first = solve_ternary({a[0], a[1], -t});
  if (!first) throw SearchBudgetExceeded(budget, "ternary zero beyond the reduced search height");
  const IntVec& f = *first;
  if (f[2] == 0) return embed_solution(n, {0, 1}, {f[0], f[1]});
  IntVec extended = rest;
  extended.push_back(t);
  IntVec w = find_rational_diagonal(extended, budget);
  const mpz_class& wt = w.back();
  if (wt == 0) return embed_solution(n, rest_idx, IntVec(w.begin(), w.end() - 1));
  std::vector<mpq_class> v(n);
  v[0] = mpq_class(f[0] * wt);
  v[1] = mpq_class(f[1] * wt);
  for (std::size_t i = 0; i < rest.size(); ++i) v[2 + i] = mpq_class(f[2] * w[i]);
  return to_primitive(v);
}

Vector find_prime_field_diagonal(const DiagonalForm& d) {
  const FieldCtx& ctx = d.ctx;
  const std::size_t n = d.dim();
  const mpz_class& p = ctx.p();
  Vector v = zero_vector(ctx, n);
  if (n == 2) {
    // (1, y): a_0 + a_1 y^2 = 0
    for (mpz_class y = 0; y < p; ++y) {
      Scalar ys = ctx.from_integer(y);
      if ((d.entries[0] + d.entries[1] * ys * ys).is_zero()) {
        v[0] = ctx.one();
        v[1] = ys;
        return v;
      }
    }
  } else if (n >= 3) {
    // (1, y, z, 0...): the affine conic has p - (-a_1 a_2 / p) >= p - 1 points.
    for (mpz_class y = 0; y < p; ++y) {
      Scalar ys = ctx.from_integer(y);
      Scalar rhs = -(d.entries[0] + d.entries[1] * ys * ys) / d.entries[2];
      if (auto z = sqrt_mod(rhs.value().get_num(), p)) {
        v[0] = ctx.one();
        v[1] = ys;
        v[2] = ctx.from_integer(*z);
        return v;
      }
    }
  }
  throw WittError(ErrorKind::NotIsotropic, "no isotropic vector for " + d.str());
}

bool prime_field_isotropic(const DiagonalForm& d) {
  if (d.dim() >= 3) return true;
  if (d.dim() < 2) return false;
  if (d.ctx.p() > 100000) return legendre((-(d.entries[0] * d.entries[1])).value().get_num(), d.ctx.p()) == 1;
  try {
    find_prime_field_diagonal(d);
    return true;
  } catch (const WittError&) {
    return false;
  }
}

// Square-free normalisation over Q: entry a = sf * r^2 with r rational.
// Returns the scaling S (S_ii = 1/r) so that S^t diag(a) S = diag(sf).
Matrix squarefree_scaling(const DiagonalForm& d, IntVec& sf) {
  Matrix s = Matrix::identity(d.ctx, d.dim());
  sf.clear();
  for (std::size_t i = 0; i < d.dim(); ++i) {
    const mpq_class& a = d.entries[i].value();
    mpz_class k = squarefree_part(a);
    sf.push_back(k);
    mpq_class ratio = a / k;
    auto r = rational_sqrt(ratio);
    s(i, i) = d.ctx.from_rational(1 / *r);
  }
  return s;
}

Vector find_on_diagonal(const DiagonalForm& d, long budget) {
  if (d.ctx.is_prime_field()) return find_prime_field_diagonal(d);
  IntVec sf;
  Matrix s = squarefree_scaling(d, sf);
  IntVec w = find_rational_diagonal(sf, budget);
  Vector x;
  for (const auto& c : w) x.push_back(d.ctx.from_integer(c));
  return s.apply(x);
}

Vector int_vector(const FieldCtx& ctx, const IntVec& v) {
  Vector out;
  for (const auto& c : v) out.push_back(ctx.from_integer(c));
  return out;
}

Vector rational_vector(const FieldCtx& ctx, const std::vector<mpq_class>& v) {
  Vector out;
  for (const auto& c : v) out.push_back(ctx.from_rational(c));
  return out;
}

IntVec mat_vec(const IntMat& g, const IntVec& v) {
  IntVec out(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += g[i][j] * v[j];
  return out;
}

mpz_class int_dot(const IntVec& x, const IntVec& y) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

IntMat identity_int(std::size_t n) {
  IntMat g(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
  return g;
}

// b^t g b for the basis vectors b.
IntMat congruent(const IntMat& g, const std::vector<IntVec>& b) {
  IntMat out(b.size(), IntVec(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    IntVec gb = mat_vec(g, b[i]);
    for (std::size_t j = 0; j < b.size(); ++j) out[j][i] = int_dot(b[j], gb);
  }
  return out;
}

GramMatrix gram_of(const FieldCtx& ctx, const IntMat& g) {
  std::vector<Vector> rows;
  for (const auto& r : g) rows.push_back(int_vector(ctx, r));
  return GramMatrix(Matrix(ctx, rows));
}

// A rational form with its basis rescaled by the common denominator c (so the
// Gram matrix c^2 q is integral) and then LLL-reduced for |q|.
struct ReducedForm {
  Matrix basis;                     // columns in the input coordinates
  IntMat gram;                      // Gram matrix of those columns
  std::optional<IntVec> isotropic;  // found during reduction, input coordinates
};

ReducedForm reduce_rational(const GramMatrix& q) {
  const FieldCtx& ctx = q.ctx();
  const std::size_t n = q.dim();
  mpz_class c = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const mpz_class& d = q(i, j).value().get_den();
      mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    }
  IntMat g(n, IntVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class x = q(i, j).value() * c * c;
      g[i][j] = x.get_num();
    }
  std::vector<IntVec> b = identity_int(n);
  ReducedForm out;
  if (auto z = lll(b, g, true)) {
    out.basis = ctx.from_integer(c) * Matrix::identity(ctx, n);
    out.gram = g;
    out.isotropic = to_primitive(*z);
    return out;
  }
  std::vector<Vector> cols;
  for (const auto& v : b) cols.push_back(int_vector(ctx, v));
  out.basis = ctx.from_integer(c) * Matrix::from_columns(ctx, n, cols);
  out.gram = congruent(g, b);
  return out;
}

// Canonical square-class scaling over F_p: entries become 1 or the least nonresidue.
Matrix prime_field_scaling(DiagonalForm& d) {
  Matrix s = Matrix::identity(d.ctx, d.dim());
  for (std::size_t i = 0; i < d.dim(); ++i) {
    Scalar rep = square_class(d.ctx, d.entries[i]).representative;
    Scalar ratio = d.entries[i] / rep;
    auto r = sqrt_mod(ratio.value().get_num(), d.ctx.p());
    s(i, i) = d.ctx.from_integer(*r).inverse();
    d.entries[i] = rep;
  }
  return s;
}

}  // namespace

bool is_locally_isotropic(const std::vector<mpq_class>& a, const Place& v) {
  const std::size_t n = a.size();
  if (v.real) return n >= 2 && has_both_signs(a);
  if (n < 2) return false;
  mpq_class d = 1;
  for (const auto& x : a) d *= x;
  if (n == 2) return is_local_square(-d, v);
  if (n >= 5) return true;
  int eps = hasse_invariant(a, v);
  if (n == 3) return hilbert_symbol(-1, -d, v) == eps;
  // n == 4
  if (!is_local_square(d, v)) return true;
  return eps == hilbert_symbol(-1, -1, v);
}

bool is_isotropic(const GramMatrix& q) {
  DiagonalForm d = nondegenerate_diagonal(q);
  switch (q.ctx().kind()) {
    case FieldKind::PrimeField:
      return prime_field_isotropic(d);
    case FieldKind::RealQ: {
      auto [pos, neg] = sign_counts(d);
      return pos > 0 && neg > 0;
    }
    case FieldKind::Rationals: {
      ReducedForm r = reduce_rational(q);
      if (r.isotropic) return true;
      return rational_isotropic(rational_entries(diagonalize(gram_of(q.ctx(), r.gram)).form));
    }
  }
  return false;
}

Vector find_isotropic_vector(const GramMatrix& q, long budget) {
  if (q.ctx().is_real()) {
    throw WittError(ErrorKind::UnsupportedFieldForVectorSearch, "isotropic vectors over R need not be rational");
  }
  Matrix m;
  DiagonalForm d = nondegenerate_diagonal(q, &m);
  if (q.ctx().is_rationals()) {
    ReducedForm r = reduce_rational(q);
    if (r.isotropic) return int_vector(q.ctx(), *r.isotropic);
    Diagonalization dr = diagonalize(gram_of(q.ctx(), r.gram));
    IntVec sf;
    Matrix s = squarefree_scaling(dr.form, sf);
    if (!rational_isotropic(sf)) throw WittError(ErrorKind::NotIsotropic, d.str() + " is anisotropic");
    return (r.basis * dr.witness.M * s).apply(int_vector(q.ctx(), find_rational_diagonal(sf, budget)));
  }
  if (!is_isotropic(d.gram())) throw WittError(ErrorKind::NotIsotropic, d.str() + " is anisotropic");
  return m.apply(find_on_diagonal(d, budget));
}

HyperbolicSplit split_hyperbolic(const GramMatrix& q, const Vector& v) {
  const FieldCtx& ctx = q.ctx();
  const std::size_t n = q.dim();
  if (v.size() != n) throw WittError(ErrorKind::DimensionMismatch, "vector length");
  if (!q.is_nondegenerate()) throw WittError(ErrorKind::DegenerateForm, "split needs a non-degenerate form");
  if (is_zero_vector(v) || !evaluate(q, v).is_zero()) {
    throw WittError(ErrorKind::NotIsotropicVector, vector_str(v) + " is not a nonzero isotropic vector");
  }
  std::vector<std::string> trace;
  Vector bv = q.matrix().apply(v);
  std::size_t j = 0;
  while (bv[j].is_zero()) ++j;
  // w with B(v, w) = 1, then w' = w - (q(w)/2) v is isotropic as well.
  Vector w = bv[j].inverse() * unit_vector(ctx, n, j);
  Scalar half = ctx.from_int(2).inverse();
  Vector wp = w - (evaluate(q, w) * half) * v;
  Vector u1 = v + half * wp;
  Vector u2 = v - half * wp;
  trace.push_back("hyperbolic pair v = " + vector_str(v) + ", w' = " + vector_str(wp));
  trace.push_back("u1 = v + w'/2 (q = 1), u2 = v - w'/2 (q = -1)");

  std::vector<Vector> basis{u1, u2};
  Scalar q1 = evaluate(q, u1), q2 = evaluate(q, u2);
  for (std::size_t k = 0; k < n && basis.size() < n; ++k) {
    Vector e = unit_vector(ctx, n, k);
    Vector c = e - (bilinear(q, e, u1) / q1) * u1 - (bilinear(q, e, u2) / q2) * u2;
    std::vector<Vector> trial = basis;
    trial.push_back(c);
    if (Matrix::from_columns(ctx, n, trial).rank() == trial.size()) basis = std::move(trial);
  }
  Matrix P = Matrix::from_columns(ctx, n, basis);
  GramMatrix source = apply_congruence(q, P);
  GramMatrix complement(source.matrix().block(2, 2, n - 2, n - 2));
  trace.push_back("complement = " + complement.str());
  return {complement, {P, source, q, std::move(trace)}};
}

GramMatrix hyperbolic_sum(const FieldCtx& ctx, std::size_t k, const DiagonalForm& rest, std::size_t null_dim) {
  Vector e;
  for (std::size_t i = 0; i < k; ++i) {
    e.push_back(ctx.one());
    e.push_back(ctx.from_int(-1));
  }
  e.insert(e.end(), rest.entries.begin(), rest.entries.end());
  e.resize(e.size() + null_dim, ctx.zero());
  return DiagonalForm(ctx, e).gram();
}

WittDecomposition witt_decompose(const GramMatrix& q, long budget) {
  const FieldCtx& ctx = q.ctx();
  const std::size_t n = q.dim();
  WittDecomposition out;
  RadicalSplit rs = radical_split(q);
  out.null_dim = rs.null_dim;
  const std::size_t r = n - rs.null_dim;
  std::vector<std::string> trace = rs.witness.trace;
  if (rs.null_dim) trace.push_back("radical of dimension " + std::to_string(rs.null_dim) + " split off");
  Matrix W = rs.witness.M;
  DiagonalForm cur(ctx, Vector{});
  if (!ctx.is_rationals()) {
    Diagonalization d0 = diagonalize(rs.nondegenerate);
    W = W * embed(d0.witness.M, n, 0);
    cur = d0.form;
  }

  if (ctx.is_real()) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < r; ++i) (cur.entries[i].sign() > 0 ? pos : neg).push_back(i);
    const std::size_t k = std::min(pos.size(), neg.size());
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < k; ++i) {
      order.push_back(pos[i]);
      order.push_back(neg[i]);
    }
    for (std::size_t i = k; i < pos.size(); ++i) order.push_back(pos[i]);
    for (std::size_t i = k; i < neg.size(); ++i) order.push_back(neg[i]);
    Matrix perm(ctx, r, r);
    Vector permuted;
    for (std::size_t c = 0; c < r; ++c) {
      perm(order[c], c) = ctx.one();
      permuted.push_back(cur.entries[order[c]]);
    }
    W = W * embed(perm, n, 0);
    out.witt_index = k;
    Vector aniso(pos.size() - k, ctx.one());
    aniso.resize(aniso.size() + neg.size() - k, ctx.from_int(-1));
    out.anisotropic_part = DiagonalForm(ctx, aniso);
    out.square_class_level = true;
    trace.push_back("paired " + std::to_string(k) + " positive/negative entries; +-1 normalisation by positive square scalings");
    permuted.resize(n, ctx.zero());
    out.witness = {W, DiagonalForm(ctx, permuted).gram(), q, std::move(trace)};
    return out;
  }

  std::size_t offset = 0;
  try {
    if (ctx.is_rationals()) {
      // Each round reduces the current block, finds an isotropic vector v,
      // pairs it with an integral w with B(v, w) = gcd(Gv), and continues on
      // the integral orthogonal complement of span(v, w) so entries stay small.
      GramMatrix block = rs.nondegenerate;
      while (block.dim() > 0) {
        const std::size_t m = block.dim();
        ReducedForm red = reduce_rational(block);
        W = W * embed(red.basis, n, offset);
        const IntMat& g = red.gram;
        std::optional<IntVec> iso = red.isotropic;
        if (!iso) {
          Diagonalization dg = diagonalize(gram_of(ctx, g));
          IntVec sf;
          Matrix sc = squarefree_scaling(dg.form, sf);
          if (m < 2 || !rational_isotropic(sf)) {
            W = W * embed(dg.witness.M * sc, n, offset);
            cur = DiagonalForm(ctx, int_vector(ctx, sf));
            break;
          }
          Vector x = (dg.witness.M * sc).apply(int_vector(ctx, find_rational_diagonal(sf, budget)));
          std::vector<mpq_class> xq;
          for (const auto& c : x) xq.push_back(c.value());
          iso = to_primitive(xq);
        }
        const IntVec& v = *iso;
        IntVec gv = mat_vec(g, v);
        mpz_class beta = 0;
        IntVec w(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
          if (gv[i] == 0) continue;
          mpz_class gn, a, b;
          mpz_gcdext(gn.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), beta.get_mpz_t(), gv[i].get_mpz_t());
          for (auto& c : w) c *= a;
          w[i] += b;
          beta = gn;
        }
        IntVec gw = mat_vec(g, w);
        std::vector<IntVec> kernel = integer_kernel({gv, gw}, m);
        lll(kernel, identity_int(m), false);
        // w'' = (w - q(w)/(2 beta) v) / beta is isotropic with B(v, w'') = 1.
        const mpq_class qw(int_dot(w, gw));
        std::vector<mpq_class> u1(m), u2(m);
        for (std::size_t i = 0; i < m; ++i) {
          mpq_class wpp = (mpq_class(w[i]) - qw / (2 * beta) * v[i]) / beta;
          u1[i] = v[i] + wpp / 2;
          u2[i] = v[i] - wpp / 2;
        }
        std::vector<Vector> cols{rational_vector(ctx, u1), rational_vector(ctx, u2)};
        for (const auto& k : kernel) cols.push_back(int_vector(ctx, k));
        W = W * embed(Matrix::from_columns(ctx, m, cols), n, offset);
        trace.push_back("split hyperbolic plane " + std::to_string(out.witt_index + 1) + " via isotropic vector " +
                        vector_str(int_vector(ctx, v)));
        offset += 2;
        ++out.witt_index;
        block = gram_of(ctx, congruent(g, kernel));
      }
    } else {
      while (true) {
        Matrix s = prime_field_scaling(cur);
        W = W * embed(s, n, offset);
        if (cur.dim() < 2 || !is_isotropic(cur.gram())) break;
        Vector v = find_on_diagonal(cur, budget);
        HyperbolicSplit hs = split_hyperbolic(cur.gram(), v);
        W = W * embed(hs.witness.M, n, offset);
        trace.push_back("split hyperbolic plane " + std::to_string(out.witt_index + 1) + " via isotropic vector " +
                        vector_str(v));
        offset += 2;
        ++out.witt_index;
        Diagonalization dc = diagonalize(hs.complement);
        W = W * embed(dc.witness.M, n, offset);
        cur = dc.form;
      }
    }
  } catch (const SearchBudgetExceeded& e) {
    throw SearchBudgetExceeded(e.bound(), std::string(e.what()) + " (after " + std::to_string(out.witt_index) +
                                              " hyperbolic plane(s) split off)");
  }

  if (ctx.is_rationals()) {
    // Sort by (sign, |a|).
    std::vector<std::size_t> order(cur.dim());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      const mpq_class& a = cur.entries[x].value();
      const mpq_class& b = cur.entries[y].value();
      if (sgn(a) != sgn(b)) return sgn(a) < sgn(b);
      return abs(a) < abs(b);
    });
    Matrix perm(ctx, cur.dim(), cur.dim());
    Vector sorted;
    for (std::size_t c = 0; c < cur.dim(); ++c) {
      perm(order[c], c) = ctx.one();
      sorted.push_back(cur.entries[order[c]]);
    }
    W = W * embed(perm, n, offset);
    cur = DiagonalForm(ctx, sorted);
  }
  out.anisotropic_part = cur;
  trace.push_back("anisotropic part " + cur.str());
  out.witness = {W, hyperbolic_sum(ctx, out.witt_index, cur, out.null_dim), q, std::move(trace)};
  return out;
}

bool verify_decomposition(const GramMatrix& q, const WittDecomposition& d) {
  if (!(d.witness.target == q) || !d.witness.verify()) return false;
  const std::size_t n = q.dim();
  if (n != 2 * d.witt_index + d.anisotropic_part.dim() + d.null_dim) return false;
  if (!d.square_class_level) {
    return d.witness.source == hyperbolic_sum(q.ctx(), d.witt_index, d.anisotropic_part, d.null_dim);
  }
  const GramMatrix& s = d.witness.source;
  if (!s.is_diagonal()) return false;
  GramMatrix pattern = hyperbolic_sum(q.ctx(), d.witt_index, d.anisotropic_part, d.null_dim);
  for (std::size_t i = 0; i < n; ++i)
    if (s(i, i).sign() != pattern(i, i).sign()) return false;
  return true;
}

}  // namespace witt
