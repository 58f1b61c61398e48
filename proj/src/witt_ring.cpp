#include "witt/witt_ring.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>

#include "witt/error.hpp"

namespace witt {

namespace {

DiagonalForm nondegenerate_diagonal(const GramMatrix& q) {
  Diagonalization d = diagonalize(q);
  Vector e;
  for (const auto& a : d.form.entries)
    if (!a.is_zero()) e.push_back(a);
  return DiagonalForm(q.ctx(), e);
}

Scalar product(const FieldCtx& ctx, const Vector& v) {
  Scalar p = ctx.one();
  for (const auto& a : v) p *= a;
  return p;
}

Scalar minus_one_power(const FieldCtx& ctx, std::size_t k) {
  return (k % 2) ? ctx.from_int(-1) : ctx.one();
}

// Anisotropic F_p class with the given dimension (0, 1 or 2) and determinant.
DiagonalForm canonical_prime_field(const FieldCtx& ctx, std::size_t dim, const Scalar& det) {
  if (dim == 0) return DiagonalForm(ctx, {});
  Scalar c = square_class(ctx, det).representative;
  if (dim == 1) return DiagonalForm(ctx, {c});
  return DiagonalForm(ctx, {ctx.one(), c});
}

DiagonalForm canonical_real(const FieldCtx& ctx, long sig) {
  Vector e(static_cast<std::size_t>(std::labs(sig)), sig > 0 ? ctx.one() : ctx.from_int(-1));
  return DiagonalForm(ctx, e);
}

long signature_of(const DiagonalForm& q) {
  auto [pos, neg] = sign_counts(q);
  return static_cast<long>(pos) - static_cast<long>(neg);
}

std::vector<mpq_class> values(const Vector& v) {
  std::vector<mpq_class> out;
  for (const auto& a : v) out.push_back(a.value());
  return out;
}

// Hyperbolicity of a non-degenerate rational diagonal form, decided by the
// complete invariants: dimension, signature, discriminant, Hasse symbols.
bool rational_hyperbolic(const std::vector<mpq_class>& h) {
  const std::size_t m = h.size();
  if (m % 2) return false;
  long sig = 0;
  mpq_class det = 1;
  for (const auto& a : h) {
    sig += sgn(a) > 0 ? 1 : -1;
    det *= a;
  }
  if (sig != 0) return false;
  if ((m / 2) % 2) det = -det;
  if (squarefree_part(det) != 1) return false;
  std::vector<mpq_class> hyp;
  for (std::size_t i = 0; i < m / 2; ++i) {
    hyp.push_back(1);
    hyp.push_back(-1);
  }
  for (const auto& v : relevant_places(h))
    if (hasse_invariant(h, v) != hasse_invariant(hyp, v)) return false;
  return true;
}

std::size_t log2_exact(std::size_t ratio) {
  std::size_t k = 0;
  while (ratio > 1) {
    if (ratio % 2) throw WittError(ErrorKind::PreconditionViolated, "quotient order is not a power of two");
    ratio /= 2;
    ++k;
  }
  return k;
}

std::vector<Vector> words(const std::vector<SquareClass>& alphabet, std::size_t n) {
  std::vector<Vector> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vector> next;
    for (const auto& w : out)
      for (const auto& c : alphabet) {
        Vector x = w;
        x.push_back(c.representative);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

bool operator==(const WittClass& x, const WittClass& y) {
  if (!(x.ctx == y.ctx)) return false;
  if (x.ctx.is_rationals()) return is_similar(x.representative.gram(), y.representative.gram());
  return x.representative == y.representative;
}

WittClass witt_class(const GramMatrix& q, long budget) {
  const FieldCtx& ctx = q.ctx();
  WittDecomposition d = witt_decompose(q, budget);
  const DiagonalForm& a = d.anisotropic_part;
  if (ctx.is_prime_field()) return {ctx, canonical_prime_field(ctx, a.dim(), product(ctx, a.entries))};
  return {ctx, a};
}

WittClass witt_class(const DiagonalForm& q, long budget) { return witt_class(q.gram(), budget); }

WittClass class_of_diagonal(const DiagonalForm& q) {
  const FieldCtx& ctx = q.ctx;
  if (ctx.is_rationals()) return witt_class(q);
  Vector e;
  for (const auto& a : q.entries)
    if (!a.is_zero()) e.push_back(a);
  if (ctx.is_real()) return {ctx, canonical_real(ctx, signature_of(DiagonalForm(ctx, e)))};
  // H^k has determinant (-1)^k; the anisotropic part has dimension n mod 2
  // when n is odd, and 0 or 2 according to the discriminant when n is even.
  const std::size_t n = e.size();
  const Scalar det = product(ctx, e);
  if (n % 2) return {ctx, canonical_prime_field(ctx, 1, minus_one_power(ctx, (n - 1) / 2) * det)};
  Scalar disc = minus_one_power(ctx, n / 2) * det;
  if (is_square(ctx, disc)) return {ctx, canonical_prime_field(ctx, 0, ctx.one())};
  return {ctx, canonical_prime_field(ctx, 2, -disc)};
}

WittClass zero_class(const FieldCtx& ctx) { return {ctx, DiagonalForm(ctx, {})}; }
WittClass one_class(const FieldCtx& ctx) { return {ctx, DiagonalForm(ctx, {ctx.one()})}; }

WittClass wadd(const WittClass& x, const WittClass& y) {
  require_same_field(x.ctx, y.ctx);
  return class_of_diagonal(direct_sum(x.representative, y.representative));
}

WittClass wneg(const WittClass& x) { return class_of_diagonal(negate(x.representative)); }

WittClass wmul(const WittClass& x, const WittClass& y) {
  require_same_field(x.ctx, y.ctx);
  return class_of_diagonal(tensor_product(x.representative, y.representative));
}

bool is_similar(const GramMatrix& q1, const GramMatrix& q2) {
  require_same_field(q1.ctx(), q2.ctx());
  const FieldCtx& ctx = q1.ctx();
  DiagonalForm d1 = nondegenerate_diagonal(q1);
  DiagonalForm d2 = nondegenerate_diagonal(q2);
  if (ctx.is_real()) return signature_of(d1) == signature_of(d2);
  if (ctx.is_prime_field()) return class_of_diagonal(d1).representative == class_of_diagonal(d2).representative;
  return rational_hyperbolic(values(direct_sum(d1, negate(d2)).entries));
}

long signature(const GramMatrix& q) {
  if (q.ctx().is_prime_field()) throw WittError(ErrorKind::UnsupportedField, "signature over " + q.ctx().tag());
  return signature_of(nondegenerate_diagonal(q));
}

std::optional<std::size_t> WittRingTable::index_of(const WittClass& x) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == x) return i;
  return std::nullopt;
}

std::size_t WittRingTable::additive_order(std::size_t i) const {
  const std::size_t zero = *index_of(zero_class(ctx));
  long cur = static_cast<long>(i);
  for (std::size_t k = 1; k <= elements.size(); ++k) {
    if (cur == static_cast<long>(zero)) return k;
    cur = add[static_cast<std::size_t>(cur)][i];
    if (cur < 0) return 0;
  }
  return 0;
}

std::shared_ptr<const WittRingTable> enumerate_witt_ring(const FieldCtx& ctx, std::optional<std::size_t> truncation) {
  if (ctx.is_rationals()) throw WittError(ErrorKind::InfiniteRing, "W(Q) is infinite");
  if (ctx.is_real() && !truncation) throw WittError(ErrorKind::InfiniteRing, "W(R) needs a dimension truncation");
  if (ctx.is_prime_field()) truncation.reset();

  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const WittRingTable>> cache;
  const std::string key = ctx.tag() + "/" + (truncation ? std::to_string(*truncation) : "");
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto table = std::make_shared<WittRingTable>();
  table->ctx = ctx;
  table->truncation = truncation;
  if (ctx.is_prime_field()) {
    // Every class has an anisotropic representative of dimension <= 2 with
    // entries drawn from the square-class representatives.
    auto classes = square_class_group(ctx);
    for (std::size_t n = 0; n <= 2; ++n)
      for (const auto& w : words(classes, n)) {
        WittClass x = witt_class(DiagonalForm(ctx, w));
        if (!table->index_of(x)) table->elements.push_back(x);
      }
    std::sort(table->elements.begin(), table->elements.end(), [](const WittClass& a, const WittClass& b) {
      if (a.dim() != b.dim()) return a.dim() < b.dim();
      return a.representative.entries < b.representative.entries;
    });
  } else {
    table->elements.push_back(zero_class(ctx));
    for (long d = 1; d <= static_cast<long>(*truncation); ++d) {
      table->elements.push_back({ctx, canonical_real(ctx, d)});
      table->elements.push_back({ctx, canonical_real(ctx, -d)});
    }
  }
  const std::size_t m = table->elements.size();
  table->add.assign(m, std::vector<long>(m, -1));
  table->mul.assign(m, std::vector<long>(m, -1));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (auto s = table->index_of(wadd(table->elements[i], table->elements[j]))) table->add[i][j] = static_cast<long>(*s);
      if (auto t = table->index_of(wmul(table->elements[i], table->elements[j]))) table->mul[i][j] = static_cast<long>(*t);
    }
  cache[key] = table;
  return table;
}

PfisterForm pfister(const FieldCtx& ctx, const Vector& slots) {
  DiagonalForm form(ctx, {ctx.one()});
  for (const auto& a : slots) {
    if (!ctx.contains(a)) throw WittError(ErrorKind::FieldMismatch, "Pfister slot " + a.str() + " not in " + ctx.tag());
    if (a.is_zero()) throw WittError(ErrorKind::ZeroScalar, "Pfister slot is zero");
    form = tensor_product(form, DiagonalForm(ctx, {ctx.one(), a}));
  }
  return {slots, form};
}

IdealFiltration ideal_filtration(const FieldCtx& ctx, std::size_t n_max) {
  if (ctx.is_rationals()) throw WittError(ErrorKind::InfiniteRing, "ideal filtration of W(Q)");
  IdealFiltration out;
  out.ctx = ctx;
  const auto alphabet = square_class_group(ctx);
  std::vector<IdealLevel> levels;

  if (ctx.is_prime_field()) {
    out.ring = enumerate_witt_ring(ctx);
    const WittRingTable& ring = *out.ring;
    const std::size_t zero = *ring.index_of(zero_class(ctx));
    for (std::size_t n = 0; n <= n_max + 1; ++n) {
      IdealLevel level;
      level.n = n;
      if (n == 0) {
        // I^0 = W, which <1> alone need not generate additively.
        for (std::size_t i = 0; i < ring.size(); ++i) level.elements.push_back(i);
        levels.push_back(level);
        continue;
      }
      if (levels.back().elements.size() == 1) {
        // I^(n) = I * I^(n-1) vanishes once I^(n-1) does.
        level.elements = {zero};
        levels.push_back(level);
        continue;
      }
      std::set<std::size_t> closure{zero};
      std::vector<std::size_t> gens;
      for (const auto& w : words(alphabet, n)) gens.push_back(*ring.index_of(class_of_diagonal(pfister(ctx, w).expanded)));
      bool grew = true;
      while (grew) {
        grew = false;
        for (std::size_t x : std::vector<std::size_t>(closure.begin(), closure.end()))
          for (std::size_t g : gens)
            if (closure.insert(static_cast<std::size_t>(ring.add[x][g])).second) grew = true;
      }
      level.elements.assign(closure.begin(), closure.end());
      levels.push_back(level);
    }
    for (std::size_t n = 0; n <= n_max; ++n)
      levels[n].quotient_dim = log2_exact(levels[n].elements.size() / levels[n + 1].elements.size());
  } else {
    for (std::size_t n = 0; n <= n_max + 1; ++n) {
      IdealLevel level;
      level.n = n;
      mpz_class step = 0;
      for (const auto& w : words(alphabet, n)) {
        mpz_class s = std::labs(signature_of(pfister(ctx, w).expanded));
        mpz_gcd(step.get_mpz_t(), step.get_mpz_t(), s.get_mpz_t());
      }
      level.signature_step = step;
      levels.push_back(level);
    }
    for (std::size_t n = 0; n <= n_max; ++n) {
      mpz_class ratio = levels[n + 1].signature_step / levels[n].signature_step;
      levels[n].quotient_dim = log2_exact(ratio.get_ui());
    }
  }
  levels.pop_back();
  out.levels = std::move(levels);
  return out;
}

bool in_ideal_power(const WittClass& x, std::size_t n) {
  if (n == 0) return true;
  if (x.dim() % 2) return false;
  if (n == 1) return true;
  if (!signed_discriminant(x.representative).is_trivial()) return false;
  if (n == 2) return true;
  const FieldCtx& ctx = x.ctx;
  if (ctx.is_prime_field()) {
    IdealFiltration f = ideal_filtration(ctx, n);
    const auto& els = f.levels[n].elements;
    return std::find(els.begin(), els.end(), *f.ring->index_of(x)) != els.end();
  }
  long sig = signature_of(x.representative);
  if (sig % (1L << std::min<std::size_t>(n, 62))) return false;
  if (ctx.is_real()) return true;
  // Over Q, I^3 is the kernel of the Clifford invariant on I^2 and the
  // signature identifies I^n with 2^n Z from n = 3 on.
  return clifford_profile(x.representative).negative_places().empty();
}

int HasseProfile::at(const Place& v) const {
  auto it = symbols.find(v);
  return it == symbols.end() ? 1 : it->second;
}

std::set<Place> HasseProfile::negative_places() const {
  std::set<Place> out;
  for (const auto& [v, s] : symbols)
    if (s < 0) out.insert(v);
  return out;
}

std::string HasseProfile::str() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [v, sym] : symbols) {
    if (!first) s += ", ";
    first = false;
    s += v.str() + ":" + (sym < 0 ? "-1" : "+1");
  }
  return s + "}";
}

HasseProfile hasse_profile(const DiagonalForm& q) {
  for (const auto& a : q.entries)
    if (a.is_zero()) throw WittError(ErrorKind::DegenerateForm, "Hasse profile of a degenerate form");
  HasseProfile out;
  // Hilbert symbols over a finite field are all trivial.
  if (q.ctx.is_prime_field()) return out;
  const auto e = values(q.entries);
  const auto places = q.ctx.is_real() ? std::vector<Place>{Place::real_place()} : relevant_places(e);
  for (const auto& v : places) out.symbols[v] = hasse_invariant(e, v);
  return out;
}

HasseProfile clifford_profile(const DiagonalForm& q) {
  HasseProfile out = hasse_profile(q);
  const std::size_t n = q.dim();
  if (n == 0) return out;
  mpq_class d = 1;
  for (const auto& a : q.entries) d *= a.value();
  auto correct = [&](const mpq_class& a, const mpq_class& b) {
    for (auto& [v, s] : out.symbols) s *= hilbert_symbol(a, b, v);
  };
  switch (n % 8) {
    case 3:
    case 4:
      correct(-1, -d);
      break;
    case 5:
    case 6:
      correct(-1, -1);
      break;
    case 7:
    case 0:
      correct(-1, d);
      break;
    default:
      break;
  }
  return out;
}

int e0(const WittClass& x) { return static_cast<int>(x.dim() % 2); }

SquareClass e1(const WittClass& x) {
  if (!in_ideal_power(x, 1)) throw WittError(ErrorKind::NotInIdealPower, x.str() + " has odd dimension");
  if (x.dim() == 0) return square_class(x.ctx, x.ctx.one());
  return signed_discriminant(x.representative);
}

HasseProfile e2(const WittClass& x) {
  if (!in_ideal_power(x, 2)) throw WittError(ErrorKind::NotInIdealPower, x.str() + " is not in I^2");
  return clifford_profile(x.representative);
}

}  // namespace witt
