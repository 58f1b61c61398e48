#include "witt/milnor.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "witt/error.hpp"

namespace witt {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Basis of the square-class group viewed as an F_2-space, and coordinates.
struct ClassBasis {
  FieldCtx ctx;
  std::vector<SquareClass> group;
  std::vector<SquareClass> basis;

  explicit ClassBasis(const FieldCtx& c) : ctx(c), group(square_class_group(c)) {
    for (const auto& g : group)
      if (!g.is_trivial()) basis.push_back(g);
    if (group.size() != 2) throw WittError(ErrorKind::UnsupportedField, "square-class group of order other than 2");
  }

  std::size_t dim() const { return basis.size(); }

  F2Vec coords(const Scalar& a) const {
    SquareClass c = square_class(ctx, a);
    return {static_cast<std::uint8_t>(c.is_trivial() ? 0 : 1)};
  }
};

F2Vec kron(const F2Vec& x, const F2Vec& y) {
  F2Vec out;
  out.reserve(x.size() * y.size());
  for (auto a : x)
    for (auto b : y) out.push_back(static_cast<std::uint8_t>(a & b));
  return out;
}

F2Vec unit(std::size_t dim, std::size_t i) {
  F2Vec v(dim, 0);
  v[i] = 1;
  return v;
}

F2Vec add(const F2Vec& x, const F2Vec& y) {
  F2Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<std::uint8_t>(x[i] ^ y[i]);
  return out;
}

// All words of length n over `alphabet`, little-endian in position 0.
std::vector<Vector> all_words(const std::vector<Scalar>& alphabet, std::size_t n) {
  std::vector<Vector> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vector> next;
    for (const auto& w : out)
      for (const auto& c : alphabet) {
        Vector x = w;
        x.push_back(c);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

std::string word_name(const FieldCtx& ctx, const Vector& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "(x)";
    s += "{" + square_class(ctx, w[i]).representative.str() + "}";
  }
  return s;
}

std::shared_ptr<const IdealFiltration> cached_filtration(const FieldCtx& ctx, std::size_t n) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const IdealFiltration>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[ctx.tag()];
  if (!slot || slot->levels.size() <= n + 1)
    slot = std::make_shared<const IdealFiltration>(ideal_filtration(ctx, std::max<std::size_t>(n + 1, 8)));
  return slot;
}

// Quotient I^n / I^(n+1) of the finite ring W(F_p): coordinates of each
// element of I^n in a greedily chosen basis of cosets.
std::map<std::size_t, F2Vec> prime_field_quotient(const FieldCtx& ctx, std::size_t n) {
  auto f = cached_filtration(ctx, n);
  const WittRingTable& ring = *f->ring;
  const auto& top = f->levels[n].elements;
  const auto& sub = f->levels[n + 1].elements;
  auto coset = [&](std::size_t x) {
    std::vector<std::size_t> c;
    for (std::size_t y : sub) c.push_back(static_cast<std::size_t>(ring.add[x][y]));
    std::sort(c.begin(), c.end());
    return c;
  };
  std::vector<std::size_t> basis;
  std::map<std::vector<std::size_t>, std::size_t> span;  // coset -> mask
  span[coset(f->levels[n + 1].elements.front())] = 0;
  for (std::size_t x : top) {
    if (span.count(coset(x))) continue;
    basis.push_back(x);
    std::map<std::vector<std::size_t>, std::size_t> grown;
    const std::size_t bit = std::size_t{1} << (basis.size() - 1);
    for (const auto& [c, mask] : span) {
      grown[c] = mask;
      grown[coset(static_cast<std::size_t>(ring.add[c.front()][x]))] = mask | bit;
    }
    span = std::move(grown);
  }
  std::map<std::size_t, F2Vec> out;
  for (std::size_t x : top) {
    std::size_t mask = span.at(coset(x));
    F2Vec v(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) v[i] = static_cast<std::uint8_t>((mask >> i) & 1);
    out[x] = v;
  }
  return out;
}

}  // namespace

std::size_t f2_rank(std::vector<F2Vec> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][c]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][c]) rows[r] = add(rows[r], rows[rank]);
    ++rank;
  }
  return rank;
}

std::vector<SteinbergPair> steinberg_pairs(const FieldCtx& ctx) {
  std::vector<SteinbergPair> out;
  if (ctx.is_real()) {
    // (-,-) cannot occur: a, b < 0 forces a + b < 0.
    out.push_back({ctx.from_rational(mpq_class(1, 2)), ctx.from_rational(mpq_class(1, 2))});
    out.push_back({ctx.from_int(2), ctx.from_int(-1)});
    out.push_back({ctx.from_int(-1), ctx.from_int(2)});
    return out;
  }
  if (!ctx.is_prime_field()) throw WittError(ErrorKind::InfiniteSquareClassGroup, "Steinberg pairs over " + ctx.tag());
  std::set<std::pair<SquareClass, SquareClass>> seen;
  for (mpz_class a = 2; a < ctx.p() && seen.size() < 4; ++a) {
    Scalar sa = ctx.from_integer(a);
    Scalar sb = ctx.one() - sa;
    if (seen.insert({square_class(ctx, sa), square_class(ctx, sb)}).second) out.push_back({sa, sb});
  }
  return out;
}

F2Space milnor_k_mod2(const FieldCtx& ctx, std::size_t n) {
  ClassBasis cb(ctx);
  const std::size_t d = cb.dim();
  F2Space out;
  out.ambient_dim = ipow(d, n);
  std::vector<Scalar> alphabet;
  for (const auto& b : cb.basis) alphabet.push_back(b.representative);
  for (const auto& w : all_words(alphabet, n)) out.basis.push_back(word_name(ctx, w));
  if (n >= 2) {
    for (const auto& [a, b] : steinberg_pairs(ctx)) {
      F2Vec core = kron(cb.coords(a), cb.coords(b));
      for (std::size_t j = 0; j + 2 <= n; ++j) {
        const std::size_t left = ipow(d, j), right = ipow(d, n - 2 - j);
        for (std::size_t x = 0; x < left; ++x)
          for (std::size_t y = 0; y < right; ++y) out.relations.push_back(kron(kron(unit(left, x), core), unit(right, y)));
      }
    }
  }
  out.relation_rank = f2_rank(out.relations);
  out.dimension = out.ambient_dim - out.relation_rank;
  return out;
}

std::size_t ideal_closure_rank(const FieldCtx& ctx, std::size_t n) {
  if (n < 2) return 0;
  ClassBasis cb(ctx);
  const std::size_t d = cb.dim();
  std::vector<F2Vec> J;
  for (const auto& [a, b] : steinberg_pairs(ctx)) J.push_back(kron(cb.coords(a), cb.coords(b)));
  for (std::size_t m = 3; m <= n; ++m) {
    std::vector<F2Vec> next;
    for (const auto& v : J)
      for (std::size_t i = 0; i < d; ++i) {
        next.push_back(kron(unit(d, i), v));
        next.push_back(kron(v, unit(d, i)));
      }
    J = std::move(next);
  }
  return f2_rank(J);
}

F2Space graded_witt_quotient(const FieldCtx& ctx, std::size_t n) {
  auto f = cached_filtration(ctx, n);
  F2Space out;
  out.ambient_dim = out.dimension = f->levels[n].quotient_dim;
  for (std::size_t i = 0; i < out.dimension; ++i) out.basis.push_back("I^" + std::to_string(n) + "/I^" + std::to_string(n + 1) + "[" + std::to_string(i) + "]");
  return out;
}

std::size_t galois_cohomology_dim(const FieldCtx& ctx, std::size_t n) {
  if (ctx.is_real()) return 1;
  if (ctx.is_prime_field()) return n <= 1 ? 1 : 0;
  throw WittError(ErrorKind::UnsupportedField, "Galois cohomology over " + ctx.tag());
}

std::string convention_name(PfisterConvention c) {
  return c == PfisterConvention::Standard ? "standard" : "literal";
}

WittClass nu_symbol(const FieldCtx& ctx, const Vector& symbol, PfisterConvention c) {
  Vector slots;
  for (const auto& a : symbol) slots.push_back(c == PfisterConvention::Standard ? -a : a);
  return class_of_diagonal(pfister(ctx, slots).expanded);
}

F2Vec graded_coordinates(const WittClass& x, std::size_t n) {
  if (!in_ideal_power(x, n)) throw WittError(ErrorKind::NotInIdealPower, x.str() + " is not in I^" + std::to_string(n));
  const FieldCtx& ctx = x.ctx;
  if (ctx.is_rationals()) throw WittError(ErrorKind::UnsupportedField, "graded Witt ring over Q");
  if (ctx.is_real()) {
    auto f = cached_filtration(ctx, n);
    if (f->levels[n].quotient_dim == 0) return {};
    mpz_class sig = static_cast<long>(x.representative.dim());
    if (x.dim() && x.representative.entries.front().sign() < 0) sig = -sig;
    mpz_class q = sig / f->levels[n].signature_step;
    return {static_cast<std::uint8_t>(mpz_odd_p(q.get_mpz_t()) ? 1 : 0)};
  }
  auto f = cached_filtration(ctx, n);
  return prime_field_quotient(ctx, n).at(*f->ring->index_of(x));
}

F2Vec e_map(const WittClass& x, std::size_t n) {
  if (!in_ideal_power(x, n)) throw WittError(ErrorKind::NotInIdealPower, x.str() + " is not in I^" + std::to_string(n));
  const FieldCtx& ctx = x.ctx;
  const std::size_t h = galois_cohomology_dim(ctx, n);
  if (h == 0) return {};
  auto bit = [](bool b) { return F2Vec{static_cast<std::uint8_t>(b ? 1 : 0)}; };
  if (n == 0) return bit(e0(x) == 1);
  if (n == 1) return bit(!e1(x).is_trivial());
  if (n == 2) return bit(e2(x).at(Place::real_place()) < 0);
  // n >= 3 only reaches here over R_Q, where H^n is generated by (-1)^n and
  // the class is detected by its signature in 2^n Z.
  const long sig = signature(x.representative.gram());
  return bit(((sig >> n) & 1) != 0);
}

F2Vec eta_symbol(const FieldCtx& ctx, const Vector& symbol) {
  const std::size_t n = symbol.size();
  if (galois_cohomology_dim(ctx, n) == 0) return {};
  bool all_nontrivial = true;
  for (const auto& a : symbol) all_nontrivial = all_nontrivial && !square_class(ctx, a).is_trivial();
  return {static_cast<std::uint8_t>(all_nontrivial ? 1 : 0)};
}

bool TriangleReport::ok() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const TriangleDegree& d) { return d.ok(); });
}

TriangleReport triangle_check(const FieldCtx& ctx, std::size_t n_max, PfisterConvention convention) {
  if (ctx.is_rationals()) throw WittError(ErrorKind::InfiniteSquareClassGroup, "triangle over Q");
  TriangleReport report;
  report.ctx = ctx;
  report.convention = convention;
  ClassBasis cb(ctx);
  std::vector<Scalar> group, basis;
  for (const auto& g : cb.group) group.push_back(g.representative);
  for (const auto& b : cb.basis) basis.push_back(b.representative);

  for (std::size_t n = 0; n <= n_max; ++n) {
    TriangleDegree deg;
    deg.n = n;
    F2Space K = milnor_k_mod2(ctx, n);
    F2Space W = graded_witt_quotient(ctx, n);
    deg.dim_K = K.dimension;
    deg.dim_gradedW = W.dimension;
    deg.dim_H = galois_cohomology_dim(ctx, n);
    deg.relation_ranks_agree = K.relation_rank == ideal_closure_rank(ctx, n);

    // nu on every word over the full square-class group.
    const auto words = all_words(group, n);
    std::map<std::vector<SquareClass>, WittClass> nu;
    auto key = [&](const Vector& w) {
      std::vector<SquareClass> k;
      for (const auto& a : w) k.push_back(square_class(ctx, a));
      return k;
    };
    deg.lands_in_ideal = true;
    deg.commutes = true;
    for (const auto& w : words) {
      WittClass x = nu_symbol(ctx, w, convention);
      nu.emplace(key(w), x);
      if (!in_ideal_power(x, n)) {
        deg.lands_in_ideal = false;
        deg.commutes = false;
        continue;
      }
      if (e_map(x, n) != eta_symbol(ctx, w)) deg.commutes = false;
    }

    std::map<std::vector<SquareClass>, F2Vec> coords;
    if (deg.lands_in_ideal)
      for (const auto& [k, x] : nu) coords.emplace(k, graded_coordinates(x, n));

    deg.multilinear = deg.lands_in_ideal;
    for (std::size_t i = 0; deg.multilinear && i < words.size(); ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& c : cb.group)
          for (const auto& c2 : cb.group) {
            auto k = key(words[i]);
            auto kc = k, kc2 = k, kprod = k;
            kc[j] = c;
            kc2[j] = c2;
            kprod[j] = class_product(ctx, c, c2);
            if (coords.at(kprod) != add(coords.at(kc), coords.at(kc2))) deg.multilinear = false;
          }

    deg.steinberg_vanish = true;
    if (n >= 2) {
      for (const auto& [a, b] : steinberg_pairs(ctx))
        for (std::size_t j = 0; j + 2 <= n; ++j)
          for (const auto& fill : all_words(group, n - 2)) {
            Vector w(fill.begin(), fill.begin() + static_cast<long>(j));
            w.push_back(a);
            w.push_back(b);
            w.insert(w.end(), fill.begin() + static_cast<long>(j), fill.end());
            if (!in_ideal_power(nu_symbol(ctx, w, convention), n + 1)) deg.steinberg_vanish = false;
          }
    }

    deg.nu_bijective = false;
    if (deg.lands_in_ideal) {
      std::vector<F2Vec> image;
      for (const auto& w : all_words(basis, n)) image.push_back(coords.at(key(w)));
      const std::size_t rank = W.dimension == 0 ? 0 : f2_rank(image);
      deg.nu_bijective = deg.steinberg_vanish && rank == K.dimension && K.dimension == W.dimension;
    }
    report.degrees.push_back(deg);
  }
  return report;
}

}  // namespace witt
