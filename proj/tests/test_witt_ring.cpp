#include <gtest/gtest.h>

#include "support/helpers.hpp"
#include "support/oracles.hpp"
#include "witt/random.hpp"
#include "witt/witt_ring.hpp"

using namespace witt;

namespace {

const FieldCtx Q = FieldCtx::rationals();
const FieldCtx R = FieldCtx::real();
FieldCtx F(long p) { return FieldCtx::prime_field(p); }

DiagonalForm diag(const FieldCtx& ctx, std::vector<mpq_class> e) {
  Vector v;
  for (const auto& a : e) v.push_back(ctx.from_rational(a));
  return DiagonalForm(ctx, v);
}

WittClass cls(const FieldCtx& ctx, std::vector<mpq_class> e) { return witt_class(diag(ctx, std::move(e))); }

std::vector<long> residues(const DiagonalForm& d) {
  std::vector<long> out;
  for (const auto& a : d.entries) out.push_back(a.value().get_num().get_si());
  return out;
}

// q1 ~ q2 in W(F_p) iff q1 + (-q2) is hyperbolic, decided by counting zeros.
bool similar_by_counting(const DiagonalForm& q1, const DiagonalForm& q2, long p) {
  std::vector<long> e = residues(q1);
  for (long a : residues(q2)) e.push_back(oracle::mod(-a, p));
  return oracle::hyperbolic_mod(e, p);
}

// Hasse-Minkowski for a form with square-free integer entries whose primes
// lie in `primes`: hyperbolic iff it has even dimension, signature 0, signed
// discriminant 1 and the Hasse invariants of m<1,-1> at every listed prime.
bool hyperbolic_over_q(const std::vector<long>& e, const std::vector<long>& primes) {
  if (e.size() % 2) return false;
  long sig = 0, det = 1;
  for (long a : e) {
    sig += a > 0 ? 1 : -1;
    det *= a;
  }
  if (sig != 0) return false;
  const long m = static_cast<long>(e.size()) / 2;
  if (oracle::squarefree((m % 2 ? -1 : 1) * det) != 1) return false;
  std::vector<long> h;
  for (long i = 0; i < m; ++i) {
    h.push_back(1);
    h.push_back(-1);
  }
  auto hasse = [](const std::vector<long>& x, long p) {
    int s = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) s *= oracle::hilbert(x[i], x[j], p);
    return s;
  };
  for (long p : primes)
    if (hasse(e, p) != hasse(h, p)) return false;
  return true;
}

template <class T>
void expect_ring_axioms(const WittRingTable& t, T defined) {
  const std::size_t n = t.size();
  const long zero = static_cast<long>(*t.index_of(zero_class(t.ctx)));
  const long one = static_cast<long>(*t.index_of(one_class(t.ctx)));
  for (std::size_t a = 0; a < n; ++a) {
    EXPECT_EQ(t.add[a][zero], static_cast<long>(a));
    EXPECT_EQ(t.mul[a][one], static_cast<long>(a));
    for (std::size_t b = 0; b < n; ++b) {
      EXPECT_EQ(t.add[a][b], t.add[b][a]);
      EXPECT_EQ(t.mul[a][b], t.mul[b][a]);
      for (std::size_t c = 0; c < n; ++c) {
        const long ab = t.add[a][b], bc = t.add[b][c], mab = t.mul[a][b], mbc = t.mul[b][c];
        if (defined(ab, c) && defined(a, bc) && defined(t.add[ab][c], 0)) EXPECT_EQ(t.add[ab][c], t.add[a][bc]);
        if (defined(mab, c) && defined(a, mbc) && defined(t.mul[mab][c], 0)) EXPECT_EQ(t.mul[mab][c], t.mul[a][mbc]);
        const long mac = t.mul[a][c];
        if (defined(a, bc) && defined(mab, mac) && defined(t.mul[a][bc], 0))
          EXPECT_EQ(t.mul[a][bc], t.add[mab][mac]);
      }
    }
  }
}

}  // namespace

TEST(WittClass, Examples) {
  EXPECT_TRUE(cls(Q, {1, -1}).is_zero());
  EXPECT_EQ(cls(F(3), {1, 1, 1}).representative, diag(F(3), {2}));
  EXPECT_EQ(cls(Q, {2, 8}).representative, diag(Q, {2, 2}));
  EXPECT_EQ(cls(R, {3, -2, 5}).representative, diag(R, {1}));
  EXPECT_EQ(cls(R, {-3, -1, 2, -7}).representative, diag(R, {-1, -1}));
}

TEST(WittClass, ClassOfDiagonalMatchesDecomposition) {
  Rng rng(3);
  for (const FieldCtx& ctx : {Q, R, F(3), F(5), F(11)})
    for (int i = 0; i < 30; ++i) {
      DiagonalForm d = random_diagonal(ctx, 1 + i % 5, rng);
      EXPECT_EQ(class_of_diagonal(d), witt_class(d)) << d.str();
      EXPECT_EQ(class_of_diagonal(d).representative, witt_class(d).representative) << d.str();
    }
}

TEST(WittClass, StructurallyInvariantUnderCongruence) {
  Rng rng(17);
  for (const FieldCtx& ctx : {R, F(3), F(5), F(7), Q})
    for (int i = 0; i < 20; ++i) {
      const std::size_t n = 1 + i % 5;
      GramMatrix q = random_symmetric(ctx, n, rng);
      WittClass a = witt_class(q);
      WittClass b = witt_class(apply_congruence(q, random_invertible(ctx, n, rng)));
      EXPECT_EQ(a, b) << q.str();
      if (!ctx.is_rationals()) EXPECT_EQ(a.representative, b.representative) << q.str();
    }
}

TEST(WittOps, Examples) {
  WittClass one = cls(F(3), {1});
  WittClass two = wadd(one, one);
  EXPECT_EQ(two.representative, diag(F(3), {1, 1}));
  WittClass three = wadd(two, one);
  EXPECT_EQ(three.representative, diag(F(3), {2}));
  EXPECT_TRUE(wadd(three, one).is_zero());

  EXPECT_EQ(wmul(cls(R, {1}), cls(R, {-1})).representative, diag(R, {-1}));
  EXPECT_EQ(one_class(Q).representative, diag(Q, {1}));
  EXPECT_TRUE(zero_class(F(5)).is_zero());
  EXPECT_EQ(kind_of([] { wadd(cls(Q, {1}), cls(F(3), {1})); }), ErrorKind::FieldMismatch);
}

TEST(WittOps, NegationIsAdditiveInverse) {
  Rng rng(4);
  for (const FieldCtx& ctx : {Q, R, F(3), F(5), F(13)})
    for (int i = 0; i < 20; ++i) {
      WittClass x = witt_class(random_diagonal(ctx, 1 + i % 4, rng));
      EXPECT_TRUE(wadd(x, wneg(x)).is_zero()) << x.str();
    }
}

TEST(WittOps, RationalRingLawsOnSamples) {
  Rng rng(6);
  for (int i = 0; i < 40; ++i) {
    WittClass x = witt_class(random_diagonal(Q, 1 + i % 2, rng));
    WittClass y = witt_class(random_diagonal(Q, 1 + (i / 2) % 2, rng));
    WittClass z = witt_class(random_diagonal(Q, 1, rng));
    EXPECT_EQ(wadd(x, y), wadd(y, x));
    EXPECT_EQ(wmul(x, y), wmul(y, x));
    EXPECT_EQ(wmul(x, wadd(y, z)), wadd(wmul(x, y), wmul(x, z))) << x.str() << " " << y.str() << " " << z.str();
  }
}

TEST(IsSimilar, Examples) {
  EXPECT_TRUE(is_similar(diag(Q, {1, 1}).gram(), diag(Q, {2, 2}).gram()));
  EXPECT_FALSE(is_similar(diag(R, {1, 1}).gram(), diag(R, {1, -1}).gram()));
  EXPECT_FALSE(is_similar(diag(Q, {1, 1}).gram(), diag(Q, {1, 2}).gram()));
  EXPECT_FALSE(is_similar(diag(Q, {1, 1}).gram(), diag(Q, {3, 3}).gram()));
  EXPECT_TRUE(is_similar(diag(Q, {1, 1, 1}).gram(), diag(Q, {1, 2, 2}).gram()));
  EXPECT_EQ(kind_of([] { is_similar(diag(Q, {1}).gram(), diag(R, {1}).gram()); }), ErrorKind::FieldMismatch);
}

TEST(IsSimilar, AddingHyperbolicPlaneKeepsClass) {
  Rng rng(12);
  for (const FieldCtx& ctx : {Q, R, F(3), F(7)})
    for (int i = 0; i < 20; ++i) {
      GramMatrix q = random_symmetric(ctx, 1 + i % 4, rng);
      EXPECT_TRUE(is_similar(q, direct_sum(q, diag(ctx, {1, -1}).gram()))) << q.str();
    }
}

TEST(IsSimilar, PrimeFieldMatchesZeroCount) {
  Rng rng(40);
  for (long p : {3L, 5L, 7L}) {
    FieldCtx f = F(p);
    for (int i = 0; i < 60; ++i) {
      DiagonalForm a = random_diagonal(f, 1 + i % 2, rng);
      DiagonalForm b = random_diagonal(f, 1 + (i / 2) % 3, rng);
      EXPECT_EQ(is_similar(a.gram(), b.gram()), similar_by_counting(a, b, p)) << a.str() << " " << b.str();
    }
  }
}

TEST(IsSimilar, RationalMatchesLocalInvariants) {
  const std::vector<long> alphabet{1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 10, -15};
  const std::vector<long> primes{0, 2, 3, 5};
  Rng rng(77);
  int similar = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n1 = 1 + i % 2, n2 = 1 + (i / 2) % 2;
    std::vector<long> e1, e2, combined;
    for (std::size_t k = 0; k < n1; ++k) e1.push_back(alphabet[rng() % alphabet.size()]);
    for (std::size_t k = 0; k < n2; ++k) e2.push_back(alphabet[rng() % alphabet.size()]);
    combined = e1;
    for (long a : e2) combined.push_back(-a);
    std::vector<mpq_class> q1(e1.begin(), e1.end()), q2(e2.begin(), e2.end());
    const bool expected = hyperbolic_over_q(combined, primes);
    similar += expected;
    EXPECT_EQ(is_similar(diag(Q, q1).gram(), diag(Q, q2).gram()), expected);
  }
  EXPECT_GT(similar, 5);
}

TEST(Enumerate, PrimeFieldExamples) {
  auto t3 = enumerate_witt_ring(F(3));
  ASSERT_EQ(t3->size(), 4u);
  for (const auto& e : {diag(F(3), {}), diag(F(3), {1}), diag(F(3), {2}), diag(F(3), {1, 1})})
    EXPECT_TRUE(t3->index_of(witt_class(e)).has_value()) << e.str();
  EXPECT_EQ(t3->additive_order(*t3->index_of(cls(F(3), {1}))), 4u);
  auto t5 = enumerate_witt_ring(F(5));
  ASSERT_EQ(t5->size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(t5->additive_order(i), 2u);
  EXPECT_EQ(enumerate_witt_ring(F(3)).get(), t3.get());
}

TEST(Enumerate, AdditiveGroupFollowsPModFour) {
  for (long p = 3; p <= 50; p += 2) {
    if (!oracle::is_prime(p)) continue;
    auto t = enumerate_witt_ring(F(p));
    ASSERT_EQ(t->size(), 4u) << p;
    std::size_t max_order = 0;
    for (std::size_t i = 0; i < 4; ++i) max_order = std::max(max_order, t->additive_order(i));
    EXPECT_EQ(max_order == 4, p % 4 == 3) << p;
  }
}

TEST(Enumerate, RingAxioms) {
  for (long p : {3L, 5L, 7L, 13L}) expect_ring_axioms(*enumerate_witt_ring(F(p)), [](long, long) { return true; });
  auto r = enumerate_witt_ring(R, 3);
  EXPECT_EQ(r->size(), 7u);
  for (long s = -3; s <= 3; ++s) {
    std::vector<mpq_class> e(std::labs(s), s > 0 ? 1 : -1);
    EXPECT_TRUE(r->index_of(cls(R, e)).has_value()) << s;
  }
  expect_ring_axioms(*r, [](long a, long b) { return a >= 0 && b >= 0; });
}

TEST(Enumerate, InfiniteRings) {
  EXPECT_EQ(kind_of([] { enumerate_witt_ring(Q); }), ErrorKind::InfiniteRing);
  EXPECT_EQ(kind_of([] { enumerate_witt_ring(R); }), ErrorKind::InfiniteRing);
}

TEST(Pfister, Expansion) {
  EXPECT_EQ(pfister(Q, {Q.from_int(7)}).expanded, diag(Q, {1, 7}));
  PfisterForm p = pfister(R, {R.from_int(-1), R.from_int(-1)});
  EXPECT_EQ(p.expanded, diag(R, {1, -1, -1, 1}));
  EXPECT_TRUE(witt_class(p.expanded).is_zero());
  EXPECT_EQ(pfister(Q, {Q.one(), Q.from_int(3)}).expanded, diag(Q, {1, 3, 1, 3}));
  EXPECT_EQ(pfister(Q, {}).expanded, diag(Q, {1}));
  EXPECT_EQ(kind_of([] { pfister(Q, {Q.zero()}); }), ErrorKind::ZeroScalar);
}

TEST(Filtration, Examples) {
  IdealFiltration f3 = ideal_filtration(F(3), 3);
  ASSERT_EQ(f3.levels.size(), 4u);
  EXPECT_EQ(f3.levels[0].elements.size(), 4u);
  EXPECT_EQ(f3.levels[0].quotient_dim, 1u);
  ASSERT_EQ(f3.levels[1].elements.size(), 2u);
  EXPECT_EQ(f3.levels[1].quotient_dim, 1u);
  EXPECT_EQ(f3.levels[2].elements.size(), 1u);
  EXPECT_EQ(f3.levels[2].quotient_dim, 0u);
  std::set<std::string> i1;
  for (std::size_t k : f3.levels[1].elements) i1.insert(f3.ring->elements[k].str());
  EXPECT_EQ(i1, (std::set<std::string>{zero_class(F(3)).str(), cls(F(3), {1, 1}).str()}));

  IdealFiltration r = ideal_filtration(R, 5);
  for (const auto& l : r.levels) {
    EXPECT_EQ(l.signature_step, mpz_class(1) << l.n);
    EXPECT_EQ(l.quotient_dim, 1u);
  }
  EXPECT_EQ(kind_of([] { ideal_filtration(Q, 2); }), ErrorKind::InfiniteRing);
}

TEST(Filtration, MembershipAgreesWithLevels) {
  for (long p : {3L, 5L, 7L, 13L}) {
    IdealFiltration f = ideal_filtration(F(p), 3);
    EXPECT_TRUE(f.levels[3].elements.size() == 1u) << p;
    for (const auto& l : f.levels) {
      std::set<std::size_t> members(l.elements.begin(), l.elements.end());
      for (std::size_t i = 0; i < f.ring->size(); ++i)
        EXPECT_EQ(in_ideal_power(f.ring->elements[i], l.n), members.count(i) > 0) << p << " " << l.n;
    }
  }
  EXPECT_TRUE(in_ideal_power(cls(R, {1, 1, 1, 1}), 2));
  EXPECT_FALSE(in_ideal_power(cls(R, {1, 1}), 2));
  EXPECT_TRUE(in_ideal_power(cls(R, {1, 1, 1, 1, 1, 1, 1, 1}), 3));
}

TEST(Invariants, Examples) {
  EXPECT_EQ(e0(cls(Q, {1})), 1);
  EXPECT_EQ(e0(zero_class(Q)), 0);
  EXPECT_EQ(e1(cls(R, {1, 1})).representative, R.from_int(-1));
  EXPECT_EQ(e1(cls(Q, {1, -3})).representative, Q.from_int(3));
  // <1,-1,-1,1> is hyperbolic over Q, so its class-level invariant is
  // trivial; the symbol profile of the expanded representative is not.
  DiagonalForm p = pfister(Q, {Q.from_int(-1), Q.from_int(-1)}).expanded;
  HasseProfile h = hasse_profile(p);
  EXPECT_EQ(h.negative_places(), (std::set<Place>{Place::real_place(), Place::finite(2)}));
  EXPECT_EQ(h.at(Place::finite(3)), 1);
  EXPECT_TRUE(e2(witt_class(p)).negative_places().empty());
  HasseProfile quaternion = e2(cls(Q, {1, 1, 1, 1}));
  EXPECT_EQ(quaternion.negative_places(), (std::set<Place>{Place::real_place(), Place::finite(2)}));
  EXPECT_EQ(kind_of([] { e1(cls(Q, {1})); }), ErrorKind::NotInIdealPower);
  EXPECT_EQ(kind_of([] { e2(cls(Q, {1, 1})); }), ErrorKind::NotInIdealPower);
  EXPECT_TRUE(e2(witt_class(pfister(F(7), {F(7).from_int(3), F(7).from_int(3)}).expanded)).negative_places().empty());
}

TEST(Invariants, E0AndE1AreHomomorphismsOverPrimeFields) {
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    auto t = enumerate_witt_ring(F(p));
    for (const auto& x : t->elements)
      for (const auto& y : t->elements) {
        EXPECT_EQ(e0(wadd(x, y)), (e0(x) + e0(y)) % 2);
        if (in_ideal_power(x, 1) && in_ideal_power(y, 1))
          EXPECT_EQ(e1(wadd(x, y)), class_product(F(p), e1(x), e1(y)));
      }
  }
}

TEST(Invariants, E1HomomorphismOnRationalSamples) {
  Rng rng(1001);
  for (int i = 0; i < 60; ++i) {
    WittClass x = witt_class(random_diagonal(Q, 2 * (1 + i % 2), rng));
    WittClass y = witt_class(random_diagonal(Q, 2, rng));
    EXPECT_EQ(e0(wadd(x, y)), (e0(x) + e0(y)) % 2);
    EXPECT_EQ(e1(wadd(x, y)), class_product(Q, e1(x), e1(y))) << x.str() << " " << y.str();
  }
}

TEST(Invariants, E2IsAdditiveOnPfisterForms) {
  Rng rng(5150);
  for (int i = 0; i < 40; ++i) {
    auto slot = [&] { return random_nonzero(Q, rng); };
    WittClass x = witt_class(pfister(Q, {slot(), slot()}).expanded);
    WittClass y = witt_class(pfister(Q, {slot(), slot()}).expanded);
    std::set<Place> a = e2(x).negative_places(), b = e2(y).negative_places(), expected;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(expected, expected.end()));
    EXPECT_EQ(e2(wadd(x, y)).negative_places(), expected) << x.str() << " " << y.str();
  }
}

TEST(Invariants, CliffordProfileIsAClassInvariant) {
  Rng rng(8080);
  for (int i = 0; i < 30; ++i) {
    GramMatrix q = random_symmetric(Q, 1 + i % 4, rng);
    DiagonalForm d = diagonalize(q).form;
    if (!d.is_nondegenerate()) continue;
    EXPECT_EQ(clifford_profile(d), clifford_profile(direct_sum(d, diag(Q, {5, -5}))));
    EXPECT_EQ(clifford_profile(d), clifford_profile(witt_class(q).representative)) << q.str();
  }
}

TEST(HilbertSymbol, MatchesBruteForceAndProductFormula) {
  const std::vector<long> alphabet{-1, 2, -2, 3, -3, 5, -5, 6, -6, 7, 10, -15, 21};
  for (long a : alphabet)
    for (long b : alphabet) {
      int product = 1;
      for (long p : {0L, 2L, 3L, 5L, 7L}) {
        const Place v = p ? Place::finite(p) : Place::real_place();
        const int h = hilbert_symbol(a, b, v);
        EXPECT_EQ(h, oracle::hilbert(a, b, p)) << a << "," << b << " at " << p;
        product *= h;
      }
      EXPECT_EQ(product, 1) << a << "," << b;
    }
}
