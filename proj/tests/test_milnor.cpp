#include <gtest/gtest.h>

#include "support/helpers.hpp"
#include "support/oracles.hpp"
#include "witt/milnor.hpp"
#include "witt/random.hpp"

using namespace witt;

namespace {

const FieldCtx Q = FieldCtx::rationals();
const FieldCtx R = FieldCtx::real();
FieldCtx F(long p) { return FieldCtx::prime_field(p); }

const std::vector<long> kSmallPrimes{3, 5, 7, 11, 13};

// Number of distinct F_2 combinations of the rows; equals 2^rank.
std::size_t span_size(const std::vector<F2Vec>& rows) {
  std::set<F2Vec> span;
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << rows.size()); ++mask) {
    F2Vec v(width, 0);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (mask >> r & 1)
        for (std::size_t c = 0; c < width; ++c) v[c] ^= rows[r][c];
    span.insert(v);
  }
  return span.size();
}

// K_2(F_p)/2 vanishes iff some a makes both a and 1 - a non-squares.
bool k2_vanishes_by_search(long p) {
  for (long a = 2; a < p; ++a)
    if (oracle::legendre(a, p) == -1 && oracle::legendre(1 - a, p) == -1) return true;
  return false;
}

}  // namespace

TEST(F2Rank, MatchesSpanSize) {
  Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 6;
    std::vector<F2Vec> m(rows, F2Vec(cols));
    for (auto& r : m)
      for (auto& x : r) x = static_cast<std::uint8_t>(rng() % 2);
    EXPECT_EQ(std::size_t{1} << f2_rank(m), span_size(m));
  }
  EXPECT_EQ(f2_rank({}), 0u);
}

TEST(MilnorK, Examples) {
  F2Space k1 = milnor_k_mod2(F(5), 1);
  EXPECT_EQ(k1.dimension, 1u);
  EXPECT_EQ(k1.basis, (std::vector<std::string>{"{2}"}));
  EXPECT_EQ(milnor_k_mod2(F(3), 2).dimension, 0u);
  for (std::size_t n = 0; n <= 6; ++n) {
    F2Space k = milnor_k_mod2(R, n);
    EXPECT_EQ(k.dimension, 1u) << n;
    if (n == 3) EXPECT_EQ(k.basis, (std::vector<std::string>{"{-1}(x){-1}(x){-1}"}));
  }
  EXPECT_EQ(milnor_k_mod2(F(7), 0).dimension, 1u);
  EXPECT_EQ(milnor_k_mod2(F(7), 0).basis, (std::vector<std::string>{"1"}));
  EXPECT_EQ(kind_of([] { milnor_k_mod2(Q, 1); }), ErrorKind::InfiniteSquareClassGroup);
}

TEST(MilnorK, SteinbergPairsSumToOne) {
  for (long p : kSmallPrimes)
    for (const auto& [a, b] : steinberg_pairs(F(p))) EXPECT_EQ(a + b, F(p).one()) << p;
  for (const auto& [a, b] : steinberg_pairs(R)) {
    EXPECT_EQ(a + b, R.one());
    EXPECT_FALSE(a.sign() < 0 && b.sign() < 0);
  }
}

TEST(MilnorK, DegreeTwoVanishesForOddPrimesUpTo50) {
  for (long p = 3; p <= 50; p += 2) {
    if (!oracle::is_prime(p)) continue;
    ASSERT_TRUE(k2_vanishes_by_search(p)) << p;
    EXPECT_EQ(milnor_k_mod2(F(p), 2).dimension, 0u) << p;
  }
}

TEST(MilnorK, AdjacentRelationsGenerateTheIdeal) {
  for (const FieldCtx& ctx : {R, F(3), F(5), F(7), F(13)})
    for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(ideal_closure_rank(ctx, n), milnor_k_mod2(ctx, n).relation_rank);
}

TEST(GradedWitt, Dimensions) {
  const std::vector<std::size_t> finite{1, 1, 0, 0, 0};
  for (long p : kSmallPrimes)
    for (std::size_t n = 0; n < finite.size(); ++n) EXPECT_EQ(graded_witt_quotient(F(p), n).dimension, finite[n]);
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(graded_witt_quotient(R, n).dimension, 1u);
  EXPECT_EQ(kind_of([] { graded_witt_quotient(Q, 1); }), ErrorKind::InfiniteRing);
}

TEST(GaloisCohomology, KnownDimensions) {
  EXPECT_EQ(galois_cohomology_dim(F(7), 0), 1u);
  EXPECT_EQ(galois_cohomology_dim(F(7), 1), 1u);
  EXPECT_EQ(galois_cohomology_dim(F(7), 3), 0u);
  EXPECT_EQ(galois_cohomology_dim(R, 5), 1u);
  EXPECT_EQ(kind_of([] { galois_cohomology_dim(Q, 0); }), ErrorKind::UnsupportedField);
}

TEST(Nu, SymbolsAndCoordinates) {
  WittClass r = nu_symbol(R, {R.from_int(-1), R.from_int(-1), R.from_int(-1)}, PfisterConvention::Standard);
  EXPECT_EQ(r.dim(), 8u);
  EXPECT_EQ(signature(r.representative.gram()), 8);
  EXPECT_EQ(graded_coordinates(r, 3), (F2Vec{1}));
  EXPECT_EQ(e_map(r, 3), eta_symbol(R, {R.from_int(-1), R.from_int(-1), R.from_int(-1)}));
  EXPECT_EQ(kind_of([&] { graded_coordinates(r, 4); }), ErrorKind::NotInIdealPower);

  WittClass literal = nu_symbol(R, {R.from_int(-1)}, PfisterConvention::Literal);
  EXPECT_TRUE(literal.is_zero());
  EXPECT_EQ(convention_name(PfisterConvention::Standard), "standard");

  FieldCtx f = F(5);
  WittClass x = nu_symbol(f, {f.from_int(2)}, PfisterConvention::Standard);
  EXPECT_EQ(graded_coordinates(x, 1), (F2Vec{1}));
  EXPECT_EQ(e_map(x, 1), eta_symbol(f, {f.from_int(2)}));
  EXPECT_EQ(graded_coordinates(nu_symbol(f, {}, PfisterConvention::Standard), 0), (F2Vec{1}));
}

TEST(Triangle, Examples) {
  TriangleReport f5 = triangle_check(F(5), 3);
  ASSERT_EQ(f5.degrees.size(), 4u);
  const std::vector<std::size_t> dims{1, 1, 0, 0};
  for (const auto& d : f5.degrees) {
    EXPECT_EQ(d.dim_K, dims[d.n]);
    EXPECT_EQ(d.dim_gradedW, dims[d.n]);
    EXPECT_EQ(d.dim_H, dims[d.n]);
  }
  EXPECT_TRUE(f5.ok());

  TriangleReport r = triangle_check(R, 4);
  EXPECT_TRUE(r.ok());
  for (const auto& d : r.degrees) EXPECT_EQ(d.dim_K, 1u);

  TriangleReport zero = triangle_check(F(11), 0);
  ASSERT_EQ(zero.degrees.size(), 1u);
  EXPECT_TRUE(zero.degrees[0].ok());
  EXPECT_EQ(kind_of([] { triangle_check(Q, 2); }), ErrorKind::InfiniteSquareClassGroup);
}

TEST(Triangle, HoldsUpToDegreeSixUnderStandardConvention) {
  for (const FieldCtx& ctx : {R, F(3), F(5), F(7), F(11), F(13)}) {
    TriangleReport t = triangle_check(ctx, 6);
    EXPECT_TRUE(t.ok()) << ctx.tag();
    for (const auto& d : t.degrees) {
      EXPECT_EQ(d.dim_K, d.dim_gradedW) << ctx.tag() << " n=" << d.n;
      EXPECT_EQ(d.dim_K, d.dim_H) << ctx.tag() << " n=" << d.n;
    }
  }
}

TEST(Triangle, LiteralConventionBreaksWhereMinusOneIsNotASquare) {
  // <1, a> for a non-square a = -1 over F_3 is hyperbolic, so the literal
  // convention sends the generator of K_1 to zero.
  TriangleReport f3 = triangle_check(F(3), 2, PfisterConvention::Literal);
  EXPECT_FALSE(f3.ok());
  EXPECT_FALSE(f3.degrees[1].nu_bijective);
  EXPECT_FALSE(triangle_check(R, 2, PfisterConvention::Literal).ok());
  // With -1 a square the two conventions coincide.
  EXPECT_TRUE(triangle_check(F(5), 2, PfisterConvention::Literal).ok());
}
