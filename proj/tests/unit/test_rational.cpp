#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sumprod/error.hpp"
#include "sumprod/factor.hpp"
#include "sumprod/random.hpp"
#include "sumprod/rational.hpp"

using namespace sumprod;

namespace {

Rational q(long n, long d = 1) { return Rational::canonicalize(n, d); }

Rational random_nonzero(Rng& rng, long bound) {
  long n = 0;
  while (n == 0) n = rng.between(-bound, bound);
  return q(n, rng.between(1, bound));
}

}  // namespace

TEST(Canonicalize, ReducesAndNormalizesSign) {
  const Rational r = q(4, -6);
  EXPECT_EQ(r.num(), -2);
  EXPECT_EQ(r.den(), 3);
  EXPECT_EQ(r.to_string(), "-2/3");
}

TEST(Canonicalize, ZeroIsZeroOverOne) {
  const Rational r = q(0, 5);
  EXPECT_EQ(r.num(), 0);
  EXPECT_EQ(r.den(), 1);
  EXPECT_EQ(r.to_string(), "0");
}

TEST(Canonicalize, IntegerCase) {
  EXPECT_EQ(q(7, 1).to_string(), "7");
  EXPECT_TRUE(q(7, 1).is_integer());
}

TEST(Canonicalize, ZeroDenominatorRejected) { EXPECT_THROW(q(1, 0), InvalidArgument); }

TEST(Parse, AcceptsNonCanonicalInput) {
  EXPECT_EQ(Rational::parse(" 4/-6 "), q(-2, 3));
  EXPECT_EQ(Rational::parse("-12"), q(-12));
  EXPECT_EQ(Rational::parse("+3/9"), q(1, 3));
  EXPECT_THROW(Rational::parse("1/0"), InvalidArgument);
  EXPECT_THROW(Rational::parse("abc"), InvalidArgument);
  EXPECT_THROW(Rational::parse(""), InvalidArgument);
  EXPECT_THROW(Rational::parse("1/2/3"), InvalidArgument);
}

TEST(Arithmetic, FieldOperations) {
  EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6));
  EXPECT_EQ(q(1, 2) - q(1, 3), q(1, 6));
  EXPECT_EQ(q(2, 3) * q(9, 4), q(3, 2));
  EXPECT_EQ(q(2, 3) / q(4, 9), q(3, 2));
  EXPECT_THROW(q(1) / q(0), InvalidArgument);
  EXPECT_EQ(q(2, 3).pow(-2), q(9, 4));
  EXPECT_LT(q(-1, 2), q(1, 3));
}

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(q(12, 5), Integer(2)), 2);
  EXPECT_EQ(valuation(q(12, 5), Integer(5)), -1);
  EXPECT_EQ(valuation(q(12, 5), Integer(7)), 0);
  EXPECT_THROW(valuation(q(0), Integer(2)), InvalidArgument);
  EXPECT_THROW(valuation(q(3), Integer(4)), InvalidArgument);
}

TEST(Coprime, Examples) {
  EXPECT_TRUE(coprime(q(4, 9), q(5, 7)));
  EXPECT_FALSE(coprime(q(2, 3), q(3, 5)));
  EXPECT_TRUE(coprime(q(6), q(1)));
  EXPECT_THROW(coprime(q(0), q(1)), InvalidArgument);
}

TEST(PrimeSupport, Examples) {
  EXPECT_EQ(prime_support(RationalSet{q(2), q(3), q(6)}), (std::vector<Integer>{2, 3}));
  EXPECT_TRUE(prime_support(RationalSet{q(1)}).empty());
  EXPECT_EQ(prime_support(RationalSet{q(4, 15)}), (std::vector<Integer>{2, 3, 5}));
  EXPECT_THROW(prime_support(RationalSet{q(0), q(2)}), InvalidArgument);
}

TEST(ValuationEmbedding, Examples) {
  const auto e1 = valuation_embedding(RationalSet{q(2), q(3), q(6)});
  EXPECT_EQ(e1.vectors, (std::vector<ValuationVector>{{1, 0}, {0, 1}, {1, 1}}));
  const auto e2 = valuation_embedding(RationalSet{q(1), q(2), q(4)});
  EXPECT_EQ(e2.vectors, (std::vector<ValuationVector>{{0}, {1}, {2}}));
  const auto e3 = valuation_embedding(RationalSet{q(1, 2), q(8)});
  EXPECT_EQ(e3.vectors, (std::vector<ValuationVector>{{-1}, {3}}));
  const auto e4 = valuation_embedding(RationalSet{q(-2), q(3)});
  EXPECT_EQ(e4.signs, (std::vector<int>{-1, 1}));
}

TEST(Factor, LargeSemiprimeAndPrime) {
  const Integer p("1000000007"), r("998244353");
  const auto f = factor_integer(p * r);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].first, r);
  EXPECT_EQ(f[1].first, p);
  EXPECT_TRUE(is_prime(Integer("170141183460469231731687303715884105727")));
  EXPECT_FALSE(is_prime(Integer("170141183460469231731687303715884105729")));
  EXPECT_EQ(next_prime(Integer(13)), 17);
}

TEST(Factor, RoundTripProperty) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Rational a = random_nonzero(rng, 100000);
    const FactoredRational f = factor(a);
    EXPECT_EQ(f.reconstruct(), a);
    for (const auto& [p, e] : f.exponents) EXPECT_NE(e, 0);
  }
  EXPECT_EQ(factor(q(0)).sign, 0);
}

TEST(Valuation, HomomorphismMatchesOracle) {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    const Rational a = random_nonzero(rng, 5000), b = random_nonzero(rng, 5000);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
      EXPECT_EQ(valuation(a * b, Integer(p)), valuation(a, Integer(p)) + valuation(b, Integer(p)));
      EXPECT_EQ(valuation(a, Integer(p)), oracle::valuation(a, p));
    }
    EXPECT_EQ(coprime(a, b), coprime(b, a));
    EXPECT_TRUE(coprime(a, q(1)));
  }
}

TEST(ValuationEmbedding, AdditiveOnProducts) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const Rational a = random_nonzero(rng, 300).abs(), b = random_nonzero(rng, 300).abs();
    const auto e = valuation_embedding(RationalSet{a, b, a * b});
    const RationalSet s{a, b, a * b};
    if (s.size() < 3) continue;
    const auto& v = e.vectors;
    const std::size_t ia = s.index_of(a), ib = s.index_of(b), iab = s.index_of(a * b);
    for (std::size_t c = 0; c < e.primes.size(); ++c) EXPECT_EQ(v[iab][c], v[ia][c] + v[ib][c]);
  }
}

TEST(Hash, EqualValuesHashEqual) {
  EXPECT_EQ(q(2, 4).hash(), q(1, 2).hash());
  EXPECT_EQ(std::hash<Rational>{}(q(-3, 9)), std::hash<Rational>{}(q(1, -3)));
}
