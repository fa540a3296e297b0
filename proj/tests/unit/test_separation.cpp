#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sumprod/error.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/separation.hpp"
#include "sumprod/setops.hpp"

using namespace sumprod;

namespace {

Rational q(long n, long d = 1) { return Rational::canonicalize(n, d); }

RationalSet ints(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.push_back(q(x));
  return RationalSet(std::move(v));
}

}  // namespace

TEST(Decomposition, RejectsCoprimalityViolationNamingTriple) {
  try {
    Decomposition(ints({2, 3}), {{q(2), ints({1})}, {q(3), ints({4})}});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("(2, 3, 4)"), std::string::npos) << e.what();
  }
}

TEST(Decomposition, RejectsOverlappingPieces) {
  // 2 * 1 = -2 * -1.
  EXPECT_THROW(Decomposition(ints({2, -2}), {{q(2), ints({1})}, {q(-2), ints({-1})}}), InvalidArgument);
  EXPECT_THROW(Decomposition(ints({2}), {}), InvalidArgument);
}

TEST(SeparationRatio, Examples) {
  const Decomposition D(ints({2, 4}), {{q(2), ints({1})}, {q(4), ints({1})}});
  EXPECT_EQ(D.Z(), ints({2, 4}));
  const auto r = separation_ratio(D, q(1), 2, WeightedSet::uniform(D.Z()));
  EXPECT_NEAR(r.ratio, std::sqrt(1.5), 1e-12);
  EXPECT_LE(r.ratio, 2.0);
  EXPECT_LE(r.ratio, 12.0);

  const Decomposition single(ints({3}), {{q(3), ints({1, 5, 7})}});
  const auto s = separation_ratio(single, q(1), 2, WeightedSet::uniform(single.Z()));
  EXPECT_LE(s.ratio, 1.0 + 1e-12);
}

TEST(ProbeSeparatingConstant, Examples) {
  const RationalSet X = ints({2, 4, 8});
  const auto r = probe_separating_constant(X, q(1), 2, 20, 1);
  EXPECT_LE(r.max_ratio, 3.0);
  EXPECT_LE(r.max_ratio, 12.0);
  EXPECT_EQ(r.ratios.size(), 20u);
  EXPECT_LE(probe_separating_constant(ints({5}), q(1), 2, 10, 2).max_ratio, 1.0 + 1e-12);
  EXPECT_TRUE(is_prime_power_set(X));
  EXPECT_FALSE(is_prime_power_set(ints({2, 3})));
  EXPECT_EQ(separating_bound(X, 2), 3.0);
  EXPECT_EQ(separating_bound(geometric_progression(q(2), 20), 2), 12.0);
  EXPECT_EQ(separating_bound(ints({2, 3}), 2), 2.0);
}

TEST(ProbeSeparatingConstant, Deterministic) {
  const auto a = probe_separating_constant(ints({2, 3, 5}), q(1), 2, 8, 42);
  const auto b = probe_separating_constant(ints({2, 3, 5}), q(1), 2, 8, 42);
  EXPECT_EQ(a.ratios, b.ratios);
}

TEST(LambdaUniform, Examples) {
  EXPECT_NEAR(lambda_uniform(ints({1, 2, 4}), q(1), 2).value, std::sqrt(15.0 / 9.0), 1e-12);
  EXPECT_NEAR(lambda_uniform(ints({7}), q(1), 3).value, 1.0, 1e-12);
  EXPECT_NEAR(lambda_uniform(ints({1, 2}), q(1), 2).value, std::sqrt(1.5), 1e-12);
}

TEST(LambdaAscent, ClosedFormAtK2) {
  for (std::uint64_t n = 1; n <= 6; ++n) {
    const RationalSet A = random_rational_set(n, 20, 3, n);
    const auto est = lambda_ascent(A, q(2), 2, 200, 9);
    EXPECT_NEAR(est.value, std::sqrt(2.0 - 1.0 / static_cast<double>(n)), 1e-6);
    double s = 0;
    for (double w : est.witness) {
      EXPECT_GE(w, 0.0);
      s += w * w;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
    for (std::size_t i = 1; i < est.trace.size(); ++i) EXPECT_GE(est.trace[i], est.trace[i - 1]);
  }
}

TEST(LambdaAscent, DominatesUniformAtK3) {
  const RationalSet A = ints({1, 2, 4});
  const auto asc = lambda_ascent(A, q(1), 3, 100, 1);
  EXPECT_GE(asc.value, lambda_uniform(A, q(1), 3).value - 1e-9);
  EXPECT_NEAR(asc.value, std::cbrt(oracle::weighted_mixed_energy(A, q(1), 3, asc.witness)), 1e-9);
}

TEST(LambdaGrid, Examples) {
  EXPECT_NEAR(lambda_grid_oracle(ints({1, 2}), q(1), 2, 0.01).value, std::sqrt(1.5), 1e-3);
  EXPECT_NEAR(lambda_grid_oracle(ints({9}), q(1), 2, 0.01).value, 1.0, 1e-12);
  EXPECT_NEAR(lambda_grid_oracle(ints({1, 2, 4}), q(1), 2, 0.01).value, std::sqrt(5.0 / 3.0), 1e-3);
  EXPECT_THROW(lambda_grid_oracle(ints({1, 2, 3, 4, 5}), q(1), 2, 0.01), InvalidArgument);
  EXPECT_THROW(lambda_grid_oracle(ints({1, 2}), q(1), 2, 0.5), InvalidArgument);
}

TEST(LambdaGrid, DilationInvariant) {
  const RationalSet A = ints({1, 2, 5});
  const Rational lambda = q(-7, 2);
  EXPECT_NEAR(lambda_grid_oracle(A, q(1), 3, 0.05).value, lambda_grid_oracle(dilate(A, lambda), lambda, 3, 0.05).value,
              kGridTolerance);
  EXPECT_NEAR(lambda_uniform(A, q(1), 3).value, lambda_uniform(dilate(A, lambda), lambda, 3).value, 1e-12);
}

TEST(Stability, Examples) {
  const auto r = verify_stability(ints({1, 2, 4}), q(1), 2, 10, 3);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.lambda_full, std::sqrt(5.0 / 3.0), 1e-3);
  for (const auto& t : r.trials) EXPECT_GE(t.lambda, 1.0 - 1e-12);
}

TEST(SubsetLemma, Examples) {
  const auto r = verify_subset_lemma_instance(ints({2, 4, 8}), ints({2, 4}), q(1), 2);
  EXPECT_EQ(r.doubling, q(5, 3));
  EXPECT_EQ(r.psi, 2.0);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(verify_subset_lemma_instance(ints({2, 3, 6}), ints({2, 3}), q(1), 2).holds);
  EXPECT_TRUE(verify_subset_lemma_instance(ints({2, 3, 6}), ints({2, 3, 6}), q(1), 2).holds);
  EXPECT_THROW(verify_subset_lemma_instance(ints({2, 3}), ints({2, 5}), q(1), 2), InvalidArgument);
}
