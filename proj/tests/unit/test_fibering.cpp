#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sumprod/error.hpp"
#include "sumprod/fibering.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/random.hpp"

using namespace sumprod;

namespace {

Rational q(long n, long d = 1) { return Rational::canonicalize(n, d); }

LatticeSet pts(std::size_t n, std::vector<Point> p) { return LatticeSet(n, std::move(p)); }

EdgeList identity(std::size_t n) {
  EdgeList e;
  for (std::uint32_t i = 0; i < n; ++i) e.emplace_back(i, i);
  return e;
}

struct Instance {
  LatticeSet A, B;
  EdgeList G;
};

Instance random_instance(std::uint64_t seed, std::size_t max_size = 60) {
  Rng rng(seed);
  const std::size_t n = 1 + rng.below(4);
  const std::int64_t side = 2 + static_cast<std::int64_t>(rng.below(5));
  std::size_t cap = 1;
  for (std::size_t d = 0; d < n; ++d) cap *= static_cast<std::size_t>(side);
  const std::size_t a = 1 + rng.below(std::min(cap, max_size));
  const std::size_t b = 1 + rng.below(std::min(cap, max_size));
  Instance inst{random_lattice_set(n, a, side, seed * 3 + 1), random_lattice_set(n, b, side, seed * 3 + 2), {}};
  const double density = 0.05 + 0.95 * rng.unit();
  inst.G = random_lattice_graph(a, b, density, seed * 3 + 3);
  if (inst.G.empty()) inst.G.emplace_back(0, 0);
  return inst;
}

}  // namespace

TEST(RestrictedSumset, Examples) {
  const LatticeSet A = pts(1, {{0}, {1}});
  EXPECT_EQ(restricted_sumset(A, A, complete_edges(2, 2)), pts(1, {{0}, {1}, {2}}));
  EXPECT_EQ(restricted_sumset(A, A, {{0, 0}}), pts(1, {{0}}));
  const LatticeSet D = pts(2, {{0, 0}, {1, 1}});
  EXPECT_EQ(restricted_sumset(D, D, identity(2)), pts(2, {{0, 0}, {2, 2}}));
  EXPECT_THROW(restricted_sumset(A, D, {}), InvalidArgument);
}

TEST(RestrictedSumset, MonotoneAndCompleteIsFullSumset) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance in = random_instance(seed, 20);
    const LatticeSet full = restricted_sumset(in.A, in.B, complete_edges(in.A.size(), in.B.size()));
    const LatticeSet part = restricted_sumset(in.A, in.B, in.G);
    for (const Point& p : part) EXPECT_TRUE(full.contains(p));
    std::set<Point> direct;
    for (const Point& a : in.A) {
      for (const Point& b : in.B) direct.insert(oracle::add(a, b));
    }
    EXPECT_EQ(full.size(), direct.size());
  }
}

TEST(FiberView, Examples) {
  const LatticeSet box = lattice_box(2, 2);
  const FiberView v = fiber_view(box, box, complete_edges(4, 4), 1);
  EXPECT_EQ(v.base_A.size(), 2u);
  EXPECT_EQ(v.fibers_A[0].size(), 2u);
  EXPECT_EQ(v.fibers_A[1].size(), 2u);

  const EdgeList G = {{0, 1}, {2, 3}, {3, 0}};
  const FiberView v0 = fiber_view(box, box, G, 0);
  EXPECT_EQ(v0.base_graph.size(), 1u);
  EXPECT_EQ(v0.fiber_graphs.begin()->second, G);

  const FiberView vn = fiber_view(box, box, G, 2);
  EXPECT_EQ(vn.base_graph, G);
  for (const auto& f : vn.fibers_A) EXPECT_EQ(f.size(), 1u);
  EXPECT_THROW(fiber_view(box, box, G, 3), InvalidArgument);
}

TEST(FiberView, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance in = random_instance(seed);
    EdgeList G = in.G;
    normalize_edges(G);
    for (std::size_t t = 0; t <= in.A.dimension(); ++t) {
      const FiberView v = fiber_view(in.A, in.B, G, t);
      EXPECT_EQ(v.reconstruct_A(), in.A);
      EXPECT_EQ(v.reconstruct_B(), in.B);
      EXPECT_EQ(v.reconstruct_graph(in.A, in.B), G);
    }
  }
}

TEST(FiberGraphSum, Examples) {
  const LatticeSet box = lattice_box(2, 2);
  const auto r = verify_fiber_graph_sum(box, box, complete_edges(4, 4), 1);
  EXPECT_EQ(r.lhs, 9u);
  EXPECT_EQ(r.rhs, 9u);
  EXPECT_TRUE(r.holds);

  const LatticeSet D = pts(2, {{0, 0}, {1, 1}});
  const auto m = verify_fiber_graph_sum(D, D, identity(2), 1);
  EXPECT_EQ(m.lhs, 2u);
  EXPECT_EQ(m.base_sumset, 2u);
  EXPECT_EQ(m.min_all_pairs, 0u);  // the off-diagonal base pairs have empty fiber graphs
  EXPECT_EQ(m.min_on_base, 1u);
  EXPECT_EQ(m.rhs_strong, 2u);
  EXPECT_TRUE(m.holds && m.holds_strong);
}

TEST(FiberGraphSum, MatchesOracle) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const Instance in = random_instance(seed);
    for (std::size_t t = 0; t <= in.A.dimension(); ++t) {
      const auto r = verify_fiber_graph_sum(in.A, in.B, in.G, t);
      const auto o = oracle::fiber_graph_sum(in.A, in.B, in.G, t);
      EXPECT_EQ(r.lhs, o.lhs);
      EXPECT_EQ(r.base_sumset, o.base);
      EXPECT_EQ(r.min_all_pairs, o.min_all);
      EXPECT_EQ(r.min_on_base, o.min_base);
      EXPECT_TRUE(r.holds);
      EXPECT_TRUE(r.holds_strong);
    }
  }
}

TEST(DegreePrune, Examples) {
  const auto c = degree_prune(3, 4, complete_edges(3, 4));
  EXPECT_EQ(c.kept_A.size(), 3u);
  EXPECT_EQ(c.kept_B.size(), 4u);
  EXPECT_EQ(c.edges.size(), 12u);

  const auto m = degree_prune(5, 5, identity(5));
  EXPECT_EQ(m.edges, identity(5));
  EXPECT_EQ(m.delta, q(1, 5));

  EdgeList star;
  for (std::uint32_t j = 0; j < 6; ++j) star.emplace_back(2, j);
  const auto s = degree_prune(4, 6, star);
  EXPECT_EQ(s.kept_A, (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(s.kept_B.size(), 6u);
  EXPECT_EQ(s.edges, star);
  EXPECT_THROW(degree_prune(2, 2, {}), InvalidArgument);
}

TEST(DegreePrune, PostconditionsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const std::size_t a = 1 + rng.below(30), b = 1 + rng.below(30);
    EdgeList G = random_lattice_graph(a, b, 0.02 + 0.5 * rng.unit(), seed);
    if (G.empty()) G.emplace_back(0, 0);
    const auto r = degree_prune(a, b, G);
    EXPECT_TRUE(check_prune(a, b, G, r).all()) << "seed " << seed;
  }
}

TEST(DyadicPigeonhole, Examples) {
  auto items = [](std::vector<long> vs) {
    std::vector<PigeonholeItem> out;
    for (long v : vs) out.push_back({Rational(v), Rational(1)});
    return out;
  };
  const auto a = dyadic_pigeonhole(items({1, 1, 2, 3, 8}), q(1), q(8));
  EXPECT_EQ(a.index, 0);
  EXPECT_EQ(a.members, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(a.mass, q(2));
  const auto b = dyadic_pigeonhole(items({5}), q(5), q(5));
  EXPECT_EQ(b.members.size(), 1u);
  const auto c = dyadic_pigeonhole(items({4, 5, 6, 7}), q(4), q(7));
  EXPECT_EQ(c.index, 0);
  EXPECT_EQ(c.mass, q(4));
  EXPECT_THROW(dyadic_pigeonhole({}, q(1), q(2)), InvalidArgument);
  EXPECT_THROW(dyadic_pigeonhole(items({1}), q(0), q(2)), InvalidArgument);
  EXPECT_THROW(dyadic_pigeonhole(items({3}), q(1), q(2)), InvalidArgument);
}

TEST(DyadicPigeonhole, MatchesOracleAndMassBound) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Rational lo = q(1 + static_cast<long>(rng.below(5)), 1 + static_cast<long>(rng.below(3)));
    std::vector<PigeonholeItem> items;
    std::vector<std::pair<Rational, Rational>> plain;
    Rational total(0), hi = lo;
    for (std::size_t i = 0; i < 1 + rng.below(20); ++i) {
      const Rational v = lo * q(100 + static_cast<long>(rng.below(3000)), 100);
      const Rational m(static_cast<long>(rng.below(5)));
      items.push_back({v, m});
      plain.emplace_back(v, m);
      total += m;
      hi = std::max(hi, v);
    }
    const auto c = dyadic_pigeonhole(items, lo, hi);
    const auto [j, mass] = oracle::dyadic_best(plain, lo);
    EXPECT_EQ(c.index, j);
    EXPECT_EQ(c.mass, mass);
    EXPECT_GE(c.mass * Rational(static_cast<long>(c.nonempty_classes)), total);
    for (auto m : c.members) {
      EXPECT_LE(items[c.members.front()].value, items[m].value * Rational(2));
    }
  }
}

TEST(ChooseSplitCoordinate, Examples) {
  const LatticeSet box = lattice_box(2, 4);
  EXPECT_EQ(max_fiber_sum(box, box, 1), 8u);
  EXPECT_EQ(max_fiber_sum(box, box, 2), 2u);
  EXPECT_EQ(choose_split_coordinate(box, box), 1u);
  const LatticeSet line = lattice_box(1, 9);
  EXPECT_EQ(choose_split_coordinate(line, line), 0u);
  const LatticeSet single = pts(3, {{1, 2, 3}});
  EXPECT_EQ(choose_split_coordinate(single, single), 0u);
}

TEST(ChooseSplitCoordinate, SatisfiesDefiningProperty) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance in = random_instance(seed + 300);
    const std::size_t t = choose_split_coordinate(in.A, in.B);
    const Integer N = Integer(static_cast<unsigned long>(in.A.size())) * static_cast<unsigned long>(in.B.size());
    auto f4 = [&](std::size_t s) {
      const Integer f(static_cast<unsigned long>(oracle::max_fiber_sum(in.A, in.B, s)));
      return Integer(f * f * f * f);
    };
    bool exists = false;
    std::size_t largest = 0;
    for (std::size_t s = 0; s + 1 <= in.A.dimension(); ++s) {
      if (f4(s) >= N && f4(s + 1) < N) {
        exists = true;
        largest = s;
      }
    }
    EXPECT_EQ(t, exists ? largest : 0u);
  }
}

TEST(Regularize, BoxIsAlreadyRegular) {
  const LatticeSet box = lattice_box(2, 2);
  const EdgeList G = complete_edges(4, 4);
  const auto cert = regularize(box, box, G, 1);
  EXPECT_EQ(cert.delta_1, q(1));
  EXPECT_EQ(cert.delta_2, q(1));
  EXPECT_EQ(cert.fiber_uniformity, q(1));
  EXPECT_EQ(cert.A, box);
  EXPECT_EQ(cert.edges, G);
  EXPECT_EQ(cert.K1_squared * cert.K2_squared, cert.K_squared);
  EXPECT_TRUE(check_certificate(cert, box, box, G).all());
}

TEST(Regularize, MatchingOnIdenticalSets) {
  const LatticeSet S = random_lattice_set(2, 12, 4, 8);
  const EdgeList G = identity(S.size());
  const auto cert = regularize(S, S, G, 1);
  EXPECT_EQ(cert.m_A, cert.m_B);
  for (const auto& [i, j] : cert.edges) EXPECT_EQ(cert.A[i], cert.B[j]);
  EXPECT_TRUE(check_certificate(cert, S, S, G).all());
}

TEST(Regularize, CertificateOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance in = random_instance(seed + 900);
    const std::size_t t = choose_split_coordinate(in.A, in.B);
    try {
      const auto cert = regularize(in.A, in.B, in.G, t);
      const auto check = check_certificate(cert, in.A, in.B, in.G);
      EXPECT_TRUE(check.all()) << "seed " << seed;
      EXPECT_LE(cert.fiber_uniformity, q(2));
    } catch (const StageEmptied& e) {
      ADD_FAILURE() << "seed " << seed << ": " << e.what();
    }
  }
}

TEST(Regularize, IdempotentOnRegularInstances) {
  for (std::int64_t side = 2; side <= 4; ++side) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const LatticeSet box = lattice_box(n, side);
      const EdgeList G = complete_edges(box.size(), box.size());
      for (std::size_t t = 0; t <= n; ++t) {
        const auto once = regularize(box, box, G, t);
        const auto twice = regularize(once.A, once.B, once.edges, t);
        EXPECT_EQ(once.A, twice.A);
        EXPECT_EQ(once.B, twice.B);
        EXPECT_EQ(once.edges, twice.edges);
        EXPECT_EQ(once.m_A, twice.m_A);
        EXPECT_EQ(once.K2_squared, twice.K2_squared);
      }
    }
  }
}

TEST(Regularize, EmptyStageNamesTheStage) {
  RegularizeParams p;
  p.incidence_fraction = q(1000);
  const LatticeSet box = lattice_box(2, 2);
  try {
    regularize(box, box, complete_edges(4, 4), 1, p);
    FAIL();
  } catch (const StageEmptied& e) {
    EXPECT_EQ(e.stage(), "regularize-B incidence");
  }
}

TEST(Regularize, SwapBranchRecorded) {
  // A has small fibers, B has one large fiber.
  const LatticeSet A = pts(2, {{0, 0}, {1, 0}, {2, 0}});
  const LatticeSet B = pts(2, {{0, 0}, {0, 1}, {0, 2}});
  const EdgeList G = complete_edges(3, 3);
  const auto cert = regularize(A, B, G, 1);
  EXPECT_TRUE(cert.swapped);
  EXPECT_TRUE(check_certificate(cert, A, B, G).all());
}
