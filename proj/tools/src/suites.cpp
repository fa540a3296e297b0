#include "sumprodlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "sumprod/applications.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/error.hpp"
#include "sumprod/fibering.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/random.hpp"
#include "sumprod/separation.hpp"
#include "sumprod/setops.hpp"

namespace sumprodlab {

using namespace sumprod;

namespace {

constexpr std::size_t kMaxMessages = 8;

class Tally {
 public:
  explicit Tally(SuiteResult& r) : r_(r) {}
  template <typename Msg>
  void check(bool ok, Msg&& message) {
    ++r_.checks;
    if (ok) return;
    ++r_.failures;
    if (r_.messages.size() < kMaxMessages) r_.messages.push_back(message());
  }

 private:
  SuiteResult& r_;
};

// Per-suite seeds are derived from the run seed so suites are independent.
std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + salt;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rational random_u(Rng& rng) {
  std::int64_t n = 0;
  while (n == 0) n = rng.between(-5, 5);
  return Rational::canonicalize(n, rng.between(1, 4));
}

WeightedSet random_weighted(const RationalSet& A, Rng& rng) {
  std::vector<double> w(A.size());
  double s = 0;
  for (auto& x : w) {
    x = 0.05 + rng.unit();
    s += x * x;
  }
  for (auto& x : w) x /= std::sqrt(s);
  return WeightedSet::make(A, std::move(w));
}

bool le_rel(double lhs, double rhs, double tol) { return lhs <= rhs * (1.0 + tol); }

std::string str(const RationalSet& A) {
  std::string s = "{";
  for (std::size_t i = 0; i < A.size(); ++i) s += (i ? ", " : "") + A[i].to_string();
  return s + "}";
}

void k2_closed_form(const SuiteOptions& o, SuiteResult& r) {
  Tally t(r);
  Rng rng(derive(o.seed, 1));
  std::uint64_t instances = 0;
  for (int n = 1; n <= o.n_max; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const RationalSet A = random_rational_set(static_cast<std::uint64_t>(n), 60, 8, rng.next());
      const Rational u = random_u(rng);
      const Integer e = mixed_energy(A, u, 2, o.config).exact;
      const Integer expected = Integer(2 * n * n - n);
      t.check(e == expected, [&] {
        return "A=" + str(A) + " u=" + u.to_string() + ": " + e.get_str() + " != " + expected.get_str();
      });
      ++instances;
    }
  }
  r.details = {{"n_max", o.n_max}, {"instances", instances}};
}

void cs_chain(const SuiteOptions& o, SuiteResult& r) {
  Tally t(r);
  Rng rng(derive(o.seed, 2));
  double min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const int k = 2 + i % 2;
    const RationalSet A = random_rational_set(1 + rng.below(20), 40, 6, rng.next());
    const Rational u = random_u(rng);
    const auto rep = verify_cs_chain(A, u, k, o.config);
    min_slack = std::min(min_slack, rep.slack.to_double());
    t.check(rep.holds, [&] { return "A=" + str(A) + " u=" + u.to_string() + " k=" + std::to_string(k); });
  }
  r.details = {{"instances", 100}, {"min_slack", min_slack}};
}

void padic_split(const SuiteOptions& o, SuiteResult& r) {
  Tally t(r);
  Rng rng(derive(o.seed, 3));
  const long primes[] = {2, 3, 5};
  double max_ratio = 0;
  for (int i = 0; i < 100; ++i) {
    const Integer p(primes[i % 3]);
    const int k = 2 + (i / 3) % 2;
    const RationalSet A = random_rational_set(1 + rng.below(10), 60, 12, rng.next());
    const Rational u = random_u(rng);
    const WeightedSet w = random_weighted(A, rng);
    const auto one = verify_basecase_split(w, u, p, k, o.config);
    if (one.rhs > 0) max_ratio = std::max(max_ratio, one.lhs / one.rhs);
    t.check(one.holds, [&] { return "basecase A=" + str(A) + " p=" + p.get_str() + " k=" + std::to_string(k); });
    const auto multi = verify_multiprime_split(w, u, {p}, k, o.config);
    t.check(multi.lhs == one.lhs && multi.rhs_sum == one.rhs_sum && multi.rhs == one.rhs,
            [&] { return "one-prime consistency A=" + str(A) + " p=" + p.get_str(); });
  }
  for (int i = 0; i < 50; ++i) {
    const int k = 2 + i % 2;
    const RationalSet A = random_rational_set(1 + rng.below(10), 60, 12, rng.next());
    const Rational u = random_u(rng);
    const auto rep = verify_multiprime_split(random_weighted(A, rng), u, {Integer(2), Integer(3)}, k, o.config);
    if (rep.rhs > 0) max_ratio = std::max(max_ratio, rep.lhs / rep.rhs);
    t.check(rep.holds, [&] { return "multiprime A=" + str(A) + " k=" + std::to_string(k); });
  }
  r.details = {{"basecase_instances", 100}, {"multiprime_instances", 50}, {"max_lhs_over_rhs", max_ratio}};
}

void separation(const SuiteOptions& o, SuiteResult& r) {
  Tally t(r);
  Rng rng(derive(o.seed, 4));
  double trivial_max = 0, prime_power_max = 0;
  std::uint64_t trivial_probes = 0, prime_power_probes = 0;
  for (int i = 0; i < 10; ++i) {
    const RationalSet X = random_rational_set(1 + rng.below(4), 30, 4, rng.next());
    const int k = 2 + i % 2;
    const auto rep = probe_separating_constant(X, random_u(rng), k, 20, rng.next(), o.config);
    for (double ratio : rep.ratios) {
      trivial_max = std::max(trivial_max, ratio / static_cast<double>(X.size()));
      t.check(le_rel(ratio, static_cast<double>(X.size()), kRootTolerance),
              [&] { return "X=" + str(X) + " ratio " + std::to_string(ratio); });
    }
    trivial_probes += rep.ratios.size();
  }
  const long bases[] = {2, 3, 5, 7};
  for (int i = 0; i < 10; ++i) {
    std::vector<long> H;
    const std::size_t m = 2 + rng.below(3);
    while (H.size() < m) {
      const long h = rng.between(-3, 4);
      if (std::find(H.begin(), H.end(), h) == H.end()) H.push_back(h);
    }
    const RationalSet X = prime_power_set(Integer(bases[i % 4]), H);
    const int k = 2 + i % 2;
    const double bound = static_cast<double>(split_coefficient(k));
    const auto rep = probe_separating_constant(X, random_u(rng), k, 20, rng.next(), o.config);
    for (double ratio : rep.ratios) {
      prime_power_max = std::max(prime_power_max, ratio / bound);
      t.check(le_rel(ratio, bound, kRootTolerance), [&] { return "prime-power X=" + str(X) + " ratio " + std::to_string(ratio); });
    }
    prime_power_probes += rep.ratios.size();
  }
  r.details = {{"trivial_probes", trivial_probes},
               {"max_ratio_over_size", trivial_max},
               {"prime_power_probes", prime_power_probes},
               {"max_ratio_over_bound", prime_power_max}};
}

void lambda(const SuiteOptions& o, SuiteResult& r) {
  Tally t(r);
  Rng rng(derive(o.seed, 5));
  Json rows = Json::array();
  std::uint64_t subset_checks = 0;
  for (std::uint64_t n = 1; n <= 4; ++n) {
    const RationalSet A = random_rational_set(n, 30, 5, rng.next());
    const Rational u = random_u(rng);
    const double closed = std::sqrt(2.0 - 1.0 / static_cast<double>(n));
    const double grid = lambda_grid_oracle(A, u, 2, 0.01, o.config).value;
    const double ascent = lambda_ascent(A, u, 2, 200, rng.next(), o.config).value;
    t.check(std::abs(grid - closed) <= kGridTolerance, [&] { return "grid n=" + std::to_string(n); });
    t.check(std::abs(ascent - closed) <= 1e-6, [&] { return "ascent n=" + std::to_string(n); });
    t.check(std::abs(ascent - grid) <= kGridTolerance, [&] { return "grid vs ascent n=" + std::to_string(n); });
    rows.push_back({{"n", n}, {"closed_form", closed}, {"grid", grid}, {"ascent", ascent}});
    // Every nonempty proper subset.
    for (std::uint64_t mask = 1; mask + 1 < (1ULL << n); ++mask) {
      std::vector<Rational> sub;
      for (std::uint64_t i = 0; i < n; ++i) {
        if (mask >> i & 1) sub.push_back(A[i]);
      }
      const RationalSet S(std::move(sub));
      const double ls = lambda_grid_oracle(S, u, 2, 0.01, o.config).value;
      t.check(ls <= grid + kGridTolerance, [&] { return "stability A'=" + str(S) + " in " + str(A); });
      ++subset_checks;
    }
  }
  r.details = {{"instances", rows}, {"subset_checks", subset_checks}};
}

void degree_prune_suite(const SuiteOptions& o, SuiteResult& r) {
  Tally t(r);
  Rng rng(derive(o.seed, 6));
  std::uint64_t kept_edges = 0, input_edges = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t a = 1 + rng.below(50), b = 1 + rng.below(50);
    const double density = 0.01 + 0.6 * rng.unit() * rng.unit();
    EdgeList G = random_lattice_graph(a, b, density, rng.next());
    if (G.empty()) G.emplace_back(static_cast<std::uint32_t>(rng.below(a)), static_cast<std::uint32_t>(rng.below(b)));
    const auto res = degree_prune(a, b, G);
    const auto post = check_prune(a, b, G, res);
    kept_edges += res.edges.size();
    input_edges += G.size();
    t.check(post.all(), [&] { return "graph " + std::to_string(i) + " (" + std::to_string(a) + "x" + std::to_string(b) + ")"; });
  }
  r.details = {{"graphs", 500}, {"input_edges", input_edges}, {"kept_edges", kept_edges}};
}

struct LatticeInstance {
  LatticeSet A, B;
  EdgeList G;
};

LatticeInstance random_lattice_instance(Rng& rng, std::size_t max_dim, std::size_t max_size) {
  const std::size_t n = 1 + rng.below(max_dim);
  const std::size_t a = 1 + rng.below(max_size), b = 1 + rng.below(max_size);
  const std::size_t need = std::max(a, b);
  std::int64_t side = 2 + static_cast<std::int64_t>(rng.below(6));
  auto capacity = [&](std::int64_t s) {
    double c = 1;
    for (std::size_t d = 0; d < n; ++d) c *= static_cast<double>(s);
    return c;
  };
  while (capacity(side) < static_cast<double>(need)) ++side;
  LatticeInstance in{random_lattice_set(n, a, side, rng.next()), random_lattice_set(n, b, side, rng.next()), {}};
  const double density = 0.05 + 0.95 * rng.unit();
  in.G = random_lattice_graph(a, b, density, rng.next());
  if (in.G.empty()) in.G.emplace_back(0, 0);
  return in;
}

void fiber_sum(const SuiteOptions& o, SuiteResult& r) {
  Tally t(r);
  Rng rng(derive(o.seed, 7));
  std::uint64_t cases = 0, tight = 0;
  for (int i = 0; i < 200; ++i) {
    const auto in = random_lattice_instance(rng, 4, 200);
    for (std::size_t s = 0; s <= in.A.dimension(); ++s) {
      const auto rep = verify_fiber_graph_sum(in.A, in.B, in.G, s);
      ++cases;
      if (rep.lhs == rep.rhs_strong) ++tight;
      t.check(rep.holds && rep.holds_strong,
              [&] { return "instance " + std::to_string(i) + " t=" + std::to_string(s); });
    }
  }
  r.details = {{"instances", 200}, {"split_cases", cases}, {"tight_cases", tight}};
}

void regularize_suite(const SuiteOptions& o, SuiteResult& r) {
  Tally t(r);
  Rng rng(derive(o.seed, 8));
  Json rows = Json::array();
  for (int i = 0; i < 100; ++i) {
    const auto in = random_lattice_instance(rng, 3, 60);
    // Half the instances use the automatic split, half a random one.
    const std::size_t split =
        i % 2 == 0 ? choose_split_coordinate(in.A, in.B) : static_cast<std::size_t>(rng.below(in.A.dimension() + 1));
    try {
      const auto cert = regularize(in.A, in.B, in.G, split, {}, o.config);
      const auto check = check_certificate(cert, in.A, in.B, in.G);
      t.check(check.all() && cert.fiber_uniformity <= Rational(2),
              [&] { return "instance " + std::to_string(i) + " certificate check failed"; });
      rows.push_back({{"instance", i},
                      {"t", split},
                      {"log_factor", cert.achieved.log_factor},
                      {"set_size_A", cert.achieved.set_size_A},
                      {"set_size_B", cert.achieved.set_size_B},
                      {"delta_product", cert.achieved.delta_product},
                      {"doubling", cert.achieved.doubling}});
    } catch (const StageEmptied& e) {
      t.check(false, [&] { return "instance " + std::to_string(i) + ": " + e.what(); });
    }
  }
  r.details = {{"instances", 100}, {"achieved", rows}};
}

void growth_bound(const SuiteOptions& o, SuiteResult& r) {
  Tally t(r);
  std::vector<std::pair<std::string, RationalSet>> families;
  for (const auto& ratio : {Rational(2), Rational(3), Rational(-2), Rational::canonicalize(3, 2)}) {
    for (long n : {1L, 4L, 8L, 12L}) {
      families.emplace_back("gp r=" + ratio.to_string() + " n=" + std::to_string(n), geometric_progression(ratio, n));
    }
  }
  const std::vector<std::pair<std::vector<Integer>, std::vector<long>>> md = {
      {{2, 3}, {2, 2}}, {{2, 3}, {3, 3}}, {{2, 3}, {3, 4}}, {{2, 5}, {2, 6}}, {{2, 3, 5}, {2, 2, 2}}};
  for (const auto& [p, d] : md) families.emplace_back("multidim gp", multidim_gp(p, d));
  std::uint64_t instances = 0;
  for (const auto& [label, A] : families) {
    for (const Rational& u : {Rational(1), Rational::canonicalize(1, 2), Rational(-7)}) {
      for (int k = 1; k <= 3; ++k) {
        const auto rep = verify_usold_bound(A, u, k, o.config);
        ++instances;
        t.check(rep.holds, [&] { return label + " u=" + u.to_string() + " k=" + std::to_string(k); });
      }
    }
    for (int h = 1; h <= 3; ++h) {
      t.check(plunnecke_check(A, h, o.config).holds, [&] { return "plunnecke " + label + " h=" + std::to_string(h); });
    }
    t.check(ruzsa_triangle_check(A, o.config).holds, [&] { return "ruzsa " + label; });
  }
  r.details = {{"families", families.size()}, {"bound_instances", instances}};
}

void counters(const SuiteOptions& o, SuiteResult& r) {
  Tally t(r);
  Rng rng(derive(o.seed, 9));
  for (int i = 0; i < 100; ++i) {
    const RationalSet A = random_rational_set(1 + rng.below(25), 10, 3, rng.next());
    const Rational c1 = random_u(rng), c2 = random_u(rng);
    std::uint64_t naive = 0;
    for (const auto& x : A) {
      for (const auto& y : A) naive += (c1 * x + c2 * y == Rational(1));
    }
    t.check(count_line_solutions(A, c1, c2, o.config).count == naive, [&] { return "solve-count " + str(A); });
  }
  for (int i = 0; i < 100; ++i) {
    const RationalSet A = random_rational_set(1 + rng.below(20), 8, 2, rng.next());
    std::vector<Line> lines;
    while (lines.size() < 20) {
      Line l{Rational(rng.between(-2, 2)), Rational(rng.between(-2, 2)),
             Rational::canonicalize(rng.between(-4, 4), rng.between(1, 2))};
      if (!l.a.is_zero() || !l.b.is_zero()) lines.push_back(l);
    }
    const auto fast = count_incidences(A, lines, o.config);
    const auto naive = count_incidences_naive(A, lines);
    t.check(fast.total == naive.total && fast.per_line == naive.per_line && fast.axis_parallel == naive.axis_parallel &&
                fast.through_origin == naive.through_origin && fast.generic == naive.generic &&
                fast.irrational_slope == naive.irrational_slope,
            [&] { return "incidence " + str(A); });
  }
  for (int i = 0; i < 100; ++i) {
    const RationalSet A = random_rational_set(1 + rng.below(20), 12, 2, rng.next());
    const RationalSet B = random_rational_set(1 + rng.below(10), 8, 2, rng.next());
    const RationalSet Bp = random_rational_set(1 + rng.below(10), 8, 2, rng.next());
    std::uint64_t naive = 0;
    for (const auto& b : B) {
      for (const auto& bp : Bp) {
        for (const auto& a : A) naive += (b + bp == a);
      }
    }
    t.check(additive_basis_count(A, B, Bp, o.config).count == naive, [&] { return "basis " + str(A); });
  }
  r.details = {{"solve_count_instances", 100}, {"incidence_instances", 100}, {"basis_instances", 100}};
}

void growth(const SuiteOptions& o, SuiteResult& r) {
  Tally t(r);
  const RationalSet A = multidim_gp({Integer(2), Integer(3)}, {4, 4});
  const auto rep = growth_experiment(A, Rational(1), 3, o.config);
  t.check(!rep.partial && rep.rows.size() == 3, [&] { return "growth report incomplete: " + rep.note; });
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    rows.push_back({{"j", row.j}, {"product_size", row.product_size}, {"shifted_size", row.shifted_size},
                    {"exponent", row.exponent}});
  }
  if (rep.rows.size() == 3) {
    t.check(rep.rows[2].exponent > rep.rows[0].exponent, [] { return "exponent at k=3 does not exceed k=1"; });
  }
  r.details = {{"set", "multidim_gp([2,3],[4,4])"}, {"u", "1"}, {"rows", rows}};
}

using SuiteFn = void (*)(const SuiteOptions&, SuiteResult&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"k2-closed-form", k2_closed_form},
      {"cs-chain", cs_chain},
      {"padic-split", padic_split},
      {"separation", separation},
      {"lambda", lambda},
      {"degree-prune", degree_prune_suite},
      {"fiber-sum", fiber_sum},
      {"regularize", regularize_suite},
      {"growth-bound", growth_bound},
      {"counters", counters},
      {"growth", growth},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    SuiteResult r;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    fn(options, r);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace sumprodlab
