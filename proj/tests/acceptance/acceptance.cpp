// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
//
// Usage: sumprod_acceptance <path-to-sumprodlab> <output-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sumprod/applications.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/error.hpp"
#include "sumprod/fibering.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/random.hpp"
#include "sumprod/separation.hpp"
#include "sumprod/setops.hpp"

using namespace sumprod;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = "first failure: " + what;
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rational random_u(Rng& rng) {
  std::int64_t n = 0;
  while (n == 0) n = rng.between(-6, 6);
  return Rational::canonicalize(n, rng.between(1, 5));
}

std::vector<double> unit_weights(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double s = 0;
  for (auto& x : w) {
    x = 0.05 + rng.unit();
    s += x * x;
  }
  for (auto& x : w) x /= std::sqrt(s);
  return w;
}

bool le_rel(double lhs, double rhs, double tol) { return lhs <= rhs * (1.0 + tol); }

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); }

// ---- 1 ----------------------------------------------------------------------

Outcome k2_rigidity() {
  Outcome o;
  Rng rng(101);
  const auto t0 = Clock::now();
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = 1 + rng.below(30);
    const RationalSet A = random_rational_set(n, 80, 9, rng.next());
    const Rational u = random_u(rng);
    const Integer e = mixed_energy(A, u, 2).exact;
    o.require(e == Integer(static_cast<unsigned long>(2 * n * n - n)), "instance " + std::to_string(i));
    if (i < 25) o.require(e == Integer(static_cast<unsigned long>(oracle::mixed_energy(A, u, 2))), "oracle " + std::to_string(i));
  }
  const double secs = seconds_since(t0);
  o.require(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "200 instances, " + std::to_string(secs).substr(0, 5) + " s";
  return o;
}

// ---- 2 ----------------------------------------------------------------------

Outcome cs_chain() {
  Outcome o;
  Rng rng(202);
  for (int i = 0; i < 100; ++i) {
    const int k = 2 + i % 2;
    const RationalSet A = random_rational_set(1 + rng.below(20), 50, 7, rng.next());
    const Rational u = random_u(rng);
    const Integer n(static_cast<unsigned long>(A.size()));
    Integer lhs;
    mpz_pow_ui(lhs.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(2 * k));
    const Integer rhs = Integer(static_cast<unsigned long>(oracle::kfold_product(A, k).size())) *
                        Integer(static_cast<unsigned long>(oracle::kfold_product(A, k, u).size())) *
                        Integer(static_cast<unsigned long>(oracle::mixed_energy(A, u, k)));
    o.require(lhs <= rhs, "oracle instance " + std::to_string(i));
    const auto rep = verify_cs_chain(A, u, k);
    o.require(rep.holds && rep.lhs == lhs && rep.rhs == rhs, "library instance " + std::to_string(i));
  }
  if (o.pass) o.detail = "100 instances, k in {2,3}";
  return o;
}

// ---- 3 ----------------------------------------------------------------------

// Splitting inequality recomputed from the oracle energies.
double oracle_cells_root_sum(const RationalSet& A, const std::vector<double>& w, const Rational& u, int k,
                             const std::vector<long>& primes) {
  std::map<std::vector<long>, std::pair<std::vector<Rational>, std::vector<double>>> cells;
  for (std::size_t i = 0; i < A.size(); ++i) {
    std::vector<long> key;
    for (long p : primes) key.push_back(oracle::valuation(A[i], p));
    cells[key].first.push_back(A[i]);
    cells[key].second.push_back(w[i]);
  }
  double sum = 0;
  for (const auto& [key, cell] : cells) {
    const RationalSet C(cell.first);
    sum += std::pow(oracle::weighted_mixed_energy(C, u, k, cell.second), 1.0 / k);
  }
  return sum;
}

Outcome padic_splitting() {
  Outcome o;
  Rng rng(303);
  const long primes[] = {2, 3, 5};
  for (int i = 0; i < 100; ++i) {
    const long p = primes[i % 3];
    const int k = 2 + (i / 3) % 2;
    const RationalSet A = random_rational_set(1 + rng.below(10), 80, 16, rng.next());
    const Rational u = random_u(rng);
    const auto w = unit_weights(A.size(), rng);
    const double coef = 2.0 * k * (2.0 * k - 1);
    const double lhs = std::pow(oracle::weighted_mixed_energy(A, u, k, w), 1.0 / k);
    const double rhs_sum = oracle_cells_root_sum(A, w, u, k, {p});
    o.require(le_rel(lhs, coef * rhs_sum, kRootTolerance), "oracle basecase " + std::to_string(i));
    const WeightedSet ws = WeightedSet::make(A, w);
    const auto one = verify_basecase_split(ws, u, Integer(p), k);
    o.require(one.holds && close_rel(one.lhs, lhs, 1e-9) && close_rel(one.rhs_sum, rhs_sum, 1e-9),
              "library basecase " + std::to_string(i));
    const auto multi = verify_multiprime_split(ws, u, {Integer(p)}, k);
    o.require(multi.lhs == one.lhs && multi.rhs_sum == one.rhs_sum && multi.rhs == one.rhs,
              "one-prime consistency " + std::to_string(i));
  }
  for (int i = 0; i < 50; ++i) {
    const int k = 2 + i % 2;
    const RationalSet A = random_rational_set(1 + rng.below(10), 80, 16, rng.next());
    const Rational u = random_u(rng);
    const auto w = unit_weights(A.size(), rng);
    const double coef = std::pow(2.0 * k * (2.0 * k - 1), 2);
    const double lhs = std::pow(oracle::weighted_mixed_energy(A, u, k, w), 1.0 / k);
    const double rhs_sum = oracle_cells_root_sum(A, w, u, k, {2, 3});
    o.require(le_rel(lhs, coef * rhs_sum, kRootTolerance), "oracle multiprime " + std::to_string(i));
    const auto rep = verify_multiprime_split(WeightedSet::make(A, w), u, {Integer(2), Integer(3)}, k);
    o.require(rep.holds && close_rel(rep.lhs, lhs, 1e-9), "library multiprime " + std::to_string(i));
  }
  if (o.pass) o.detail = "100 one-prime, 50 two-prime, consistency exact";
  return o;
}

// ---- 4 ----------------------------------------------------------------------

Outcome separating_bounds() {
  Outcome o;
  Rng rng(404);
  std::size_t trivial = 0, prime_power = 0;
  double worst_trivial = 0, worst_pp = 0;
  while (trivial < 200) {
    const RationalSet X = random_rational_set(1 + rng.below(4), 40, 5, rng.next());
    const int k = 2 + static_cast<int>(trivial / 20) % 2;
    const auto rep = probe_separating_constant(X, random_u(rng), k, 20, rng.next());
    for (double r : rep.ratios) {
      worst_trivial = std::max(worst_trivial, r / static_cast<double>(X.size()));
      o.require(le_rel(r, static_cast<double>(X.size()), kRootTolerance), "trivial probe " + std::to_string(trivial));
      ++trivial;
    }
  }
  const long bases[] = {2, 3, 5, 7, 11};
  while (prime_power < 200) {
    std::vector<long> H;
    const std::size_t m = 2 + rng.below(3);
    while (H.size() < m) {
      const long h = rng.between(-3, 5);
      if (std::find(H.begin(), H.end(), h) == H.end()) H.push_back(h);
    }
    const RationalSet X = prime_power_set(Integer(bases[rng.below(5)]), H);
    const int k = 2 + static_cast<int>(prime_power / 20) % 2;
    const double bound = k == 2 ? 12.0 : 30.0;
    const auto rep = probe_separating_constant(X, random_u(rng), k, 20, rng.next());
    for (double r : rep.ratios) {
      worst_pp = std::max(worst_pp, r / bound);
      o.require(le_rel(r, bound, kRootTolerance), "prime-power probe " + std::to_string(prime_power));
      ++prime_power;
    }
  }
  if (o.pass) {
    std::ostringstream s;
    s << trivial << " + " << prime_power << " probes, max ratio/bound " << worst_trivial << " and " << worst_pp;
    o.detail = s.str();
  }
  return o;
}

// ---- 5 ----------------------------------------------------------------------

Outcome lambda_closed_form() {
  Outcome o;
  Rng rng(505);
  std::size_t subsets = 0;
  for (std::uint64_t n = 1; n <= 4; ++n) {
    const RationalSet A = random_rational_set(n, 40, 6, rng.next());
    const Rational u = random_u(rng);
    const double closed = std::sqrt(2.0 - 1.0 / static_cast<double>(n));
    const double grid = lambda_grid_oracle(A, u, 2, 0.01).value;
    const auto asc = lambda_ascent(A, u, 2, 300, rng.next());
    o.require(std::abs(grid - closed) <= 1e-3, "grid n=" + std::to_string(n));
    o.require(std::abs(asc.value - closed) <= 1e-6, "ascent n=" + std::to_string(n));
    // The witness value agrees with the brute-force weighted energy.
    o.require(close_rel(std::pow(oracle::weighted_mixed_energy(A, u, 2, asc.witness), 0.5), asc.value, 1e-9),
              "ascent witness n=" + std::to_string(n));
    for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
      std::vector<Rational> sub;
      for (std::uint64_t i = 0; i < n; ++i) {
        if (mask >> i & 1) sub.push_back(A[i]);
      }
      const double ls = lambda_grid_oracle(RationalSet(sub), u, 2, 0.01).value;
      o.require(ls <= grid + kGridTolerance, "stability n=" + std::to_string(n) + " mask " + std::to_string(mask));
      ++subsets;
    }
  }
  if (o.pass) o.detail = "n = 1..4, " + std::to_string(subsets) + " subset pairs";
  return o;
}

// ---- 6 ----------------------------------------------------------------------

Outcome degree_pruning() {
  Outcome o;
  Rng rng(606);
  for (int i = 0; i < 500; ++i) {
    const std::size_t a = 1 + rng.below(50), b = 1 + rng.below(50);
    EdgeList G = random_lattice_graph(a, b, 0.01 + 0.7 * rng.unit() * rng.unit(), rng.next());
    if (G.empty()) G.emplace_back(0, 0);
    const auto r = degree_prune(a, b, G);
    // Postconditions recomputed from the surviving edges, in integers:
    // delta = |G|/(ab): deg a >= delta b/4 iff 4 a deg >= |G|; |A'| >= delta a/2 iff 2 b |A'| >= |G|.
    const std::uint64_t g = G.size();
    std::map<std::uint32_t, std::uint64_t> da, db;
    for (const auto& [x, y] : r.edges) {
      ++da[x];
      ++db[y];
    }
    bool ok = r.delta == Rational::canonicalize(static_cast<long>(g), static_cast<long>(a * b));
    for (const auto& [x, d] : da) ok = ok && 4 * a * d >= g;
    for (const auto& [y, d] : db) ok = ok && 4 * b * d >= g;
    ok = ok && 2 * b * da.size() >= g && 2 * a * db.size() >= g && 2 * r.edges.size() >= g;
    for (const auto& e : r.edges) ok = ok && std::binary_search(G.begin(), G.end(), e);
    o.require(ok, "graph " + std::to_string(i));
  }
  if (o.pass) o.detail = "500 graphs up to 50x50";
  return o;
}

// ---- 7 ----------------------------------------------------------------------

struct Instance {
  LatticeSet A, B;
  EdgeList G;
};

Instance random_instance(Rng& rng, std::size_t max_dim, std::size_t max_size) {
  const std::size_t n = 1 + rng.below(max_dim);
  const std::size_t a = 1 + rng.below(max_size), b = 1 + rng.below(max_size);
  std::int64_t side = 2 + static_cast<std::int64_t>(rng.below(5));
  while (std::pow(static_cast<double>(side), static_cast<double>(n)) < static_cast<double>(std::max(a, b))) ++side;
  Instance in{random_lattice_set(n, a, side, rng.next()), random_lattice_set(n, b, side, rng.next()), {}};
  in.G = random_lattice_graph(a, b, 0.05 + 0.95 * rng.unit(), rng.next());
  if (in.G.empty()) in.G.emplace_back(0, 0);
  return in;
}

Outcome fiber_graph_sum() {
  Outcome o;
  Rng rng(707);
  std::size_t cases = 0;
  for (int i = 0; i < 200; ++i) {
    const Instance in = random_instance(rng, 4, 200);
    for (std::size_t t = 0; t <= in.A.dimension(); ++t) {
      const auto ora = oracle::fiber_graph_sum(in.A, in.B, in.G, t);
      o.require(ora.lhs >= ora.base * ora.min_all && ora.lhs >= ora.base * ora.min_base,
                "oracle instance " + std::to_string(i) + " t=" + std::to_string(t));
      const auto rep = verify_fiber_graph_sum(in.A, in.B, in.G, t);
      o.require(rep.holds && rep.holds_strong && rep.lhs == ora.lhs && rep.base_sumset == ora.base &&
                    rep.min_all_pairs == ora.min_all && rep.min_on_base == ora.min_base,
                "library instance " + std::to_string(i) + " t=" + std::to_string(t));
      ++cases;
    }
  }
  if (o.pass) o.detail = "200 graphs, " + std::to_string(cases) + " split positions";
  return o;
}

// ---- 8 ----------------------------------------------------------------------

Outcome certificates(const fs::path& out_dir) {
  Outcome o;
  Rng rng(808);
  const fs::path csv_path = out_dir / "achieved_constants.csv";
  std::ofstream csv(csv_path);
  csv << "instance,n,t,size_A,size_B,edges,log_factor,set_size_A,set_size_B,delta_product,doubling\n";
  for (int i = 0; i < 100; ++i) {
    const Instance in = random_instance(rng, 3, 60);
    const std::size_t t =
        i % 2 == 0 ? choose_split_coordinate(in.A, in.B) : static_cast<std::size_t>(rng.below(in.A.dimension() + 1));
    RegularizationCertificate c;
    try {
      c = regularize(in.A, in.B, in.G, t);
    } catch (const StageEmptied& e) {
      o.require(false, "instance " + std::to_string(i) + ": " + e.what());
      continue;
    }
    // Fibers of A' and B', recomputed by prefix.
    std::map<Point, std::vector<std::size_t>> fa, fb;
    for (std::size_t j = 0; j < c.A.size(); ++j) fa[oracle::prefix(c.A[j], t)].push_back(j);
    for (std::size_t j = 0; j < c.B.size(); ++j) fb[oracle::prefix(c.B[j], t)].push_back(j);
    auto uniform = [](const auto& fibers) {
      std::size_t lo = SIZE_MAX, hi = 0;
      for (const auto& [k, v] : fibers) {
        lo = std::min(lo, v.size());
        hi = std::max(hi, v.size());
      }
      return hi <= 2 * lo;
    };
    o.require(uniform(fa) && uniform(fb), "uniformity instance " + std::to_string(i));
    o.require(c.M_A == fa.size() && c.M_B == fb.size(), "base counts instance " + std::to_string(i));
    // Fiber graph sizes on every base edge.
    std::map<std::pair<Point, Point>, std::uint64_t> fiber_edges;
    std::set<Point> base_sums;
    for (const auto& [x, y] : c.edges) {
      const Point pa = oracle::prefix(c.A[x], t), pb = oracle::prefix(c.B[y], t);
      ++fiber_edges[{pa, pb}];
      base_sums.insert(oracle::add(pa, pb));
    }
    for (const auto& [pair, count] : fiber_edges) {
      o.require(Rational(static_cast<long>(count)) >=
                    c.delta_2 * Rational(static_cast<long>(c.m_A)) * Rational(static_cast<long>(c.m_B)),
                "fiber graph density instance " + std::to_string(i));
    }
    // K_1 identity: |pi A' +_{G'_1} pi B'|^2 = K_1^2 M_A M_B.
    const long s = static_cast<long>(base_sums.size());
    o.require(Rational(s * s) == c.K1_squared * Rational(static_cast<long>(c.M_A * c.M_B)),
              "K1 identity instance " + std::to_string(i));
    o.require(c.fiber_uniformity <= Rational(2), "uniformity factor instance " + std::to_string(i));
    csv << i << ',' << in.A.dimension() << ',' << t << ',' << c.A.size() << ',' << c.B.size() << ','
        << c.edges.size() << ',' << c.achieved.log_factor << ',' << c.achieved.set_size_A << ','
        << c.achieved.set_size_B << ',' << c.achieved.delta_product << ',' << c.achieved.doubling << '\n';
  }
  if (o.pass) o.detail = "100 instances, constants in " + csv_path.string();
  return o;
}

// ---- 9 ----------------------------------------------------------------------

Outcome growth_bound_and_companions() {
  Outcome o;
  std::vector<RationalSet> families;
  for (const Rational& r : {Rational(2), Rational(5), Rational(-3), Rational::canonicalize(2, 3)}) {
    for (long n : {1L, 3L, 6L, 9L, 12L}) families.push_back(geometric_progression(r, n));
  }
  const std::vector<std::pair<std::vector<Integer>, std::vector<long>>> md = {
      {{2, 3}, {2, 2}}, {{2, 3}, {3, 4}}, {{3, 7}, {2, 6}}, {{2, 3, 5}, {2, 2, 3}}, {{2, 3}, {4, 3}}};
  for (const auto& [p, d] : md) families.push_back(multidim_gp(p, d));
  std::size_t checks = 0;
  for (std::size_t f = 0; f < families.size(); ++f) {
    const RationalSet& A = families[f];
    const double n = static_cast<double>(A.size());
    const std::size_t aa = oracle::product_set(A, A).size();
    const Rational K = Rational::canonicalize(static_cast<long>(aa), static_cast<long>(A.size()));
    for (const Rational& u : {Rational(1), Rational(-1), Rational::canonicalize(1, 3)}) {
      for (int k = 1; k <= 3; ++k) {
        const double lhs = std::log(static_cast<double>(oracle::kfold_product(A, k, u).size()));
        const double rhs = k * std::log(n) - k * K.to_double() * std::log(8.0 * std::pow(k, 4));
        o.require(lhs >= rhs - 1e-9 * std::max(1.0, std::abs(rhs)), "bound family " + std::to_string(f));
        o.require(verify_usold_bound(A, u, k).holds, "library bound family " + std::to_string(f));
        ++checks;
      }
    }
    for (int h = 1; h <= 3; ++h) {
      Rational bound = Rational(static_cast<long>(A.size()));
      for (int j = 0; j < h; ++j) bound *= K;
      o.require(Rational(static_cast<long>(oracle::kfold_product(A, h).size())) <= bound,
                "Plunnecke family " + std::to_string(f));
      ++checks;
    }
    std::set<Rational> ratios;
    for (const auto& a : A) {
      for (const auto& b : A) ratios.insert(a / b);
    }
    o.require(Rational(static_cast<long>(ratios.size() * A.size())) <= Rational(static_cast<long>(aa * aa)),
              "Ruzsa family " + std::to_string(f));
    ++checks;
  }
  if (o.pass) o.detail = std::to_string(families.size()) + " families, " + std::to_string(checks) + " checks";
  return o;
}

// ---- 10 ---------------------------------------------------------------------

Outcome counters() {
  Outcome o;
  Rng rng(1010);
  for (int i = 0; i < 100; ++i) {
    const RationalSet A = random_rational_set(1 + rng.below(30), 12, 3, rng.next());
    const Rational c1 = random_u(rng), c2 = random_u(rng);
    o.require(count_line_solutions(A, c1, c2).count == oracle::line_solutions(A, c1, c2),
              "solve-count " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const RationalSet A = random_rational_set(1 + rng.below(25), 10, 2, rng.next());
    std::vector<Line> lines;
    std::vector<std::array<Rational, 3>> raw;
    while (lines.size() < 25) {
      const Line l{Rational(rng.between(-3, 3)), Rational(rng.between(-3, 3)),
                   Rational::canonicalize(rng.between(-5, 5), rng.between(1, 3))};
      if (l.a.is_zero() && l.b.is_zero()) continue;
      lines.push_back(l);
      raw.push_back({l.a, l.b, l.c});
    }
    const auto r = count_incidences(A, lines);
    const auto ora = oracle::incidences(A, raw);
    o.require(r.total == ora.total && r.axis_parallel == ora.axis && r.through_origin == ora.origin &&
                  r.generic == ora.generic && r.irrational_slope == 0,
              "incidence " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const RationalSet A = random_rational_set(1 + rng.below(25), 15, 2, rng.next());
    const RationalSet B = random_rational_set(1 + rng.below(12), 8, 2, rng.next());
    const RationalSet Bp = random_rational_set(1 + rng.below(12), 8, 2, rng.next());
    o.require(additive_basis_count(A, B, Bp).count == oracle::basis_count(A, B, Bp), "basis " + std::to_string(i));
  }
  if (o.pass) o.detail = "3 x 100 instances";
  return o;
}

// ---- 11 ---------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli, const fs::path& out_dir) {
  Outcome o;
  const fs::path a = out_dir / "verify_run1.json", b = out_dir / "verify_run2.json";
  double slowest = 0;
  for (const auto& p : {a, b}) {
    const std::string cmd = "\"" + cli + "\" verify --suite all --seed 1 --no-timings --out \"" + p.string() + "\"";
    const auto t0 = Clock::now();
    const int status = std::system(cmd.c_str());
    slowest = std::max(slowest, seconds_since(t0));
    o.require(status == 0, "verify exited with status " + std::to_string(status));
  }
  const std::string ra = slurp(a), rb = slurp(b);
  o.require(!ra.empty() && ra == rb, "reports differ");
  o.require(slowest < 300.0, "runtime " + std::to_string(slowest) + " s");
  if (o.pass) o.detail = "byte-identical, " + std::to_string(ra.size()) + " bytes, " + std::to_string(slowest).substr(0, 5) + " s per run";
  return o;
}

// ---- 12 ---------------------------------------------------------------------

Outcome growth() {
  Outcome o;
  const RationalSet A = multidim_gp({Integer(2), Integer(3)}, {4, 4});
  const Rational u(1);
  auto exponent = [&](int k) {
    const std::size_t m = std::max(oracle::kfold_product(A, k).size(), oracle::kfold_product(A, k, u).size());
    return std::log(static_cast<double>(m)) / std::log(static_cast<double>(A.size()));
  };
  const double e1 = exponent(1), e3 = exponent(3);
  o.require(e3 > e1, "exponent k=3 " + std::to_string(e3) + " vs k=1 " + std::to_string(e1));
  const auto rep = growth_experiment(A, u, 3);
  o.require(rep.rows.size() == 3 && !rep.partial, "library report incomplete");
  if (rep.rows.size() == 3) {
    o.require(std::abs(rep.rows[0].exponent - e1) < 1e-12 && std::abs(rep.rows[2].exponent - e3) < 1e-12,
              "library exponents disagree with the oracle");
  }
  if (o.pass) o.detail = "exponent " + std::to_string(e1) + " -> " + std::to_string(e3);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " <sumprodlab> <output-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path out_dir = argv[2];
  fs::create_directories(out_dir);

  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"k=2 mixed energy closed form", k2_rigidity},
      {"Cauchy-Schwarz chain", cs_chain},
      {"p-adic splitting (one and two primes)", padic_splitting},
      {"separating constant bounds", separating_bounds},
      {"Lambda closed form and stability", lambda_closed_form},
      {"degree pruning postconditions", degree_pruning},
      {"fiber graph sumset inequality", fiber_graph_sum},
      {"regularization certificate invariants", [&] { return certificates(out_dir); }},
      {"shifted product lower bound, Plunnecke, Ruzsa", growth_bound_and_companions},
      {"application counters vs brute force", counters},
      {"verify determinism and runtime", [&] { return determinism(cli, out_dir); }},
      {"growth exponent increases", growth},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
